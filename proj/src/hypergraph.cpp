// mirrec - multiplex-relationship hypergraph reviewer recommendation
// Copyright 2026 The mirrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mirrec/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "mirrec/error.hpp"
#include "parallel.hpp"

namespace mirrec {

namespace {

void check_window(Timestamp t_s, Timestamp t_e) {
  if (t_s >= t_e) {
    fail(ErrorCode::DegenerateWindow,
         "time window is empty (t_start=" + std::to_string(t_s) +
             ", t_end=" + std::to_string(t_e) + ")");
  }
}

double time_ratio(Timestamp t, Timestamp t_s, Timestamp t_e) {
  if (t < t_s || t > t_e) {
    fail(ErrorCode::PreconditionViolation,
         "timestamp " + std::to_string(t) + " outside the weight window");
  }
  return static_cast<double>(t - t_s) / static_cast<double>(t_e - t_s);
}

template <typename T, typename Key>
void require_sorted(const std::vector<T>& v, Key key) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (key(v[i]) < key(v[i - 1])) {
      fail(ErrorCode::PreconditionViolation,
           "per-developer event list is not in chronological order");
    }
  }
}

double attenuated_exponential(
    const std::map<DeveloperId, std::vector<Timestamp>>& events_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha) {
  check_window(t_s, t_e);
  double total = 0.0;
  for (const auto& [dev, times] : events_by_dev) {
    require_sorted(times, [](Timestamp t) { return t; });
    double attenuation = 1.0;
    for (Timestamp t : times) {
      total += attenuation * std::exp(time_ratio(t, t_s, t_e) - 1.0);
      attenuation *= alpha;
    }
  }
  return total;
}

std::size_t common_prefix(std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

double component_similarity(std::span<const std::uint32_t> a,
                            std::span<const std::uint32_t> b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(common_prefix(a, b)) /
         static_cast<double>(longest);
}

bool record_before(const PrRecord& a, const PrRecord& b) {
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return a.pr_id < b.pr_id;
}

ComponentTable intern_components(std::span<const PullRequest> prs) {
  ComponentTable table;
  for (const auto& pr : prs) {
    for (const auto& f : pr.files) {
      for (auto c : split_path(f.path)) {
        table.try_emplace(std::string(c),
                          static_cast<std::uint32_t>(table.size()));
      }
    }
  }
  return table;
}

std::vector<Timestamp> clamped_times(std::vector<Timestamp> times,
                                     Timestamp t_s, Timestamp t_e) {
  for (auto& t : times) t = std::clamp(t, t_s, t_e);
  return times;
}

}  // namespace

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Creator: return "creator";
    case Role::Committer: return "committer";
    case Role::Reviewer: return "reviewer";
    case Role::IssueCommenter: return "issue_commenter";
    case Role::ReviewCommenter: return "review_commenter";
  }
  return "unknown";
}

std::string_view edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::PrCreator: return "pr_creator";
    case EdgeKind::PrCommitters: return "pr_committers";
    case EdgeKind::PrReviewers: return "pr_reviewers";
    case EdgeKind::PrIssueCommenters: return "pr_issue_commenters";
    case EdgeKind::PrReviewCommenters: return "pr_review_commenters";
    case EdgeKind::PrPr: return "pr_pr";
  }
  return "unknown";
}

std::optional<Role> edge_role(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::PrCreator: return Role::Creator;
    case EdgeKind::PrCommitters: return Role::Committer;
    case EdgeKind::PrReviewers: return Role::Reviewer;
    case EdgeKind::PrIssueCommenters: return Role::IssueCommenter;
    case EdgeKind::PrReviewCommenters: return Role::ReviewCommenter;
    case EdgeKind::PrPr: return std::nullopt;
  }
  return std::nullopt;
}

void HyperparamConfig::validate() const {
  require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::InvalidConfig,
          "alpha must lie in [0, 1]");
  require(mu >= 0.0 && mu <= 1.0, ErrorCode::InvalidConfig,
          "mu must lie in [0, 1]");
  const auto& w = role_weights;
  require(std::isfinite(w.reviewer) && std::isfinite(w.committer) &&
              std::isfinite(w.review_commenter) &&
              std::isfinite(w.issue_commenter),
          ErrorCode::InvalidConfig, "role weights must be finite");
}

bool RelationMask::includes(EdgeKind kind) const {
  switch (kind) {
    case EdgeKind::PrCreator: return include_creator;
    case EdgeKind::PrCommitters: return include_ct;
    case EdgeKind::PrReviewers: return include_re;
    case EdgeKind::PrIssueCommenters: return include_ic;
    case EdgeKind::PrReviewCommenters: return include_rc;
    case EdgeKind::PrPr: return include_prpr;
  }
  return false;
}

bool RelationMask::is_full() const { return *this == RelationMask{}; }

void RelationMask::validate() const {
  require(include_re || include_ct || include_ic || include_rc ||
              include_creator || include_prpr,
          ErrorCode::InvalidConfig, "relation mask excludes every relation");
}

std::string RelationMask::label() const {
  std::string out;
  auto add = [&out](bool on, const char* tag) {
    if (!on) return;
    if (!out.empty()) out += '_';
    out += tag;
  };
  add(include_re, "re");
  add(include_ct, "ct");
  add(include_ic, "ic");
  add(include_rc, "rc");
  if (out.empty()) out = "none";
  if (!include_creator) out += "_nocr";
  if (!include_prpr) out += "_nopp";
  return out;
}

std::optional<std::size_t> IncidenceSystem::find_vertex(const Vertex& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> IncidenceSystem::pr_vertex(
    const std::string& pr_id) const {
  return find_vertex(PrVertex{pr_id});
}

std::optional<std::size_t> IncidenceSystem::dev_vertex(const DeveloperId& dev,
                                                       Role role) const {
  return find_vertex(DevVertex{dev, role});
}

std::string IncidenceSystem::to_json() const {
  using nlohmann::json;
  json vs = json::array();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    json v = {{"index", i}, {"degree", vertex_degrees_[i]}};
    if (const auto* pr = std::get_if<PrVertex>(&vertices_[i])) {
      v["type"] = "pr";
      v["pr_id"] = pr->pr_id;
    } else {
      const auto& d = std::get<DevVertex>(vertices_[i]);
      v["type"] = "dev";
      v["dev"] = d.dev.canonical;
      v["role"] = std::string(role_name(d.role));
    }
    vs.push_back(std::move(v));
  }
  json es = json::array();
  for (const auto& e : edges_) {
    es.push_back({{"id", e.edge_id},
                  {"kind", std::string(edge_kind_name(e.kind))},
                  {"members", e.members},
                  {"weight", e.weight},
                  {"latest_event", e.latest_event}});
  }
  json out = {{"t_start", t_start_},
              {"t_end", t_end_},
              {"vertices", std::move(vs)},
              {"edges", std::move(es)},
              {"adjacency_nonzeros", adjacency_.nonzeros()}};
  return out.dump(2);
}

HypergraphBuilder::HypergraphBuilder(Timestamp t_start, Timestamp t_end) {
  system_.t_start_ = t_start;
  system_.t_end_ = t_end;
}

HypergraphBuilder::HypergraphBuilder(const IncidenceSystem& base)
    : system_(base) {
  // Matrices are rebuilt by assemble().
  system_.incidence_ = SparseMatrix();
  system_.adjacency_ = SparseMatrix();
  system_.developer_roles_.clear();
}

std::size_t HypergraphBuilder::add_vertex(const Vertex& v) {
  auto [it, inserted] = system_.index_.try_emplace(v, system_.vertices_.size());
  if (inserted) system_.vertices_.push_back(v);
  return it->second;
}

std::size_t HypergraphBuilder::add_edge(EdgeKind kind,
                                        std::vector<std::size_t> members,
                                        double weight, Timestamp latest_event) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  require(!members.empty(), ErrorCode::Internal, "hyperedge without members");
  require(std::isfinite(weight) && weight >= 0.0, ErrorCode::Internal,
          "hyperedge weight must be finite and non-negative");

  std::size_t prs = 0;
  std::size_t devs = 0;
  const auto role = edge_role(kind);
  for (std::size_t m : members) {
    require(m < system_.vertices_.size(), ErrorCode::Internal,
            "hyperedge member out of range");
    if (std::holds_alternative<PrVertex>(system_.vertices_[m])) {
      ++prs;
    } else {
      ++devs;
      require(role && std::get<DevVertex>(system_.vertices_[m]).role == *role,
              ErrorCode::Internal, "hyperedge member has the wrong role");
    }
  }
  if (kind == EdgeKind::PrPr) {
    require(prs == 2 && devs == 0, ErrorCode::Internal,
            "PR-PR hyperedge needs exactly two PR members");
  } else {
    require(prs == 1 && devs >= 1, ErrorCode::Internal,
            "interaction hyperedge needs one PR and at least one developer");
  }

  const std::size_t id = system_.edges_.size();
  system_.edges_.push_back({id, kind, std::move(members), weight, latest_event});
  return id;
}

void HypergraphBuilder::add_pr_record(PrRecord record) {
  system_.prs_.push_back(std::move(record));
}

void HypergraphBuilder::set_components(
    std::shared_ptr<const ComponentTable> table) {
  system_.components_ = std::move(table);
}

bool HypergraphBuilder::has_pr(const std::string& pr_id) const {
  return system_.index_.contains(Vertex{PrVertex{pr_id}});
}

IncidenceSystem HypergraphBuilder::assemble() const {
  IncidenceSystem s = system_;
  const std::size_t nv = s.vertices_.size();
  const std::size_t ne = s.edges_.size();

  std::vector<Triplet> h;
  s.edge_weights_.assign(ne, 0.0);
  s.edge_degrees_.assign(ne, 0.0);
  s.vertex_degrees_.assign(nv, 0.0);
  for (const auto& e : s.edges_) {
    s.edge_weights_[e.edge_id] = e.weight;
    s.edge_degrees_[e.edge_id] = static_cast<double>(e.members.size());
    for (std::size_t v : e.members) {
      h.push_back({v, e.edge_id, 1.0});
      s.vertex_degrees_[v] += e.weight;
    }
  }
  s.incidence_ = SparseMatrix::from_triplets(nv, ne, std::move(h));

  // A[u][v] = sum_e w(e)/delta(e) * h(u,e) h(v,e) / sqrt(d(u) d(v)). Terms for
  // (u,v) and (v,u) are generated and summed in the same order, so A comes out
  // exactly symmetric.
  std::vector<Triplet> a;
  for (const auto& e : s.edges_) {
    if (e.weight <= 0.0) continue;
    const double per_member = e.weight / static_cast<double>(e.members.size());
    for (std::size_t u : e.members) {
      for (std::size_t v : e.members) {
        const double scale =
            std::sqrt(s.vertex_degrees_[u] * s.vertex_degrees_[v]);
        a.push_back({u, v, per_member / scale});
      }
    }
  }
  s.adjacency_ = SparseMatrix::from_triplets(nv, nv, std::move(a));

  s.developer_roles_.clear();
  for (std::size_t i = 0; i < nv; ++i) {
    if (const auto* d = std::get_if<DevVertex>(&s.vertices_[i])) {
      s.developer_roles_[d->dev][static_cast<std::size_t>(d->role)] = i;
    }
  }
  return s;
}

double creator_weight(Timestamp t_i, Timestamp t_s, Timestamp t_e) {
  check_window(t_s, t_e);
  return time_ratio(t_i, t_s, t_e);
}

double committer_edge_weight(
    const std::map<DeveloperId, std::vector<CommitSample>>& commits_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha) {
  check_window(t_s, t_e);
  double total = 0.0;
  for (const auto& [dev, commits] : commits_by_dev) {
    require_sorted(commits, [](const CommitSample& c) { return c.timestamp; });
    double attenuation = 1.0;
    for (const auto& c : commits) {
      const double size_factor =
          1.0 / (1.0 + std::exp(0.01 * static_cast<double>(c.lines_changed)));
      total += attenuation * time_ratio(c.timestamp, t_s, t_e) * size_factor;
      attenuation *= alpha;
    }
  }
  return total;
}

double reviewer_edge_weight(
    const std::map<DeveloperId, std::vector<Timestamp>>& reviews_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha) {
  return attenuated_exponential(reviews_by_dev, t_s, t_e, alpha);
}

double commenter_edge_weight(
    const std::map<DeveloperId, std::vector<Timestamp>>& comments_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha) {
  return attenuated_exponential(comments_by_dev, t_s, t_e, alpha);
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto pos = path.find('/');
    auto part = path.substr(0, pos);
    if (!part.empty()) parts.push_back(part);
    if (pos == std::string_view::npos) break;
    path.remove_prefix(pos + 1);
  }
  return parts;
}

double file_path_similarity(std::string_view f_m, std::string_view f_n) {
  const auto a = split_path(f_m);
  const auto b = split_path(f_n);
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) {
    ++common;
  }
  return static_cast<double>(common) / static_cast<double>(longest);
}

PrRecord make_pr_record(const PullRequest& pr, const ComponentTable& table) {
  PrRecord rec;
  rec.pr_id = pr.pr_id;
  rec.created_at = pr.created_at;
  std::map<std::string_view, std::uint32_t> local;
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& f : pr.files) {
    std::vector<std::uint32_t> ids;
    for (auto c : split_path(f.path)) {
      if (auto it = table.find(std::string(c)); it != table.end()) {
        ids.push_back(it->second);
      } else {
        auto [lit, _] = local.try_emplace(
            c, static_cast<std::uint32_t>(table.size() + local.size()));
        ids.push_back(lit->second);
      }
    }
    if (!ids.empty() && seen.insert(ids).second) rec.paths.push_back(std::move(ids));
  }
  return rec;
}

double pr_record_similarity(const PrRecord& a, const PrRecord& b,
                            Timestamp t_s, Timestamp t_e) {
  check_window(t_s, t_e);
  if (a.paths.empty() || b.paths.empty()) return 0.0;
  // Fixed argument order keeps the floating-point sum symmetric.
  const PrRecord& first = record_before(b, a) ? b : a;
  const PrRecord& second = &first == &a ? b : a;
  double sum = 0.0;
  for (const auto& fm : first.paths) {
    for (const auto& fn : second.paths) sum += component_similarity(fm, fn);
  }
  const double mean = sum / (static_cast<double>(first.paths.size()) *
                             static_cast<double>(second.paths.size()));
  const double gap = static_cast<double>(std::abs(a.created_at - b.created_at));
  return mean * std::exp(-gap / static_cast<double>(t_e - t_s));
}

std::vector<std::pair<std::size_t, double>> select_similar_records(
    const PrRecord& target, std::span<const PrRecord> candidates,
    std::size_t k, Timestamp t_s, Timestamp t_e) {
  std::vector<std::pair<std::size_t, double>> scored;
  if (k == 0) return scored;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].pr_id == target.pr_id) continue;
    const double w = pr_record_similarity(target, candidates[i], t_s, t_e);
    if (w > 0.0) scored.emplace_back(i, w);
  }
  auto better = [&](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    const auto& px = candidates[x.first];
    const auto& py = candidates[y.first];
    if (px.created_at != py.created_at) return px.created_at > py.created_at;
    return px.pr_id < py.pr_id;
  };
  if (scored.size() > k) {
    std::partial_sort(scored.begin(),
                      scored.begin() + static_cast<std::ptrdiff_t>(k),
                      scored.end(), better);
    scored.resize(k);
  } else {
    std::sort(scored.begin(), scored.end(), better);
  }
  return scored;
}

double pr_similarity(const PullRequest& p_i, const PullRequest& p_j,
                     Timestamp t_s, Timestamp t_e) {
  std::vector<PullRequest> both = {p_i, p_j};
  const ComponentTable table = intern_components(both);
  return pr_record_similarity(make_pr_record(p_i, table),
                              make_pr_record(p_j, table), t_s, t_e);
}

std::vector<SimilarPr> select_similar_prs(const PullRequest& target,
                                          std::span<const PullRequest> candidates,
                                          std::size_t k, Timestamp t_s,
                                          Timestamp t_e) {
  check_window(t_s, t_e);
  std::vector<PullRequest> all(candidates.begin(), candidates.end());
  all.push_back(target);
  const ComponentTable table = intern_components(all);
  std::vector<PrRecord> records;
  records.reserve(candidates.size());
  for (const auto& c : candidates) records.push_back(make_pr_record(c, table));
  std::vector<SimilarPr> out;
  for (auto [i, w] : select_similar_records(make_pr_record(target, table),
                                            records, k, t_s, t_e)) {
    out.push_back({records[i].pr_id, w});
  }
  return out;
}

std::size_t add_pr_interactions(HypergraphBuilder& builder, const PullRequest& pr,
                                const IdentityMap& ids,
                                const HyperparamConfig& cfg,
                                const RelationMask& mask,
                                bool include_reviews_and_comments,
                                Timestamp t_s, Timestamp t_e) {
  check_window(t_s, t_e);
  const std::size_t pv = builder.add_vertex(PrVertex{pr.pr_id});
  auto clamp = [&](Timestamp t) { return std::clamp(t, t_s, t_e); };

  if (mask.include_creator) {
    const DeveloperId creator = ids.resolve(pr.creator);
    if (creator != kInvalidDeveloper) {
      const std::size_t dv = builder.add_vertex(DevVertex{creator, Role::Creator});
      builder.add_edge(EdgeKind::PrCreator, {pv, dv},
                       creator_weight(clamp(pr.created_at), t_s, t_e),
                       pr.created_at);
    }
  }

  if (mask.include_ct && !pr.commits.empty()) {
    std::vector<const CommitEvent*> commits;
    for (const auto& c : pr.commits) commits.push_back(&c);
    std::stable_sort(commits.begin(), commits.end(),
                     [](const CommitEvent* a, const CommitEvent* b) {
                       return a->timestamp < b->timestamp;
                     });
    std::map<DeveloperId, std::vector<CommitSample>> by_dev;
    Timestamp latest = 0;
    for (const CommitEvent* c : commits) {
      for (const auto& dev : ids.resolve_all(c->author)) {
        if (dev == kInvalidDeveloper) continue;
        by_dev[dev].push_back({clamp(c->timestamp), c->lines_changed()});
        latest = std::max(latest, c->timestamp);
      }
    }
    if (!by_dev.empty()) {
      std::vector<std::size_t> members = {pv};
      for (const auto& [dev, _] : by_dev) {
        members.push_back(builder.add_vertex(DevVertex{dev, Role::Committer}));
      }
      builder.add_edge(EdgeKind::PrCommitters, std::move(members),
                       committer_edge_weight(by_dev, t_s, t_e, cfg.alpha), latest);
    }
  }

  if (!include_reviews_and_comments) return pv;

  // Groups event times per developer, then emits one edge over them.
  auto emit = [&](EdgeKind kind, Role role, auto&& events, auto&& actor_of) {
    std::map<DeveloperId, std::vector<Timestamp>> by_dev;
    Timestamp latest = 0;
    for (const auto& e : events) {
      const DeveloperId dev = ids.resolve(actor_of(e));
      if (dev == kInvalidDeveloper) continue;
      by_dev[dev].push_back(e.timestamp);
      latest = std::max(latest, e.timestamp);
    }
    if (by_dev.empty()) return;
    std::vector<std::size_t> members = {pv};
    for (auto& [dev, times] : by_dev) {
      std::stable_sort(times.begin(), times.end());
      times = clamped_times(std::move(times), t_s, t_e);
      members.push_back(builder.add_vertex(DevVertex{dev, role}));
    }
    const double w = kind == EdgeKind::PrReviewers
                         ? reviewer_edge_weight(by_dev, t_s, t_e, cfg.alpha)
                         : commenter_edge_weight(by_dev, t_s, t_e, cfg.alpha);
    builder.add_edge(kind, std::move(members), w, latest);
  };

  if (mask.include_re) {
    emit(EdgeKind::PrReviewers, Role::Reviewer, pr.reviews,
         [](const ReviewEvent& r) -> const RawActor& { return r.reviewer; });
  }
  std::vector<CommentEvent> issue;
  std::vector<CommentEvent> review;
  for (const auto& c : pr.comments) {
    (c.kind == CommentKind::Issue ? issue : review).push_back(c);
  }
  auto commenter = [](const CommentEvent& c) -> const RawActor& {
    return c.commenter;
  };
  if (mask.include_ic) {
    emit(EdgeKind::PrIssueCommenters, Role::IssueCommenter, issue, commenter);
  }
  if (mask.include_rc) {
    emit(EdgeKind::PrReviewCommenters, Role::ReviewCommenter, review, commenter);
  }
  return pv;
}

IncidenceSystem build_hypergraph(const EventLog& log, const IdentityMap& ids,
                                 const HyperparamConfig& cfg,
                                 const RelationMask& mask, std::size_t jobs) {
  cfg.validate();
  mask.validate();
  const Timestamp t_s = log.t_start;
  const Timestamp t_e = log.t_end;
  check_window(t_s, t_e);

  HypergraphBuilder builder(t_s, t_e);
  auto table = std::make_shared<const ComponentTable>(intern_components(log.prs));

  std::vector<PrRecord> records;
  std::vector<std::size_t> pr_vertices;
  records.reserve(log.prs.size());
  for (const auto& pr : log.prs) {
    pr_vertices.push_back(
        add_pr_interactions(builder, pr, ids, cfg, mask, true, t_s, t_e));
    records.push_back(make_pr_record(pr, *table));
  }

  if (mask.include_prpr && cfg.top_k_similar > 0) {
    std::vector<std::vector<std::pair<std::size_t, double>>> similar(records.size());
    detail::parallel_for(records.size(), jobs, [&](std::size_t i) {
      similar[i] = select_similar_records(records[i], records, cfg.top_k_similar,
                                          t_s, t_e);
    });
    std::set<std::pair<std::size_t, std::size_t>> linked;
    for (std::size_t i = 0; i < records.size(); ++i) {
      for (auto [j, w] : similar[i]) {
        if (!linked.insert(std::minmax(i, j)).second) continue;
        builder.add_edge(EdgeKind::PrPr, {pr_vertices[i], pr_vertices[j]}, w,
                         std::max(records[i].created_at, records[j].created_at));
      }
    }
  }

  for (auto& r : records) builder.add_pr_record(std::move(r));
  builder.set_components(std::move(table));
  return builder.assemble();
}

}  // namespace mirrec
