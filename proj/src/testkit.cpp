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

#include "mirrec/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mirrec/error.hpp"
#include "mirrec/eval.hpp"

namespace mirrec {

namespace {

constexpr Timestamp kHour = 3600;
constexpr Timestamp kDay = 24 * kHour;

RawActor dev_actor(std::size_t d) {
  RawActor a;
  a.login = "dev" + std::to_string(d);
  a.email = "dev" + std::to_string(d) + "@example.com";
  a.name = "Dev " + std::to_string(d);
  a.type = ActorType::User;
  return a;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(range(0, static_cast<std::int64_t>(n) - 1));
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p;
  }
  // Uniform in (0, 1].
  double weight() {
    return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

template <typename T>
void sort_by_time(std::vector<T>& events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const T& a, const T& b) { return a.timestamp < b.timestamp; });
}

}  // namespace

void SynthParams::validate() const {
  require(n_devs >= 1 && n_prs >= 1 && n_subtrees >= 1 && months >= 1,
          ErrorCode::PreconditionViolation,
          "synthetic log counts must all be >= 1");
  require(reviewer_affinity >= 0.0 && reviewer_affinity <= 1.0,
          ErrorCode::PreconditionViolation,
          "reviewer_affinity must lie in [0, 1]");
  require(n_subtrees <= n_devs, ErrorCode::PreconditionViolation,
          "every subtree needs an owner (n_subtrees <= n_devs)");
}

EventLog generate_log(const SynthParams& p) {
  p.validate();
  Rng rng(p.seed);

  EventLog log;
  log.project = "synthetic";
  log.t_start = kSynthEpoch;
  log.t_end = add_months(kSynthEpoch, static_cast<int>(p.months)) - 1;
  // Leave room for a PR's life (at most a week) before the window closes.
  const Timestamp last_creation = std::max(log.t_start, log.t_end - 10 * kDay);

  const Timestamp review_from =
      add_months(kSynthEpoch, static_cast<int>(p.expert_review_delay_months));

  std::vector<Timestamp> created(p.n_prs);
  for (auto& t : created) t = rng.range(log.t_start, last_creation);
  std::sort(created.begin(), created.end());

  for (std::size_t i = 0; i < p.n_prs; ++i) {
    const std::size_t s = rng.index(p.n_subtrees);
    const std::size_t owner = s;

    std::vector<std::size_t> members, others;
    for (std::size_t d = 0; d < p.n_devs; ++d) {
      if (d == owner) continue;
      others.push_back(d);
      if (d % p.n_subtrees == s) members.push_back(d);
    }
    std::size_t creator = owner;
    if (!members.empty()) {
      creator = members[rng.index(members.size())];
    } else if (!others.empty()) {
      creator = others[rng.index(others.size())];
    }

    PullRequest pr;
    pr.pr_id = "PR-" + std::to_string(i + 1);
    pr.created_at = created[i];
    pr.creator = dev_actor(creator);

    std::vector<std::size_t> file_ids;
    const std::size_t n_files = 1 + rng.index(3);
    while (file_ids.size() < n_files) {
      const std::size_t j = rng.index(5);
      if (std::find(file_ids.begin(), file_ids.end(), j) == file_ids.end()) {
        file_ids.push_back(j);
      }
    }
    std::sort(file_ids.begin(), file_ids.end());
    auto path_of = [&](std::size_t j) {
      return "src/mod" + std::to_string(s) + "/file" + std::to_string(j) + ".cpp";
    };
    for (std::size_t j : file_ids) {
      pr.files.push_back({path_of(j), rng.range(1, 200)});
    }

    auto make_commit = [&](std::size_t author) {
      CommitEvent c;
      c.author = dev_actor(author);
      c.timestamp = pr.created_at + rng.range(0, kDay);
      for (std::size_t j : file_ids) {
        if (c.files.empty() || rng.chance(0.5)) {
          c.files.push_back({path_of(j), rng.range(1, 120)});
        }
      }
      return c;
    };
    const std::size_t n_commits = 1 + rng.index(3);
    for (std::size_t c = 0; c < n_commits; ++c) pr.commits.push_back(make_commit(creator));
    if (p.expert_commits && owner != creator) pr.commits.push_back(make_commit(owner));
    sort_by_time(pr.commits);
    Timestamp last = pr.commits.back().timestamp;

    const bool owner_reviews = owner != creator && pr.created_at >= review_from;
    std::vector<std::size_t> not_creator;
    for (std::size_t d = 0; d < p.n_devs; ++d) {
      if (d == creator || (d == owner && pr.created_at < review_from)) continue;
      not_creator.push_back(d);
    }
    if (!not_creator.empty()) {
      std::size_t reviewer = owner;
      if (!rng.chance(p.reviewer_affinity) || !owner_reviews) {
        reviewer = not_creator[rng.index(not_creator.size())];
      }
      const Timestamp r = last + rng.range(kHour, 2 * kDay);
      pr.reviews.push_back({dev_actor(reviewer), r});
      pr.comments.push_back({dev_actor(reviewer), r, CommentKind::ReviewComment});
      last = r;
      if (rng.chance(0.3)) {
        const Timestamp r2 = r + rng.range(kHour, kDay);
        pr.reviews.push_back({dev_actor(reviewer), r2});
        last = r2;
      }
    }
    if (rng.chance(0.5)) {
      pr.comments.push_back({dev_actor(creator), pr.created_at + rng.range(0, kDay),
                             CommentKind::Issue});
    }
    sort_by_time(pr.comments);
    for (const auto& c : pr.comments) last = std::max(last, c.timestamp);
    pr.merged_at = last + kHour;

    log.prs.push_back(std::move(pr));
  }
  normalize_event_log(log);
  validate_event_log(log);
  return log;
}

std::vector<double> dense_oracle_solve(const SparseMatrix& adjacency,
                                       std::span<const double> y, double mu) {
  const std::size_t n = adjacency.rows();
  require(n <= 2000, ErrorCode::PreconditionViolation,
          "dense oracle is limited to 2000 vertices");
  require(adjacency.cols() == n && y.size() == n, ErrorCode::Internal,
          "dense oracle dimension mismatch");

  // Augmented matrix [I - mu*A | y], row-major.
  const std::size_t w = n + 1;
  std::vector<double> m(n * w, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    m[r * w + r] = 1.0;
    for (std::size_t k = adjacency.row_ptr()[r]; k < adjacency.row_ptr()[r + 1]; ++k) {
      m[r * w + adjacency.col_idx()[k]] -= mu * adjacency.values()[k];
    }
    m[r * w + n] = y[r];
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r * w + col]) > std::abs(m[pivot * w + col])) pivot = r;
    }
    if (m[pivot * w + col] == 0.0) {
      fail(ErrorCode::SingularMatrix, "I - mu*A is singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < w; ++c) std::swap(m[col * w + c], m[pivot * w + c]);
    }
    const double p = m[col * w + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m[r * w + col] / p;
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < w; ++c) m[r * w + c] -= factor * m[col * w + c];
    }
  }

  std::vector<double> f(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = m[i * w + n];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i * w + c] * f[c];
    f[i] = acc / m[i * w + i];
  }
  return f;
}

std::vector<double> dense_oracle_solve(const IncidenceSystem& system,
                                       std::span<const double> y, double mu) {
  return dense_oracle_solve(system.adjacency(), y, mu);
}

std::map<DeveloperId, double> brute_force_scores(const IncidenceSystem& system,
                                                 std::span<const double> f_star,
                                                 const RoleWeights& weights,
                                                 const DeveloperId& creator) {
  struct RoleValues {
    double reviewer = 0.0, committer = 0.0, review_commenter = 0.0,
           issue_commenter = 0.0;
  };
  std::map<DeveloperId, RoleValues> seen;
  const auto& vertices = system.vertices();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto* d = std::get_if<DevVertex>(&vertices[i]);
    if (d == nullptr || d->dev == creator) continue;
    auto& values = seen[d->dev];
    switch (d->role) {
      case Role::Creator: break;
      case Role::Reviewer: values.reviewer = f_star[i]; break;
      case Role::Committer: values.committer = f_star[i]; break;
      case Role::ReviewCommenter: values.review_commenter = f_star[i]; break;
      case Role::IssueCommenter: values.issue_commenter = f_star[i]; break;
    }
  }
  std::map<DeveloperId, double> scores;
  for (const auto& [dev, v] : seen) {
    scores[dev] = weights.reviewer * v.reviewer + weights.committer * v.committer +
                  weights.review_commenter * v.review_commenter +
                  weights.issue_commenter * v.issue_commenter;
  }
  return scores;
}

IncidenceSystem random_incidence_system(std::uint64_t seed,
                                        std::size_t max_vertices,
                                        std::size_t max_edges) {
  require(max_vertices >= 2 && max_edges >= 1, ErrorCode::PreconditionViolation,
          "random system needs at least 2 vertices and 1 edge");
  Rng rng(seed);
  HypergraphBuilder builder(0, 1);

  const std::size_t nv = 2 + rng.index(max_vertices - 1);
  const std::size_t n_prs = 2 + rng.index(std::max<std::size_t>(1, nv / 2));
  std::vector<std::size_t> prs;
  std::map<Role, std::vector<std::size_t>> devs_by_role;
  for (std::size_t i = 0; i < nv; ++i) {
    if (i < std::min(n_prs, nv)) {
      prs.push_back(builder.add_vertex(PrVertex{"p" + std::to_string(i)}));
    } else {
      // Few distinct developers so several roles land on the same person.
      const DeveloperId dev{"d" + std::to_string(rng.index(std::max<std::size_t>(1, nv / 3)))};
      const Role role = kAllRoles[rng.index(kRoleCount)];
      const std::size_t before = builder.add_vertex(DevVertex{dev, role});
      auto& list = devs_by_role[role];
      if (std::find(list.begin(), list.end(), before) == list.end()) {
        list.push_back(before);
      }
    }
  }

  constexpr std::array<EdgeKind, 6> kinds = {
      EdgeKind::PrCreator,         EdgeKind::PrCommitters,
      EdgeKind::PrReviewers,       EdgeKind::PrIssueCommenters,
      EdgeKind::PrReviewCommenters, EdgeKind::PrPr};
  const std::size_t ne = 1 + rng.index(max_edges);
  for (std::size_t e = 0; e < ne; ++e) {
    EdgeKind kind = kinds[rng.index(kinds.size())];
    const auto role = edge_role(kind);
    const auto it = role ? devs_by_role.find(*role) : devs_by_role.end();
    if (role && (it == devs_by_role.end() || it->second.empty())) {
      kind = EdgeKind::PrPr;
    }
    std::vector<std::size_t> members;
    if (kind == EdgeKind::PrPr) {
      const std::size_t a = rng.index(prs.size());
      std::size_t b = rng.index(prs.size() - 1);
      if (b >= a) ++b;
      members = {prs[a], prs[b]};
    } else {
      members.push_back(prs[rng.index(prs.size())]);
      const auto& pool = it->second;
      const std::size_t k = kind == EdgeKind::PrCreator ? 1 : 1 + rng.index(std::min<std::size_t>(4, pool.size()));
      for (std::size_t m = 0; m < k; ++m) members.push_back(pool[rng.index(pool.size())]);
    }
    builder.add_edge(kind, std::move(members), rng.weight(), 0);
  }
  return builder.assemble();
}

}  // namespace mirrec
