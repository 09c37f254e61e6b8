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

#include "mirrec/app.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "mirrec/error.hpp"

namespace mirrec {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            const char* expected) {
  fail(ErrorCode::InvalidConfig, "config key \"" + std::string(key) +
                                     "\": expected " + expected + ", got \"" +
                                     std::string(value) + "\"");
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

std::size_t to_size(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    bad_value(key, v, "a non-negative integer");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "true or false");
}

RoleWeights to_weights(std::string_view key, std::string_view v) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t end = v.find_first_of(",:", start);
    if (end == std::string_view::npos) end = v.size();
    parts.push_back(to_double(key, trim(v.substr(start, end - start))));
    start = end + 1;
  }
  if (parts.size() != 4) bad_value(key, v, "four numbers a,b,c,d");
  return {parts[0], parts[1], parts[2], parts[3]};
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') &&
      v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

// Events strictly before `cut`; PRs created before it, other than `skip_id`.
EventLog history_before(const EventLog& log, Timestamp cut,
                        const std::string& skip_id) {
  EventLog out;
  out.project = log.project;
  out.t_start = log.t_start;
  out.t_end = cut;
  for (const auto& pr : log.prs) {
    if (pr.created_at >= cut || pr.pr_id == skip_id) continue;
    PullRequest p = pr;
    std::erase_if(p.commits, [&](const CommitEvent& e) { return e.timestamp >= cut; });
    std::erase_if(p.reviews, [&](const ReviewEvent& e) { return e.timestamp >= cut; });
    std::erase_if(p.comments, [&](const CommentEvent& e) { return e.timestamp >= cut; });
    if (p.merged_at && *p.merged_at >= cut) p.merged_at.reset();
    out.prs.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::size_t default_jobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void AppConfig::validate() const {
  hyper.validate();
  filter.validate();
  mask.validate();
  require(solver.tol > 0.0, ErrorCode::InvalidConfig, "tol must be > 0");
  require(solver.max_iter > 0, ErrorCode::InvalidConfig, "max_iter must be > 0");
  require(jobs > 0, ErrorCode::InvalidConfig, "jobs must be > 0");
}

const std::vector<std::string>& AppConfig::keys() {
  static const std::vector<std::string> k = {
      "mu",          "alpha",          "top_k_similar",        "weights",
      "bulk_commit_threshold", "drop_bots", "drop_unresolved", "drop_self_reviews",
      "truncate_post_merge", "drop_empty_prs", "include_re", "include_ct",
      "include_ic",  "include_rc",     "include_creator",      "include_prpr",
      "tol",         "max_iter",       "max_distance",         "jobs",
      "top_k",       "rounds",         "input",                "output",
      "identity_overrides"};
  return k;
}

namespace {

void assign(AppConfig& c, std::string_view key, std::string_view raw) {
  const std::string value = unquote(trim(raw));
  const std::string_view v = value;
  if (key == "mu") c.hyper.mu = to_double(key, v);
  else if (key == "alpha") c.hyper.alpha = to_double(key, v);
  else if (key == "top_k_similar") c.hyper.top_k_similar = to_size(key, v);
  else if (key == "weights") c.hyper.role_weights = to_weights(key, v);
  else if (key == "bulk_commit_threshold") c.filter.bulk_commit_threshold = to_size(key, v);
  else if (key == "drop_bots") c.filter.drop_bots = to_bool(key, v);
  else if (key == "drop_unresolved") c.filter.drop_unresolved = to_bool(key, v);
  else if (key == "drop_self_reviews") c.filter.drop_self_reviews = to_bool(key, v);
  else if (key == "truncate_post_merge") c.filter.truncate_post_merge = to_bool(key, v);
  else if (key == "drop_empty_prs") c.filter.drop_empty_prs = to_bool(key, v);
  else if (key == "include_re") c.mask.include_re = to_bool(key, v);
  else if (key == "include_ct") c.mask.include_ct = to_bool(key, v);
  else if (key == "include_ic") c.mask.include_ic = to_bool(key, v);
  else if (key == "include_rc") c.mask.include_rc = to_bool(key, v);
  else if (key == "include_creator") c.mask.include_creator = to_bool(key, v);
  else if (key == "include_prpr") c.mask.include_prpr = to_bool(key, v);
  else if (key == "tol") c.solver.tol = to_double(key, v);
  else if (key == "max_iter") c.solver.max_iter = to_size(key, v);
  else if (key == "max_distance") c.max_distance = to_size(key, v);
  else if (key == "jobs") c.jobs = to_size(key, v);
  else if (key == "top_k") c.top_k = to_size(key, v);
  else if (key == "rounds") c.rounds = to_size(key, v);
  else if (key == "input") c.input = value;
  else if (key == "output") c.output = value;
  else if (key == "identity_overrides") c.identity_overrides = value;
  else fail(ErrorCode::InvalidConfig, "unknown config key \"" + std::string(key) + "\"");
}

}  // namespace

void AppConfig::set(std::string_view key, std::string_view raw) {
  AppConfig next = *this;
  assign(next, key, raw);
  next.validate();
  *this = std::move(next);
}

void AppConfig::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    // '#' outside quotes starts a comment.
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (quote) {
        if (s[i] == quote) quote = 0;
      } else if (s[i] == '"' || s[i] == '\'') {
        quote = s[i];
      } else if (s[i] == '#') {
        s = s.substr(0, i);
        break;
      }
    }
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::InvalidConfig,
           "config line " + std::to_string(line_no) + ": expected key = value");
    }
    set(trim(s.substr(0, eq)), s.substr(eq + 1));
  }
}

void AppConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open config file " + path);
  load(in);
}

std::string AppConfig::to_json() const {
  const auto& w = hyper.role_weights;
  nlohmann::json j = {
      {"mu", hyper.mu},
      {"alpha", hyper.alpha},
      {"top_k_similar", hyper.top_k_similar},
      {"weights", {w.reviewer, w.committer, w.review_commenter, w.issue_commenter}},
      {"bulk_commit_threshold", filter.bulk_commit_threshold},
      {"drop_bots", filter.drop_bots},
      {"drop_unresolved", filter.drop_unresolved},
      {"drop_self_reviews", filter.drop_self_reviews},
      {"truncate_post_merge", filter.truncate_post_merge},
      {"drop_empty_prs", filter.drop_empty_prs},
      {"include_re", mask.include_re},
      {"include_ct", mask.include_ct},
      {"include_ic", mask.include_ic},
      {"include_rc", mask.include_rc},
      {"include_creator", mask.include_creator},
      {"include_prpr", mask.include_prpr},
      {"tol", solver.tol},
      {"max_iter", solver.max_iter},
      {"max_distance", max_distance},
      {"jobs", jobs},
      {"top_k", top_k},
      {"rounds", rounds},
      {"input", input},
      {"output", output},
      {"identity_overrides", identity_overrides},
  };
  return j.dump(2);
}

IdentityMap build_identity(const EventLog& log, const AppConfig& cfg) {
  std::vector<IdentityOverride> overrides;
  if (!cfg.identity_overrides.empty()) {
    overrides = read_identity_overrides_file(cfg.identity_overrides);
  }
  return build_identity_map(log, cfg.max_distance, overrides);
}

IngestResult ingest(const EventLog& raw, const AppConfig& cfg) {
  cfg.validate();
  const IdentityMap ids = build_identity(raw, cfg);
  auto [log, report] = apply_filters(raw, ids, cfg.filter);
  return {std::move(log), report};
}

Recommendation recommend_for(const EventLog& log, const PullRequest& query,
                             const AppConfig& cfg) {
  cfg.validate();
  if (log.t_start >= query.created_at) {
    fail(ErrorCode::DegenerateWindow,
         "no history before PR \"" + query.pr_id + "\"");
  }
  EventLog all = log;
  if (std::none_of(all.prs.begin(), all.prs.end(),
                   [&](const PullRequest& p) { return p.pr_id == query.pr_id; })) {
    all.prs.push_back(query);
  }
  const IdentityMap ids = build_identity(all, cfg);

  const EventLog history = history_before(log, query.created_at, query.pr_id);
  const EventLog train = apply_filters(history, ids, cfg.filter).first;
  const IncidenceSystem system =
      build_hypergraph(train, ids, cfg.hyper, cfg.mask, cfg.jobs);

  EventLog single;
  single.project = log.project;
  single.t_start = log.t_start;
  single.t_end = query.created_at;
  single.prs.push_back(query);
  FilterConfig qf = cfg.filter;
  qf.drop_empty_prs = false;
  PullRequest q = apply_filters(single, ids, qf).first.prs.front();
  q.reviews.clear();
  q.comments.clear();

  return recommend(system, q, ids, cfg.hyper, cfg.mask, cfg.top_k,
                   query.created_at, cfg.solver);
}

Recommendation recommend_for(const EventLog& log, const std::string& pr_id,
                             const AppConfig& cfg) {
  const auto it = std::find_if(log.prs.begin(), log.prs.end(),
                               [&](const PullRequest& p) { return p.pr_id == pr_id; });
  if (it == log.prs.end()) {
    fail(ErrorCode::UnknownPr, "PR \"" + pr_id + "\" is not in the log");
  }
  return recommend_for(log, *it, cfg);
}

EvalReport evaluate(const EventLog& raw, const AppConfig& cfg) {
  cfg.validate();
  const IdentityMap ids = build_identity(raw, cfg);
  const EventLog log = apply_filters(raw, ids, cfg.filter).first;
  const std::size_t n =
      cfg.rounds == 0 ? std::numeric_limits<std::size_t>::max() : cfg.rounds;
  const std::vector<EvalRound> rounds = make_rounds(log, n);
  EvalOptions opts;
  opts.top_n = kMetricCutoffs.back();
  opts.solver = cfg.solver;
  opts.jobs = cfg.jobs;
  return run_evaluation(log, ids, cfg.hyper, cfg.mask, rounds, opts);
}

IncidenceSystem build_graph(const EventLog& raw, const AppConfig& cfg) {
  cfg.validate();
  const IdentityMap ids = build_identity(raw, cfg);
  const EventLog log = apply_filters(raw, ids, cfg.filter).first;
  return build_hypergraph(log, ids, cfg.hyper, cfg.mask, cfg.jobs);
}

}  // namespace mirrec
