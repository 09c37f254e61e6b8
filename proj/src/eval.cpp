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

#include "mirrec/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "mirrec/error.hpp"
#include "parallel.hpp"

namespace mirrec {

namespace {

using std::chrono::days;
using std::chrono::floor;
using std::chrono::sys_days;
using std::chrono::sys_seconds;
using std::chrono::year_month;
using std::chrono::year_month_day;

year_month month_of(Timestamp t) {
  const auto day = floor<days>(sys_seconds{std::chrono::seconds{t}});
  const year_month_day ymd{day};
  return ymd.year() / ymd.month();
}

Timestamp start_of(year_month ym) {
  const sys_days d{ym / std::chrono::day{1}};
  return std::chrono::duration_cast<std::chrono::seconds>(d.time_since_epoch())
      .count();
}

int months_between(year_month a, year_month b) {
  return (static_cast<int>(b.year()) - static_cast<int>(a.year())) * 12 +
         (static_cast<int>(static_cast<unsigned>(b.month())) -
          static_cast<int>(static_cast<unsigned>(a.month())));
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Tally {
  std::map<std::size_t, double> acc_sum;
  std::map<std::size_t, double> mrr_sum;
  std::size_t n = 0;

  void add(std::span<const DeveloperId> ranked,
           const std::set<DeveloperId>& actual) {
    for (std::size_t k : kMetricCutoffs) {
      acc_sum[k] += acc_at_k(ranked, actual, k);
      mrr_sum[k] += mrr_at_k(ranked, actual, k);
    }
    ++n;
  }

  Metrics mean() const {
    Metrics m;
    m.n_test_prs = n;
    for (std::size_t k : kMetricCutoffs) {
      auto a = acc_sum.find(k);
      auto r = mrr_sum.find(k);
      m.acc[k] = n == 0 || a == acc_sum.end() ? 0.0 : a->second / static_cast<double>(n);
      m.mrr[k] = n == 0 || r == mrr_sum.end() ? 0.0 : r->second / static_cast<double>(n);
    }
    return m;
  }
};

struct RoundOutput {
  RoundResult result;
  Tally tally;
};

RoundOutput run_round(const EventLog& log, const IdentityMap& ids,
                      const HyperparamConfig& cfg, const RelationMask& mask,
                      const EvalRound& round, const EvalOptions& opts) {
  RoundOutput out;
  out.result.round = round;

  const EventLog train = training_slice(log, round);
  out.result.train_prs = train.prs.size();
  const IncidenceSystem system = build_hypergraph(train, ids, cfg, mask);
  out.result.audited_edges += audit_time_hygiene(system, round.test_start);

  for (const auto& pr : log.prs) {
    if (pr.created_at < round.test_start || pr.created_at >= round.test_end) {
      continue;
    }
    const DeveloperId creator = ids.resolve(pr.creator);
    if (creator == kInvalidDeveloper) {
      ++out.result.skipped_unresolved_creator;
      continue;
    }
    std::set<DeveloperId> actual;
    for (const auto& r : pr.reviews) actual.insert(ids.resolve(r.reviewer));
    actual.erase(kInvalidDeveloper);
    if (actual.empty()) {
      ++out.result.skipped_no_reviewers;
      continue;
    }

    const IncidenceSystem extended =
        insert_query_pr(system, pr, ids, cfg, mask, round.test_end);
    const std::size_t qv = *extended.pr_vertex(pr.pr_id);
    out.result.audited_edges +=
        audit_time_hygiene(extended, round.test_start, qv);

    const QueryVector y = make_query_vector(extended, pr.pr_id);
    const RankingResult ranking =
        solve_fixed_point(extended.adjacency(), y.y, cfg.mu, opts.solver);
    Recommendation rec =
        score_candidates(extended, ranking.f_star, cfg.role_weights, creator);
    if (rec.ranked.size() > opts.top_n) rec.ranked.resize(opts.top_n);

    std::vector<DeveloperId> ranked;
    ranked.reserve(rec.ranked.size());
    for (const auto& c : rec.ranked) ranked.push_back(c.dev);
    out.tally.add(ranked, actual);
  }
  out.result.metrics = out.tally.mean();
  return out;
}

nlohmann::json metrics_json(const Metrics& m) {
  nlohmann::json j;
  for (std::size_t k : kMetricCutoffs) {
    j["acc@" + std::to_string(k)] = m.acc.at(k);
    j["mrr@" + std::to_string(k)] = m.mrr.at(k);
  }
  j["n_test_prs"] = m.n_test_prs;
  return j;
}

}  // namespace

Timestamp month_floor(Timestamp t) { return start_of(month_of(t)); }

Timestamp add_months(Timestamp month_start, int n) {
  return start_of(month_of(month_start) + std::chrono::months{n});
}

std::string month_label(Timestamp t) {
  const year_month ym = month_of(t);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(ym.year()),
                static_cast<unsigned>(ym.month()));
  return buf;
}

std::vector<EvalRound> make_rounds(const EventLog& log, std::size_t n_rounds) {
  const year_month first = month_of(log.t_start);
  const year_month last = month_of(log.t_end);
  const int covered = months_between(first, last) + 1;
  const int available = covered - kTrainMonths;
  if (available < 1) {
    fail(ErrorCode::InsufficientSpan,
         "log covers " + std::to_string(covered) +
             " calendar month(s); at least " + std::to_string(kTrainMonths + 1) +
             " are needed");
  }
  const std::size_t n =
      std::min(n_rounds, static_cast<std::size_t>(available));
  std::vector<EvalRound> rounds;
  rounds.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const int i = static_cast<int>(r);
    EvalRound round;
    round.index = r;
    round.train_start = start_of(first + std::chrono::months{i});
    round.train_end = start_of(first + std::chrono::months{i + kTrainMonths});
    round.test_start = round.train_end;
    round.test_end = start_of(first + std::chrono::months{i + kTrainMonths + 1});
    rounds.push_back(round);
  }
  return rounds;
}

int acc_at_k(std::span<const DeveloperId> ranked,
             const std::set<DeveloperId>& actual, std::size_t k) {
  const std::size_t n = std::min(k, ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (actual.contains(ranked[i])) return 1;
  }
  return 0;
}

double mrr_at_k(std::span<const DeveloperId> ranked,
                const std::set<DeveloperId>& actual, std::size_t k) {
  const std::size_t n = std::min(k, ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (actual.contains(ranked[i])) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

EventLog training_slice(const EventLog& log, const EvalRound& round) {
  EventLog train;
  train.project = log.project;
  train.t_start = round.train_start;
  train.t_end = round.train_end;
  const Timestamp cut = round.train_end;
  for (const auto& pr : log.prs) {
    if (pr.created_at < round.train_start || pr.created_at >= cut) continue;
    PullRequest p = pr;
    std::erase_if(p.commits, [&](const CommitEvent& e) { return e.timestamp >= cut; });
    std::erase_if(p.reviews, [&](const ReviewEvent& e) { return e.timestamp >= cut; });
    std::erase_if(p.comments, [&](const CommentEvent& e) { return e.timestamp >= cut; });
    if (p.merged_at && *p.merged_at >= cut) p.merged_at.reset();
    train.prs.push_back(std::move(p));
  }
  return train;
}

std::size_t audit_time_hygiene(const IncidenceSystem& system,
                               Timestamp test_start,
                               std::optional<std::size_t> query_vertex) {
  std::size_t checked = 0;
  for (const auto& e : system.edges()) {
    ++checked;
    const bool touches_query =
        query_vertex && std::binary_search(e.members.begin(), e.members.end(),
                                           *query_vertex);
    if (touches_query) {
      if (e.kind == EdgeKind::PrReviewers || e.kind == EdgeKind::PrIssueCommenters ||
          e.kind == EdgeKind::PrReviewCommenters) {
        fail(ErrorCode::TimeHygieneViolation,
             "query PR contributed a " + std::string(edge_kind_name(e.kind)) +
                 " edge");
      }
      continue;
    }
    if (e.latest_event >= test_start) {
      fail(ErrorCode::TimeHygieneViolation,
           "edge " + std::to_string(e.edge_id) + " (" +
               std::string(edge_kind_name(e.kind)) + ") uses an event at " +
               std::to_string(e.latest_event) + ", not before the test month");
    }
  }
  return checked;
}

EvalReport run_evaluation(const EventLog& log, const IdentityMap& ids,
                          const HyperparamConfig& cfg, const RelationMask& mask,
                          std::span<const EvalRound> rounds,
                          const EvalOptions& opts) {
  cfg.validate();
  mask.validate();
  require(opts.top_n > 0, ErrorCode::InvalidConfig, "top_n must be > 0");

  std::vector<RoundOutput> outputs(rounds.size());
  detail::parallel_for(rounds.size(), std::max<std::size_t>(1, opts.jobs),
                       [&](std::size_t i) {
                         outputs[i] = run_round(log, ids, cfg, mask, rounds[i], opts);
                       });

  EvalReport report;
  report.mask = mask;
  Tally micro;
  std::map<std::size_t, double> acc_sum, mrr_sum;
  for (auto& out : outputs) {
    report.audited_edges += out.result.audited_edges;
    if (out.tally.n == 0) {
      report.skipped_rounds.push_back(out.result.round);
      continue;
    }
    for (std::size_t k : kMetricCutoffs) {
      acc_sum[k] += out.result.metrics.acc[k];
      mrr_sum[k] += out.result.metrics.mrr[k];
      micro.acc_sum[k] += out.tally.acc_sum[k];
      micro.mrr_sum[k] += out.tally.mrr_sum[k];
    }
    micro.n += out.tally.n;
    report.rounds.push_back(std::move(out.result));
  }
  const double n_rounds = static_cast<double>(report.rounds.size());
  report.macro.n_test_prs = micro.n;
  for (std::size_t k : kMetricCutoffs) {
    report.macro.acc[k] = report.rounds.empty() ? 0.0 : acc_sum[k] / n_rounds;
    report.macro.mrr[k] = report.rounds.empty() ? 0.0 : mrr_sum[k] / n_rounds;
  }
  report.micro = micro.mean();
  return report;
}

std::string EvalReport::to_csv(bool mask_column) const {
  std::ostringstream out;
  out << "round,test_month,k,acc,mrr,n_test_prs";
  if (mask_column) out << ",mask";
  out << '\n';
  const std::string label = mask.label();
  for (const auto& r : rounds) {
    for (std::size_t k : kMetricCutoffs) {
      out << r.round.index << ',' << month_label(r.round.test_start) << ',' << k
          << ',' << fixed6(r.metrics.acc.at(k)) << ','
          << fixed6(r.metrics.mrr.at(k)) << ',' << r.metrics.n_test_prs;
      if (mask_column) out << ',' << label;
      out << '\n';
    }
  }
  return out.str();
}

std::string EvalReport::summary_json() const {
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& r : skipped_rounds) {
    skipped.push_back({{"round", r.index}, {"test_month", month_label(r.test_start)}});
  }
  std::size_t no_creator = 0, no_reviewers = 0;
  for (const auto& r : rounds) {
    no_creator += r.skipped_unresolved_creator;
    no_reviewers += r.skipped_no_reviewers;
  }
  nlohmann::json j = {
      {"mask", mask.label()},
      {"rounds_evaluated", rounds.size()},
      {"rounds_skipped", std::move(skipped)},
      {"macro", metrics_json(macro)},
      {"micro", metrics_json(micro)},
      {"skipped_unresolved_creator", no_creator},
      {"skipped_no_reviewers", no_reviewers},
      {"time_hygiene", {{"audited_edges", audited_edges}, {"violations", 0}}},
  };
  return j.dump(2);
}

}  // namespace mirrec
