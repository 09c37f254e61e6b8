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

// Sliding-window evaluation: train on 12 calendar months, test on the next
// one, slide by a month. ACC@k and MRR@k for k in {1, 3, 5}.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mirrec/events.hpp"
#include "mirrec/hypergraph.hpp"
#include "mirrec/identity.hpp"
#include "mirrec/ranker.hpp"

namespace mirrec {

inline constexpr std::array<std::size_t, 3> kMetricCutoffs = {1, 3, 5};
inline constexpr int kTrainMonths = 12;

// First second of the UTC calendar month containing t.
Timestamp month_floor(Timestamp t);
// Month start shifted by n calendar months.
Timestamp add_months(Timestamp month_start, int n);
// "YYYY-MM" of the month containing t.
std::string month_label(Timestamp t);

struct EvalRound {
  std::size_t index = 0;
  Timestamp train_start = 0;
  Timestamp train_end = 0;  // == test_start
  Timestamp test_start = 0;
  Timestamp test_end = 0;
};

// Rounds slide by one month from the month containing log.t_start; the last
// usable month is the one containing log.t_end. InsufficientSpan when fewer
// than 13 months are covered.
std::vector<EvalRound> make_rounds(const EventLog& log, std::size_t n_rounds);

int acc_at_k(std::span<const DeveloperId> ranked,
             const std::set<DeveloperId>& actual, std::size_t k);
double mrr_at_k(std::span<const DeveloperId> ranked,
                const std::set<DeveloperId>& actual, std::size_t k);

struct Metrics {
  std::map<std::size_t, double> acc;
  std::map<std::size_t, double> mrr;
  std::size_t n_test_prs = 0;
};

struct RoundResult {
  EvalRound round;
  Metrics metrics;
  std::size_t train_prs = 0;
  std::size_t skipped_unresolved_creator = 0;
  std::size_t skipped_no_reviewers = 0;
  // Edges checked by the time-hygiene audit (training plus query edges).
  std::size_t audited_edges = 0;
};

struct EvalOptions {
  std::size_t top_n = 5;
  SolverOptions solver;
  std::size_t jobs = 1;
};

struct EvalReport {
  RelationMask mask;
  std::vector<RoundResult> rounds;  // rounds with at least one test PR
  std::vector<EvalRound> skipped_rounds;
  // Mean over rounds of the per-round means.
  Metrics macro;
  // Mean over every test PR of every round.
  Metrics micro;
  std::size_t audited_edges = 0;

  // round,test_month,k,acc,mrr,n_test_prs[,mask]
  std::string to_csv(bool mask_column) const;
  std::string summary_json() const;
};

// Training view of one round: PRs created in [train_start, train_end) with
// only their events strictly before train_end, window [train_start, train_end].
EventLog training_slice(const EventLog& log, const EvalRound& round);

// Throws TimeHygieneViolation if any edge not belonging to `query_vertex`
// was fed by an event at or after test_start, or if a query edge used reviews
// or comments. Returns the number of edges checked.
std::size_t audit_time_hygiene(const IncidenceSystem& system,
                               Timestamp test_start,
                               std::optional<std::size_t> query_vertex = {});

// Expects a preprocessed log. Training systems are shared read-only across the
// test PRs of a round; each query gets its own extended copy.
EvalReport run_evaluation(const EventLog& log, const IdentityMap& ids,
                          const HyperparamConfig& cfg, const RelationMask& mask,
                          std::span<const EvalRound> rounds,
                          const EvalOptions& opts = {});

}  // namespace mirrec
