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

// Regularized ranking on the hypergraph and role-weighted reviewer scoring.
//
// The ranking vector solves (I - mu*A) f = y, where y is the one-hot indicator
// of the query PR. It is computed by the fixed-point iteration
//   f <- mu*A*f + y,  starting at f = y,
// which is the Neumann series of (I - mu*A)^-1 and converges for mu < 1 since
// the spectral radius of A is at most 1.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mirrec/hypergraph.hpp"
#include "mirrec/identity.hpp"

namespace mirrec {

struct QueryVector {
  std::vector<double> y;
};

// One-hot over the system's vertices at the query PR. UnknownPr when the PR
// has no vertex.
QueryVector make_query_vector(const IncidenceSystem& system,
                              const std::string& pr_id);

struct SolverOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  // Keep the residual of every iterate (for convergence diagnostics).
  bool record_history = false;
};

struct RankingResult {
  std::vector<double> f_star;
  std::size_t iterations = 0;
  // ||(I - mu*A) f_star - y||_inf
  double residual = 0.0;
  // Per iterate when record_history is set. The Euclidean residual never
  // increases (A is symmetric with spectral radius <= 1); the infinity-norm
  // one can, since rows of A may sum to more than 1.
  std::vector<double> residual_history;
  std::vector<double> residual_history_l2;
};

RankingResult solve_fixed_point(const SparseMatrix& adjacency,
                                std::span<const double> y, double mu,
                                const SolverOptions& opts = {});

RankingResult solve_ranking(const IncidenceSystem& system, const QueryVector& y,
                            double mu, double tol = 1e-9,
                            std::size_t max_iter = 10000);

struct Candidate {
  DeveloperId dev;
  double score = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Recommendation {
  std::string query_pr;
  // Score descending, then developer id ascending.
  std::vector<Candidate> ranked;

  std::string to_json() const;
};

// Scores every developer holding at least one role vertex as
//   a*f[reviewer] + b*f[committer] + c*f[review commenter] + d*f[issue commenter]
// with absent roles contributing 0. The query PR's creator is left out.
Recommendation score_candidates(const IncidenceSystem& system,
                                std::span<const double> f_star,
                                const RoleWeights& weights,
                                const DeveloperId& query_creator);

// Copy of `system` extended with the query PR: its vertex, creator and
// committer edges (reviews and comments are never read), and PR-PR edges to
// its most similar PRs already in the system. Weights are normalized over
// [system.t_start(), window_end].
IncidenceSystem insert_query_pr(const IncidenceSystem& system,
                                const PullRequest& pr, const IdentityMap& ids,
                                const HyperparamConfig& cfg,
                                const RelationMask& mask, Timestamp window_end);

// insert_query_pr -> one-hot query -> solve -> score, truncated to k.
Recommendation recommend(const IncidenceSystem& system, const PullRequest& pr,
                         const IdentityMap& ids, const HyperparamConfig& cfg,
                         const RelationMask& mask, std::size_t k,
                         Timestamp window_end, const SolverOptions& solver = {});

}  // namespace mirrec
