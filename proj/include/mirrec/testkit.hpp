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

// Synthetic logs with a planted reviewer per file subtree, and brute-force
// oracles for the solver and the scorer.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mirrec/events.hpp"
#include "mirrec/hypergraph.hpp"
#include "mirrec/ranker.hpp"

namespace mirrec {

struct SynthParams {
  std::uint64_t seed = 1;
  std::size_t n_devs = 20;
  std::size_t n_prs = 400;
  std::size_t n_subtrees = 10;
  std::size_t months = 14;
  double reviewer_affinity = 1.0;
  // The subtree owner also pushes a commit to every PR of its subtree.
  bool expert_commits = false;
  // Owners do not review PRs created in the first N months (committer-only
  // experts during that phase); those PRs get a uniformly drawn reviewer.
  std::size_t expert_review_delay_months = 0;

  void validate() const;
};

// Window starts 2020-01-01T00:00:00Z (UTC).
inline constexpr Timestamp kSynthEpoch = 1577836800;

// Developer d is "dev<d>" with home subtree d mod n_subtrees; developer s owns
// subtree s. A PR touches files of one subtree ("src/mod<s>/file<j>.cpp"), is
// created by a non-owner (a subtree member when there is one), and is reviewed
// by the owner with probability reviewer_affinity, otherwise by a uniformly
// drawn developer other than the creator. Deterministic for a fixed seed.
EventLog generate_log(const SynthParams& p);

// Dense Gaussian elimination (partial pivoting) of (I - mu*A) f = y.
// Requires at most 2000 vertices; SingularMatrix on a zero pivot.
std::vector<double> dense_oracle_solve(const SparseMatrix& adjacency,
                                       std::span<const double> y, double mu);
std::vector<double> dense_oracle_solve(const IncidenceSystem& system,
                                       std::span<const double> y, double mu);

// Candidate scores by a linear scan over the vertex list.
std::map<DeveloperId, double> brute_force_scores(const IncidenceSystem& system,
                                                 std::span<const double> f_star,
                                                 const RoleWeights& weights,
                                                 const DeveloperId& creator);

// Random structurally valid system: 2..max_vertices vertices, 1..max_edges
// edges, weights in (0, 1].
IncidenceSystem random_incidence_system(std::uint64_t seed,
                                        std::size_t max_vertices = 50,
                                        std::size_t max_edges = 80);

}  // namespace mirrec
