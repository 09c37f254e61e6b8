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

#include "mirrec/ranker.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mirrec/error.hpp"

namespace mirrec {

QueryVector make_query_vector(const IncidenceSystem& system,
                              const std::string& pr_id) {
  auto v = system.pr_vertex(pr_id);
  if (!v) fail(ErrorCode::UnknownPr, "no vertex for PR \"" + pr_id + "\"");
  QueryVector q;
  q.y.assign(system.num_vertices(), 0.0);
  q.y[*v] = 1.0;
  return q;
}

RankingResult solve_fixed_point(const SparseMatrix& adjacency,
                                std::span<const double> y, double mu,
                                const SolverOptions& opts) {
  if (!(mu >= 0.0 && mu < 1.0)) {
    fail(ErrorCode::MuOutOfRange, "mu must lie in [0, 1)");
  }
  require(opts.tol > 0.0, ErrorCode::InvalidConfig, "solver tol must be > 0");
  require(adjacency.rows() == y.size() && adjacency.cols() == y.size(),
          ErrorCode::Internal, "query vector does not match the adjacency");

  RankingResult result;
  std::vector<double> f(y.begin(), y.end());
  std::vector<double> af(y.size());
  std::vector<double> next(y.size());
  while (true) {
    // next = mu*A*f + y; the residual of f is ||f - next||_inf.
    adjacency.multiply(f, af);
    double residual = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      next[i] = mu * af[i] + y[i];
      const double d = std::abs(f[i] - next[i]);
      residual = std::max(residual, d);
      sq += d * d;
    }
    if (opts.record_history) {
      result.residual_history.push_back(residual);
      result.residual_history_l2.push_back(std::sqrt(sq));
    }
    if (residual <= opts.tol) {
      result.residual = residual;
      break;
    }
    if (result.iterations == opts.max_iter) {
      fail(ErrorCode::NoConvergence,
           "ranking did not converge in " + std::to_string(opts.max_iter) +
               " iterations (residual " + std::to_string(residual) + ")");
    }
    f.swap(next);
    ++result.iterations;
  }
  result.f_star = std::move(f);
  return result;
}

RankingResult solve_ranking(const IncidenceSystem& system, const QueryVector& y,
                            double mu, double tol, std::size_t max_iter) {
  SolverOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solve_fixed_point(system.adjacency(), y.y, mu, opts);
}

std::string Recommendation::to_json() const {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : ranked) {
    candidates.push_back({{"dev", c.dev.canonical}, {"score", c.score}});
  }
  nlohmann::json j = {{"pr_id", query_pr}, {"candidates", std::move(candidates)}};
  return j.dump();
}

Recommendation score_candidates(const IncidenceSystem& system,
                                std::span<const double> f_star,
                                const RoleWeights& weights,
                                const DeveloperId& query_creator) {
  require(f_star.size() == system.num_vertices(), ErrorCode::Internal,
          "ranking vector does not match the system");
  auto role_score = [&](const auto& roles, Role r) {
    const auto& v = roles[static_cast<std::size_t>(r)];
    return v ? f_star[*v] : 0.0;
  };

  Recommendation rec;
  for (const auto& [dev, roles] : system.developer_roles()) {
    if (dev == query_creator) continue;
    const double score =
        weights.reviewer * role_score(roles, Role::Reviewer) +
        weights.committer * role_score(roles, Role::Committer) +
        weights.review_commenter * role_score(roles, Role::ReviewCommenter) +
        weights.issue_commenter * role_score(roles, Role::IssueCommenter);
    rec.ranked.push_back({dev, score});
  }
  std::sort(rec.ranked.begin(), rec.ranked.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.dev < b.dev;
            });
  return rec;
}

IncidenceSystem insert_query_pr(const IncidenceSystem& system,
                                const PullRequest& pr, const IdentityMap& ids,
                                const HyperparamConfig& cfg,
                                const RelationMask& mask, Timestamp window_end) {
  cfg.validate();
  mask.validate();
  if (system.pr_vertex(pr.pr_id)) {
    fail(ErrorCode::DuplicatePr,
         "PR \"" + pr.pr_id + "\" is already part of the hypergraph");
  }
  const Timestamp t_s = system.t_start();
  const Timestamp t_e = window_end;
  if (t_s >= t_e) {
    fail(ErrorCode::DegenerateWindow, "query window is empty");
  }

  HypergraphBuilder builder(system);
  const std::size_t pv =
      add_pr_interactions(builder, pr, ids, cfg, mask, false, t_s, t_e);

  PrRecord record = make_pr_record(pr, system.components());
  if (mask.include_prpr && cfg.top_k_similar > 0) {
    const auto& existing = system.prs();
    for (auto [j, w] : select_similar_records(record, existing,
                                              cfg.top_k_similar, t_s, t_e)) {
      const auto other = system.pr_vertex(existing[j].pr_id);
      require(other.has_value(), ErrorCode::Internal,
              "PR record without a vertex");
      builder.add_edge(EdgeKind::PrPr, {pv, *other}, w,
                       std::max(pr.created_at, existing[j].created_at));
    }
  }
  builder.add_pr_record(std::move(record));
  return builder.assemble();
}

Recommendation recommend(const IncidenceSystem& system, const PullRequest& pr,
                         const IdentityMap& ids, const HyperparamConfig& cfg,
                         const RelationMask& mask, std::size_t k,
                         Timestamp window_end, const SolverOptions& solver) {
  const IncidenceSystem extended =
      insert_query_pr(system, pr, ids, cfg, mask, window_end);
  const QueryVector y = make_query_vector(extended, pr.pr_id);
  const RankingResult ranking =
      solve_fixed_point(extended.adjacency(), y.y, cfg.mu, solver);
  Recommendation rec = score_candidates(extended, ranking.f_star,
                                        cfg.role_weights, ids.resolve(pr.creator));
  rec.query_pr = pr.pr_id;
  if (rec.ranked.size() > k) rec.ranked.resize(k);
  return rec;
}

}  // namespace mirrec
