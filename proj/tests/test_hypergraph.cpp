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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "mirrec/error.hpp"
#include "mirrec/hypergraph.hpp"
#include "mirrec/identity.hpp"
#include "mirrec/preprocess.hpp"
#include "mirrec/testkit.hpp"

using namespace mirrec;
using namespace mirrec::test;

namespace {

constexpr double kTol = 1e-12;
// 1/(1+e) and e^-1, written out.
constexpr double kInvOnePlusE = 0.2689414213699951;
constexpr double kInvE = 0.36787944117144233;

DeveloperId dev(const char* s) { return DeveloperId{s}; }

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

EventLog shifted(EventLog log, Timestamp offset, Timestamp scale) {
  auto f = [&](Timestamp t) { return t * scale + offset; };
  log.t_start = f(log.t_start);
  log.t_end = f(log.t_end);
  for (auto& p : log.prs) {
    p.created_at = f(p.created_at);
    if (p.merged_at) p.merged_at = f(*p.merged_at);
    for (auto& c : p.commits) c.timestamp = f(c.timestamp);
    for (auto& r : p.reviews) r.timestamp = f(r.timestamp);
    for (auto& c : p.comments) c.timestamp = f(c.timestamp);
  }
  return log;
}

EventLog small_synthetic(std::uint64_t seed) {
  SynthParams sp;
  sp.seed = seed;
  sp.n_prs = 40;
  sp.n_devs = 8;
  sp.n_subtrees = 4;
  sp.months = 3;
  sp.reviewer_affinity = 0.7;
  sp.expert_commits = true;
  return generate_log(sp);
}

std::set<std::pair<EdgeKind, std::vector<Vertex>>> edge_set(const IncidenceSystem& s) {
  std::set<std::pair<EdgeKind, std::vector<Vertex>>> out;
  for (const auto& e : s.edges()) {
    std::vector<Vertex> members;
    for (auto m : e.members) members.push_back(s.vertices()[m]);
    std::sort(members.begin(), members.end());
    out.insert({e.kind, members});
  }
  return out;
}

}  // namespace

TEST_SUITE("hypergraph") {

TEST_CASE("creator weight") {
  CHECK(creator_weight(100, 0, 100) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(creator_weight(0, 0, 100) == 0.0);
  CHECK(std::abs(creator_weight(25, 0, 100) - 0.25) < kTol);
  CHECK(code_of([] { creator_weight(5, 10, 10); }) == ErrorCode::DegenerateWindow);
  CHECK(code_of([] { creator_weight(101, 0, 100); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("committer weight") {
  const DeveloperId a = dev("a");
  CHECK(std::abs(committer_edge_weight({{a, {{100, 0}}}}, 0, 100, 0.8) - 0.5) < kTol);
  CHECK(std::abs(committer_edge_weight({{a, {{100, 100}}}}, 0, 100, 0.8) - kInvOnePlusE) < kTol);
  CHECK(std::abs(committer_edge_weight({{a, {{100, 0}, {100, 0}}}}, 0, 100, 0.8) - 0.9) < kTol);
  // The size factor applies per commit, not to the summed line count.
  const double per_commit = 1.0 / (1.0 + std::exp(0.5)) + 0.8 / (1.0 + std::exp(0.5));
  CHECK(std::abs(committer_edge_weight({{a, {{100, 50}, {100, 50}}}}, 0, 100, 0.8) -
                 per_commit) < kTol);
  CHECK(code_of([&] { committer_edge_weight({{a, {{60, 0}, {50, 0}}}}, 0, 100, 0.8); }) ==
        ErrorCode::PreconditionViolation);
}

TEST_CASE("reviewer weight") {
  const DeveloperId a = dev("a");
  CHECK(std::abs(reviewer_edge_weight({{a, {100}}}, 0, 100, 0.8) - 1.0) < kTol);
  CHECK(std::abs(reviewer_edge_weight({{a, {0}}}, 0, 100, 0.8) - kInvE) < kTol);
  CHECK(std::abs(reviewer_edge_weight({{a, {100, 100}}}, 0, 100, 0.8) - 1.8) < kTol);
  // Attenuation restarts for each developer.
  CHECK(std::abs(reviewer_edge_weight({{a, {100}}, {dev("b"), {100}}}, 0, 100, 0.8) - 2.0) < kTol);
}

TEST_CASE("commenter weight") {
  const DeveloperId a = dev("a");
  CHECK(std::abs(commenter_edge_weight({{a, {100}}}, 0, 100, 0.8) - 1.0) < kTol);
  CHECK(std::abs(commenter_edge_weight({{a, {0}}}, 0, 100, 0.8) - kInvE) < kTol);
  CHECK(std::abs(commenter_edge_weight({{a, {100, 100, 100}}}, 0, 100, 0.5) - 1.75) < kTol);
}

TEST_CASE("file path similarity") {
  CHECK(std::abs(file_path_similarity("a/b/c.txt", "a/b/d.txt") - 2.0 / 3.0) < kTol);
  CHECK(file_path_similarity("a/b/c.txt", "a/b/c.txt") == 1.0);
  CHECK(file_path_similarity("x/y.c", "a/b.c") == 0.0);
  CHECK(std::abs(file_path_similarity("a/b", "a/b/c/d") - 0.5) < kTol);
}

TEST_CASE("PR similarity") {
  const PullRequest empty = pr("e", 10, "x", {});
  const PullRequest one = pr("1", 10, "x", {"a/b/c"});
  PullRequest same = pr("2", 10, "y", {"a/b/c"});
  CHECK(pr_similarity(empty, one, 0, 100) == 0.0);
  CHECK(pr_similarity(one, empty, 0, 100) == 0.0);
  CHECK(std::abs(pr_similarity(one, same, 0, 100) - 1.0) < kTol);
  const PullRequest early = pr("3", 0, "y", {"a/b/c"});
  const PullRequest late = pr("4", 100, "y", {"a/b/c"});
  CHECK(std::abs(pr_similarity(early, late, 0, 100) - kInvE) < kTol);

  // Mean over every cross pair.
  const PullRequest two = pr("5", 10, "x", {"a/b/c", "q/r"});
  CHECK(std::abs(pr_similarity(two, one, 0, 100) - 0.5) < kTol);
  CHECK(pr_similarity(two, one, 0, 100) == pr_similarity(one, two, 0, 100));
}

TEST_CASE("top-k similar PR selection") {
  const PullRequest target = pr("t", 50, "x", {"a/b/c"});
  std::vector<PullRequest> three = {pr("1", 40, "x", {"a/b/c"}), pr("2", 40, "x", {"a/q"}),
                                    pr("3", 40, "x", {"a/b/z"}), pr("4", 40, "x", {"z/z"})};
  CHECK(select_similar_prs(target, three, 10, 0, 100).size() == 3);
  CHECK(select_similar_prs(target, three, 2, 0, 100).size() == 2);
  CHECK(select_similar_prs(target, three, 0, 0, 100).empty());

  // Equal similarity (same gap to the target), different creation times.
  std::vector<PullRequest> tie = {pr("old", 40, "x", {"a/b/c"}), pr("new", 60, "x", {"a/b/c"})};
  const auto picked = select_similar_prs(target, tie, 10, 0, 100);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0].weight == picked[1].weight);
  CHECK(picked[0].pr_id == "new");

  std::vector<PullRequest> none = {pr("1", 40, "x", {"q/r"}), pr("2", 40, "x", {})};
  CHECK(select_similar_prs(target, none, 10, 0, 100).empty());
}

TEST_CASE("one PR gives two edges over three vertices") {
  PullRequest p = pr("1", 50, "alice");
  review(p, "bob", 60);
  const EventLog log = log_of({p}, 0, 100);
  const IncidenceSystem s = build_hypergraph(log, build_identity_map(log), {});
  CHECK(s.num_vertices() == 3);
  CHECK(s.num_edges() == 2);
  CHECK(s.pr_vertex("1").has_value());
  CHECK(s.dev_vertex(dev("alice"), Role::Creator).has_value());
  CHECK(s.dev_vertex(dev("bob"), Role::Reviewer).has_value());
}

TEST_CASE("identical-file PRs are linked") {
  PullRequest a = pr("1", 40, "alice", {"a/b/c"});
  PullRequest b = pr("2", 60, "carol", {"a/b/c"});
  review(a, "bob", 45);
  review(b, "bob", 65);
  const EventLog log = log_of({a, b}, 0, 100);
  const IncidenceSystem s = build_hypergraph(log, build_identity_map(log), {});
  std::size_t prpr = 0;
  for (const auto& e : s.edges()) prpr += e.kind == EdgeKind::PrPr;
  CHECK(prpr == 1);
  HyperparamConfig no_k;
  no_k.top_k_similar = 0;
  const IncidenceSystem s0 = build_hypergraph(log, build_identity_map(log), no_k);
  for (const auto& e : s0.edges()) CHECK(e.kind != EdgeKind::PrPr);
}

TEST_CASE("edge structure is validated") {
  HypergraphBuilder b(0, 10);
  const auto p = b.add_vertex(PrVertex{"p"});
  const auto q = b.add_vertex(PrVertex{"q"});
  const auto r = b.add_vertex(DevVertex{dev("r"), Role::Reviewer});
  CHECK(code_of([&] { b.add_edge(EdgeKind::PrPr, {p}, 1.0, 0); }) == ErrorCode::Internal);
  CHECK(code_of([&] { b.add_edge(EdgeKind::PrPr, {p, r}, 1.0, 0); }) == ErrorCode::Internal);
  CHECK(code_of([&] { b.add_edge(EdgeKind::PrCommitters, {p, r}, 1.0, 0); }) ==
        ErrorCode::Internal);
  CHECK(code_of([&] { b.add_edge(EdgeKind::PrReviewers, {p, q, r}, 1.0, 0); }) ==
        ErrorCode::Internal);
  CHECK(code_of([&] { b.add_edge(EdgeKind::PrReviewers, {p, r}, -1.0, 0); }) ==
        ErrorCode::Internal);
  CHECK(b.add_vertex(PrVertex{"p"}) == p);
  CHECK(code_of([&] { b.add_edge(EdgeKind::PrReviewers, {p, r, r}, 1.0, 0); }) == ErrorCode::Ok);
}

TEST_CASE("adjacency matches a dense reconstruction") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const IncidenceSystem s = random_incidence_system(seed);
    const std::size_t n = s.num_vertices();
    const auto& H = s.incidence();
    const auto w = s.edge_weights();
    const auto de = s.edge_degrees();
    const auto dv = s.vertex_degrees();
    for (std::size_t u = 0; u < n; ++u) {
      // d(v) = sum_e h(v,e) w(e)
      double du = 0.0;
      for (std::size_t e = 0; e < s.num_edges(); ++e) du += H.at(u, e) * w[e];
      CHECK(std::abs(du - dv[u]) < kTol);
      for (std::size_t v = 0; v < n; ++v) {
        double expect = 0.0;
        if (dv[u] > 0 && dv[v] > 0) {
          for (std::size_t e = 0; e < s.num_edges(); ++e) {
            expect += H.at(u, e) * w[e] / de[e] * H.at(v, e);
          }
          expect /= std::sqrt(dv[u]) * std::sqrt(dv[v]);
        }
        CHECK(std::abs(s.adjacency().at(u, v) - expect) < kTol);
        CHECK(s.adjacency().at(u, v) == s.adjacency().at(v, u));
        CHECK(s.adjacency().at(u, v) >= 0.0);
      }
    }
    // A sqrt(d) = sqrt(d): the similarity transform of A is row-stochastic.
    std::vector<double> root(n), out(n);
    for (std::size_t v = 0; v < n; ++v) root[v] = std::sqrt(dv[v]);
    s.adjacency().multiply(root, out);
    for (std::size_t v = 0; v < n; ++v) CHECK(std::abs(out[v] - root[v]) < 1e-12);
  }
}

TEST_CASE("row sums of A can exceed one") {
  // v sits in two unit-weight edges {v,a} and {v,b}: row v sums to 2/sqrt(2).
  HypergraphBuilder b(0, 10);
  const auto v = b.add_vertex(PrVertex{"v"});
  const auto a = b.add_vertex(PrVertex{"a"});
  const auto c = b.add_vertex(PrVertex{"b"});
  b.add_edge(EdgeKind::PrPr, {v, a}, 1.0, 0);
  b.add_edge(EdgeKind::PrPr, {v, c}, 1.0, 0);
  const IncidenceSystem s = b.assemble();
  const double row = s.adjacency().at(v, v) + s.adjacency().at(v, a) + s.adjacency().at(v, c);
  CHECK(std::abs(row - (0.5 + 1.0 / std::sqrt(2.0))) < kTol);
  CHECK(row > 1.0);
}

TEST_CASE("weights are invariant under time translation and scaling") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const EventLog base = small_synthetic(seed);
    const IdentityMap ids = build_identity_map(base);
    const IncidenceSystem s0 = build_hypergraph(base, ids, {});
    for (auto [offset, scale] : {std::pair<Timestamp, Timestamp>{86400 * 365, 1},
                                 std::pair<Timestamp, Timestamp>{0, 3},
                                 std::pair<Timestamp, Timestamp>{-1000000, 7}}) {
      const IncidenceSystem s1 = build_hypergraph(shifted(base, offset, scale), ids, {});
      REQUIRE(s0.num_edges() == s1.num_edges());
      REQUIRE(s0.num_vertices() == s1.num_vertices());
      for (std::size_t e = 0; e < s0.num_edges(); ++e) {
        CHECK(s0.edges()[e].members == s1.edges()[e].members);
        CHECK(std::abs(s0.edges()[e].weight - s1.edges()[e].weight) < kTol);
      }
    }
  }
}

TEST_CASE("masks never add vertices or edges") {
  const EventLog log = small_synthetic(3);
  const IdentityMap ids = build_identity_map(log);
  const IncidenceSystem full = build_hypergraph(log, ids, {});
  const auto full_edges = edge_set(full);
  const std::set<Vertex> full_vertices(full.vertices().begin(), full.vertices().end());
  for (int bits = 0; bits < 64; ++bits) {
    RelationMask m;
    m.include_re = bits & 1;
    m.include_ct = bits & 2;
    m.include_ic = bits & 4;
    m.include_rc = bits & 8;
    m.include_creator = bits & 16;
    m.include_prpr = bits & 32;
    if (!(m.include_re || m.include_ct || m.include_ic || m.include_rc || m.include_creator ||
          m.include_prpr)) {
      CHECK_THROWS(m.validate());
      continue;
    }
    const IncidenceSystem s = build_hypergraph(log, ids, {}, m);
    CHECK(s.num_vertices() <= full.num_vertices());
    CHECK(s.num_edges() <= full.num_edges());
    for (const auto& v : s.vertices()) CHECK(full_vertices.contains(v));
    for (const auto& e : edge_set(s)) {
      CHECK(full_edges.contains(e));
      CHECK(m.includes(e.first));
    }
  }
}

TEST_CASE("mask labels") {
  RelationMask m;
  CHECK(m.is_full());
  m.include_rc = false;
  CHECK(m.label() == "re_ct_ic");
  RelationMask re_only;
  re_only.include_ct = re_only.include_ic = re_only.include_rc = false;
  CHECK(re_only.label() == "re");
}

TEST_CASE("parallel construction is identical to serial") {
  const EventLog log = small_synthetic(9);
  const IdentityMap ids = build_identity_map(log);
  const IncidenceSystem a = build_hypergraph(log, ids, {}, {}, 1);
  const IncidenceSystem b = build_hypergraph(log, ids, {}, {}, 4);
  CHECK(a.to_json() == b.to_json());
  const auto va = a.adjacency().values();
  const auto vb = b.adjacency().values();
  CHECK(std::equal(va.begin(), va.end(), vb.begin(), vb.end()));
}

TEST_CASE("dev vertices are split by role") {
  PullRequest a = pr("1", 40, "alice");
  review(a, "bob", 45);
  PullRequest b = pr("2", 60, "bob");
  review(b, "alice", 65);
  commit(b, "bob", 61);
  const EventLog log = log_of({a, b}, 0, 100);
  const IncidenceSystem s = build_hypergraph(log, build_identity_map(log), {});
  const auto& roles = s.developer_roles().at(dev("bob"));
  CHECK(roles[static_cast<std::size_t>(Role::Reviewer)].has_value());
  CHECK(roles[static_cast<std::size_t>(Role::Creator)].has_value());
  CHECK(roles[static_cast<std::size_t>(Role::Committer)].has_value());
  CHECK(*roles[static_cast<std::size_t>(Role::Reviewer)] !=
        *roles[static_cast<std::size_t>(Role::Creator)]);
}

}  // TEST_SUITE
