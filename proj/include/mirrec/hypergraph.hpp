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

// Multiplex-relationship hypergraph over PRs and role-split developers.
//
// Vertices are PRs and (developer, role) pairs. Each PR contributes up to
// five interaction hyperedges (creator, committers, reviewers, issue
// commenters, review commenters) plus degree-2 PR-PR edges to its most
// similar PRs. The assembled IncidenceSystem carries the incidence matrix H,
// edge weights W, degrees Dv/De, and the normalized adjacency
//   A = Dv^-1/2 H W De^-1 H^T Dv^-1/2.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "mirrec/events.hpp"
#include "mirrec/identity.hpp"
#include "mirrec/sparse.hpp"

namespace mirrec {

enum class Role : std::uint8_t {
  Creator,
  Committer,
  Reviewer,
  IssueCommenter,
  ReviewCommenter,
};
inline constexpr std::size_t kRoleCount = 5;
inline constexpr std::array<Role, kRoleCount> kAllRoles = {
    Role::Creator, Role::Committer, Role::Reviewer, Role::IssueCommenter,
    Role::ReviewCommenter};

std::string_view role_name(Role role);

struct PrVertex {
  std::string pr_id;
  friend auto operator<=>(const PrVertex&, const PrVertex&) = default;
};

struct DevVertex {
  DeveloperId dev;
  Role role;
  friend auto operator<=>(const DevVertex&, const DevVertex&) = default;
};

using Vertex = std::variant<PrVertex, DevVertex>;

enum class EdgeKind : std::uint8_t {
  PrCreator,
  PrCommitters,
  PrReviewers,
  PrIssueCommenters,
  PrReviewCommenters,
  PrPr,
};

std::string_view edge_kind_name(EdgeKind kind);

// Role carried by the developer members of an interaction edge.
std::optional<Role> edge_role(EdgeKind kind);

struct Hyperedge {
  std::size_t edge_id = 0;
  EdgeKind kind = EdgeKind::PrCreator;
  std::vector<std::size_t> members;  // vertex indices, ascending
  double weight = 0.0;
  // Latest event timestamp that fed the weight (creation time for creator and
  // PR-PR edges).
  Timestamp latest_event = 0;
};

// Role coefficients of the final candidate score.
struct RoleWeights {
  double reviewer = 4.0;
  double committer = 3.0;
  double review_commenter = 1.0;
  double issue_commenter = 1.0;

  friend bool operator==(const RoleWeights&, const RoleWeights&) = default;
};

struct HyperparamConfig {
  double alpha = 0.8;
  std::size_t top_k_similar = 10;
  double mu = 0.9;
  RoleWeights role_weights;

  void validate() const;
};

// Which relation families take part in construction.
struct RelationMask {
  bool include_re = true;
  bool include_ct = true;
  bool include_ic = true;
  bool include_rc = true;
  bool include_creator = true;
  bool include_prpr = true;

  bool includes(EdgeKind kind) const;
  bool is_full() const;
  void validate() const;
  // "re_ct_ic_rc" style label; excluded creator/PR-PR appear as "_nocr" and
  // "_nopp" suffixes.
  std::string label() const;

  friend bool operator==(const RelationMask&, const RelationMask&) = default;
};

// PR metadata kept alongside the graph for similarity search at query time.
// Paths are stored as interned component ids.
struct PrRecord {
  std::string pr_id;
  Timestamp created_at = 0;
  std::vector<std::vector<std::uint32_t>> paths;
};

using ComponentTable = std::unordered_map<std::string, std::uint32_t>;

class IncidenceSystem {
 public:
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const std::vector<PrRecord>& prs() const { return prs_; }

  // H, |V| x |E|, entries 1.
  const SparseMatrix& incidence() const { return incidence_; }
  std::span<const double> edge_weights() const { return edge_weights_; }
  std::span<const double> vertex_degrees() const { return vertex_degrees_; }
  std::span<const double> edge_degrees() const { return edge_degrees_; }
  const SparseMatrix& adjacency() const { return adjacency_; }

  Timestamp t_start() const { return t_start_; }
  Timestamp t_end() const { return t_end_; }

  std::optional<std::size_t> find_vertex(const Vertex& v) const;
  std::optional<std::size_t> pr_vertex(const std::string& pr_id) const;
  std::optional<std::size_t> dev_vertex(const DeveloperId& dev, Role role) const;

  // Every developer with at least one role vertex, with the vertex index per
  // role (indexed by Role).
  const std::map<DeveloperId, std::array<std::optional<std::size_t>, kRoleCount>>&
  developer_roles() const {
    return developer_roles_;
  }

  const ComponentTable& components() const { return *components_; }

  std::string to_json() const;

 private:
  friend class HypergraphBuilder;

  Timestamp t_start_ = 0;
  Timestamp t_end_ = 0;
  std::vector<Vertex> vertices_;
  std::map<Vertex, std::size_t> index_;
  std::vector<Hyperedge> edges_;
  std::vector<PrRecord> prs_;
  std::shared_ptr<const ComponentTable> components_ =
      std::make_shared<const ComponentTable>();

  SparseMatrix incidence_;
  std::vector<double> edge_weights_;
  std::vector<double> vertex_degrees_;
  std::vector<double> edge_degrees_;
  SparseMatrix adjacency_;
  std::map<DeveloperId, std::array<std::optional<std::size_t>, kRoleCount>>
      developer_roles_;
};

// Accumulates vertices and edges, then assembles the matrices. Seeding it from
// an existing system copies that system (copy-on-extend).
class HypergraphBuilder {
 public:
  HypergraphBuilder(Timestamp t_start, Timestamp t_end);
  explicit HypergraphBuilder(const IncidenceSystem& base);

  std::size_t add_vertex(const Vertex& v);
  // Members are deduplicated and sorted. Throws Internal when the member set
  // does not fit the kind (see Hyperedge invariants).
  std::size_t add_edge(EdgeKind kind, std::vector<std::size_t> members,
                       double weight, Timestamp latest_event);
  void add_pr_record(PrRecord record);
  void set_components(std::shared_ptr<const ComponentTable> table);

  bool has_pr(const std::string& pr_id) const;
  const std::vector<PrRecord>& prs() const { return system_.prs_; }
  const ComponentTable& components() const { return *system_.components_; }
  Timestamp t_start() const { return system_.t_start_; }
  Timestamp t_end() const { return system_.t_end_; }

  IncidenceSystem assemble() const;

 private:
  IncidenceSystem system_;
};

// Creator edge: (t_i - t_s) / (t_e - t_s).
double creator_weight(Timestamp t_i, Timestamp t_s, Timestamp t_e);

struct CommitSample {
  Timestamp timestamp;
  std::int64_t lines_changed;
};

// Committer edge: sum over developers and their n-th commit of
// alpha^(n-1) * (t - t_s)/(t_e - t_s) * 1/(1 + e^(0.01 * lines)), the sigmoid
// taken per commit. Each developer's list must be in chronological order.
double committer_edge_weight(
    const std::map<DeveloperId, std::vector<CommitSample>>& commits_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha);

// Reviewer edge: sum over developers and their n-th review of
// alpha^(n-1) * exp((t - t_s)/(t_e - t_s) - 1).
double reviewer_edge_weight(
    const std::map<DeveloperId, std::vector<Timestamp>>& reviews_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha);

// Same form as the reviewer weight; used for both comment kinds.
double commenter_edge_weight(
    const std::map<DeveloperId, std::vector<Timestamp>>& comments_by_dev,
    Timestamp t_s, Timestamp t_e, double alpha);

// Non-empty '/'-separated components.
std::vector<std::string_view> split_path(std::string_view path);

// Shared leading components over the longer component count.
double file_path_similarity(std::string_view f_m, std::string_view f_n);

// Mean pairwise path similarity times exp(-|t_i - t_j| / (t_e - t_s)); 0 when
// either file set is empty.
double pr_similarity(const PullRequest& p_i, const PullRequest& p_j,
                     Timestamp t_s, Timestamp t_e);

struct SimilarPr {
  std::string pr_id;
  double weight;
};

// Top-k candidates by similarity, zero-similarity pairs excluded; ties go to
// the later-created PR, then the smaller pr_id.
std::vector<SimilarPr> select_similar_prs(const PullRequest& target,
                                          std::span<const PullRequest> candidates,
                                          std::size_t k, Timestamp t_s,
                                          Timestamp t_e);

// Interned-path variants used by graph construction and query insertion.
double pr_record_similarity(const PrRecord& a, const PrRecord& b,
                            Timestamp t_s, Timestamp t_e);
std::vector<std::pair<std::size_t, double>> select_similar_records(
    const PrRecord& target, std::span<const PrRecord> candidates,
    std::size_t k, Timestamp t_s, Timestamp t_e);

// Interns path components; components missing from `table` get ids past the
// table's range so they never match an existing component.
PrRecord make_pr_record(const PullRequest& pr, const ComponentTable& table);

// Adds the interaction edges (creator, committers, reviewers, commenters) of
// one PR to the builder, with weights normalized over [t_s, t_e]. Event times
// are clamped into that window. Returns the PR vertex index.
std::size_t add_pr_interactions(HypergraphBuilder& builder, const PullRequest& pr,
                                const IdentityMap& ids,
                                const HyperparamConfig& cfg,
                                const RelationMask& mask,
                                bool include_reviews_and_comments,
                                Timestamp t_s, Timestamp t_e);

// Builds the whole hypergraph for a preprocessed log over [log.t_start,
// log.t_end]. `jobs` threads run the PR-PR similarity search.
IncidenceSystem build_hypergraph(const EventLog& log, const IdentityMap& ids,
                                 const HyperparamConfig& cfg,
                                 const RelationMask& mask = {},
                                 std::size_t jobs = 1);

}  // namespace mirrec
