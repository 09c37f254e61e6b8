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

// Application configuration and the end-to-end pipeline commands shared by
// the C API and the command-line tool.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mirrec/eval.hpp"
#include "mirrec/events.hpp"
#include "mirrec/hypergraph.hpp"
#include "mirrec/identity.hpp"
#include "mirrec/preprocess.hpp"
#include "mirrec/ranker.hpp"

namespace mirrec {

std::size_t default_jobs();

struct AppConfig {
  HyperparamConfig hyper;
  FilterConfig filter;
  RelationMask mask;
  SolverOptions solver;
  std::size_t max_distance = 2;
  std::size_t jobs = default_jobs();
  // Recommendation list length.
  std::size_t top_k = 5;
  // Evaluation rounds; 0 runs every available round.
  std::size_t rounds = 0;
  std::string input;
  std::string output;
  std::string identity_overrides;

  void validate() const;

  // Sets one field by its key name (see keys()). InvalidConfig on an unknown
  // key, a malformed value, or a value that breaks validate(); the config is
  // left unchanged on failure.
  void set(std::string_view key, std::string_view value);

  // Flat `key = value` lines; '#' starts a comment, strings may be quoted.
  void load(std::istream& in);
  void load_file(const std::string& path);

  std::string to_json() const;

  static const std::vector<std::string>& keys();
};

struct IngestResult {
  EventLog log;
  FilterReport report;
};

IdentityMap build_identity(const EventLog& log, const AppConfig& cfg);

// identity -> filters.
IngestResult ingest(const EventLog& raw, const AppConfig& cfg);

// Trains on every PR created strictly before the query (events before that
// instant only) and ranks candidates for it. The query keeps only its creator
// and commits; bot and bulk commits are dropped like in ingest.
Recommendation recommend_for(const EventLog& log, const PullRequest& query,
                             const AppConfig& cfg);
// Query taken from the log by id; UnknownPr when absent.
Recommendation recommend_for(const EventLog& log, const std::string& pr_id,
                             const AppConfig& cfg);

// ingest -> rounds -> run_evaluation.
EvalReport evaluate(const EventLog& raw, const AppConfig& cfg);

// ingest -> build_hypergraph.
IncidenceSystem build_graph(const EventLog& raw, const AppConfig& cfg);

}  // namespace mirrec
