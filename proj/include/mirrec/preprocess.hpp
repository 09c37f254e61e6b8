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

#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "mirrec/events.hpp"
#include "mirrec/identity.hpp"

namespace mirrec {

struct FilterConfig {
  std::size_t bulk_commit_threshold = 100;
  bool drop_bots = true;
  bool drop_unresolved = true;
  bool drop_self_reviews = true;
  bool truncate_post_merge = true;
  bool drop_empty_prs = true;

  void validate() const;
};

struct FilterReport {
  std::size_t input_prs = 0;
  std::size_t output_prs = 0;
  std::size_t input_events = 0;
  std::size_t output_events = 0;

  std::size_t bot_events = 0;
  std::size_t invalid_actor_events = 0;
  std::size_t self_reviews = 0;
  std::size_t bulk_commits = 0;
  std::size_t post_merge_events = 0;
  // Events timestamped before their PR's creation get moved up to created_at.
  std::size_t events_clamped = 0;

  std::size_t prs_without_files = 0;
  std::size_t prs_without_reviews = 0;
  // Events that disappeared together with a dropped PR.
  std::size_t events_in_dropped_prs = 0;

  std::size_t events_removed() const {
    return bot_events + invalid_actor_events + self_reviews + bulk_commits +
           post_merge_events + events_in_dropped_prs;
  }
  std::size_t prs_dropped() const {
    return prs_without_files + prs_without_reviews;
  }

  std::string to_json() const;

  friend bool operator==(const FilterReport&, const FilterReport&) = default;
};

// Counts commits, reviews and comments.
std::size_t count_events(const PullRequest& pr);
std::size_t count_events(const EventLog& log);

// Cleaning rules, applied in this order:
//   a. drop events by Bot actors
//   b. drop events whose actor resolves to "invalid"
//   c. drop reviews by the PR's creator
//   d. drop commits touching >= bulk_commit_threshold files
//   e. drop events strictly after merged_at
//   then clamp any remaining event earlier than created_at to created_at
//   f. drop PRs with no files or no surviving review
std::pair<EventLog, FilterReport> apply_filters(const EventLog& log,
                                                const IdentityMap& ids,
                                                const FilterConfig& cfg);

}  // namespace mirrec
