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

#include "mirrec/preprocess.hpp"

#include <algorithm>

#include <json.hpp>

#include "mirrec/error.hpp"

namespace mirrec {

namespace {

bool all_invalid(const IdentityMap& ids, const RawActor& actor) {
  for (const auto& id : ids.resolve_all(actor)) {
    if (id != kInvalidDeveloper) return false;
  }
  return true;
}

// Removes elements matching `drop` and returns how many went away.
template <typename T, typename Pred>
std::size_t erase_counted(std::vector<T>& v, Pred drop) {
  return static_cast<std::size_t>(std::erase_if(v, drop));
}

template <typename Fn>
std::size_t erase_all_events(PullRequest& pr, Fn drop_actor) {
  std::size_t n = 0;
  n += erase_counted(pr.commits,
                     [&](const CommitEvent& c) { return drop_actor(c.author); });
  n += erase_counted(pr.reviews, [&](const ReviewEvent& r) {
    return drop_actor(r.reviewer);
  });
  n += erase_counted(pr.comments, [&](const CommentEvent& c) {
    return drop_actor(c.commenter);
  });
  return n;
}

}  // namespace

void FilterConfig::validate() const {
  require(bulk_commit_threshold >= 1, ErrorCode::InvalidConfig,
          "bulk_commit_threshold must be >= 1");
}

std::size_t count_events(const PullRequest& pr) {
  return pr.commits.size() + pr.reviews.size() + pr.comments.size();
}

std::size_t count_events(const EventLog& log) {
  std::size_t n = 0;
  for (const auto& pr : log.prs) n += count_events(pr);
  return n;
}

std::string FilterReport::to_json() const {
  nlohmann::json j = {
      {"input_prs", input_prs},
      {"output_prs", output_prs},
      {"input_events", input_events},
      {"output_events", output_events},
      {"removed",
       {{"bot_events", bot_events},
        {"invalid_actor_events", invalid_actor_events},
        {"self_reviews", self_reviews},
        {"bulk_commits", bulk_commits},
        {"post_merge_events", post_merge_events},
        {"events_in_dropped_prs", events_in_dropped_prs}}},
      {"events_clamped", events_clamped},
      {"prs_dropped",
       {{"without_files", prs_without_files},
        {"without_reviews", prs_without_reviews}}},
  };
  return j.dump(2);
}

std::pair<EventLog, FilterReport> apply_filters(const EventLog& log,
                                                const IdentityMap& ids,
                                                const FilterConfig& cfg) {
  cfg.validate();
  FilterReport report;
  report.input_prs = log.prs.size();
  report.input_events = count_events(log);

  EventLog out;
  out.project = log.project;
  out.t_start = log.t_start;
  out.t_end = log.t_end;

  for (const auto& source : log.prs) {
    PullRequest pr = source;

    if (cfg.drop_bots) {
      report.bot_events += erase_all_events(
          pr, [](const RawActor& a) { return a.type == ActorType::Bot; });
    }
    if (cfg.drop_unresolved) {
      report.invalid_actor_events += erase_all_events(
          pr, [&](const RawActor& a) { return all_invalid(ids, a); });
    }
    if (cfg.drop_self_reviews) {
      const DeveloperId creator = ids.resolve(pr.creator);
      report.self_reviews += erase_counted(pr.reviews, [&](const ReviewEvent& r) {
        return ids.resolve(r.reviewer) == creator;
      });
    }
    report.bulk_commits += erase_counted(pr.commits, [&](const CommitEvent& c) {
      return c.files.size() >= cfg.bulk_commit_threshold;
    });
    if (cfg.truncate_post_merge && pr.merged_at) {
      const Timestamp merged = *pr.merged_at;
      report.post_merge_events +=
          erase_counted(pr.commits,
                        [&](const CommitEvent& c) { return c.timestamp > merged; }) +
          erase_counted(pr.reviews,
                        [&](const ReviewEvent& r) { return r.timestamp > merged; }) +
          erase_counted(pr.comments, [&](const CommentEvent& c) {
            return c.timestamp > merged;
          });
    }

    auto clamp = [&](Timestamp& t) {
      if (t < pr.created_at) {
        t = pr.created_at;
        ++report.events_clamped;
      }
    };
    for (auto& c : pr.commits) clamp(c.timestamp);
    for (auto& r : pr.reviews) clamp(r.timestamp);
    for (auto& c : pr.comments) clamp(c.timestamp);

    if (cfg.drop_empty_prs) {
      if (pr.files.empty()) {
        ++report.prs_without_files;
        report.events_in_dropped_prs += count_events(pr);
        continue;
      }
      if (pr.reviews.empty()) {
        ++report.prs_without_reviews;
        report.events_in_dropped_prs += count_events(pr);
        continue;
      }
    }
    out.prs.push_back(std::move(pr));
  }

  report.output_prs = out.prs.size();
  report.output_events = count_events(out);
  return {std::move(out), report};
}

}  // namespace mirrec
