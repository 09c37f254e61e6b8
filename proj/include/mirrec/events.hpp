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

// Raw pull-request event log and its JSON-lines interchange format.
//
// One record per line. An optional header record comes first:
//   {"kind":"header","project":str,"t_start":int,"t_end":int}
// followed by PR records:
//   {"kind":"pr","pr_id":str,"created_at":int,"creator":{actor},
//    "merged_at":int|null,"files":[{"path":str,"lines_changed":int}],
//    "commits":[{"author":{actor},"timestamp":int,"files":[...]}],
//    "reviews":[{"reviewer":{actor},"timestamp":int}],
//    "issue_comments":[{"commenter":{actor},"timestamp":int}],
//    "review_comments":[{"commenter":{actor},"timestamp":int}]}
// with {actor} = {"login":str|null,"email":str|null,"name":str|null,
//                 "type":"User"|"Bot"|null}.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mirrec {

// Integer epoch seconds, UTC.
using Timestamp = std::int64_t;

enum class ActorType { User, Bot, Unknown };

struct RawActor {
  std::optional<std::string> login;
  std::optional<std::string> email;
  std::optional<std::string> name;
  ActorType type = ActorType::Unknown;

  // False when every identity attribute is missing or blank.
  bool usable() const;

  friend bool operator==(const RawActor&, const RawActor&) = default;
};

struct FileChange {
  std::string path;
  std::int64_t lines_changed = 0;

  friend bool operator==(const FileChange&, const FileChange&) = default;
};

struct CommitEvent {
  RawActor author;
  Timestamp timestamp = 0;
  std::vector<FileChange> files;

  // Total changed lines across the commit's files.
  std::int64_t lines_changed() const;

  friend bool operator==(const CommitEvent&, const CommitEvent&) = default;
};

struct ReviewEvent {
  RawActor reviewer;
  Timestamp timestamp = 0;

  friend bool operator==(const ReviewEvent&, const ReviewEvent&) = default;
};

enum class CommentKind { Issue, ReviewComment };

struct CommentEvent {
  RawActor commenter;
  Timestamp timestamp = 0;
  CommentKind kind = CommentKind::Issue;

  friend bool operator==(const CommentEvent&, const CommentEvent&) = default;
};

struct PullRequest {
  std::string pr_id;
  Timestamp created_at = 0;
  RawActor creator;
  std::optional<Timestamp> merged_at;
  std::vector<FileChange> files;
  std::vector<CommitEvent> commits;
  std::vector<ReviewEvent> reviews;
  // Issue comments precede review comments; the serializer relies on it.
  std::vector<CommentEvent> comments;

  friend bool operator==(const PullRequest&, const PullRequest&) = default;
};

struct EventLog {
  std::string project;
  Timestamp t_start = 0;
  Timestamp t_end = 0;
  std::vector<PullRequest> prs;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

// Total order on PRs: created_at, then pr_id.
bool pr_order_less(const PullRequest& a, const PullRequest& b);

// Sorts prs and brings comments into serialized order (issue before review).
void normalize_event_log(EventLog& log);

// Throws PreconditionViolation when ordering, uniqueness, or time bounds are
// broken.
void validate_event_log(const EventLog& log);

EventLog parse_event_log(std::istream& stream, const std::string& project);
EventLog read_event_log_file(const std::string& path,
                             const std::string& project = {});

// Parses a single PR record (the "pr" line schema, "kind" optional).
PullRequest parse_pull_request_json(const std::string& text);

void write_event_log(const EventLog& log, std::ostream& sink);
void write_event_log_file(const EventLog& log, const std::string& path);

}  // namespace mirrec
