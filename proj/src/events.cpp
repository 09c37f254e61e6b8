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

#include "mirrec/events.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "mirrec/error.hpp"

namespace mirrec {

using nlohmann::json;

namespace {

bool blank(const std::optional<std::string>& s) {
  return !s || std::all_of(s->begin(), s->end(),
                           [](unsigned char c) { return std::isspace(c); });
}

class RecordReader {
 public:
  explicit RecordReader(std::size_t line_no) : line_no_(line_no) {}

  [[noreturn]] void violation(const std::string& field,
                              const std::string& what) const {
    throw ParseError(ErrorCode::SchemaViolation, line_no_, field,
                     "line " + std::to_string(line_no_) + ": field '" + field +
                         "' " + what);
  }

  const json& member(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) violation(key, "is required");
    return *it;
  }

  std::int64_t integer(const json& obj, const char* key) const {
    const json& v = member(obj, key);
    if (!v.is_number_integer()) violation(key, "must be an integer");
    return v.get<std::int64_t>();
  }

  std::optional<std::int64_t> optional_integer(const json& obj,
                                               const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_integer()) violation(key, "must be an integer or null");
    return it->get<std::int64_t>();
  }

  std::string string(const json& obj, const char* key) const {
    const json& v = member(obj, key);
    if (!v.is_string()) violation(key, "must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_string(const json& obj,
                                             const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) violation(key, "must be a string or null");
    return it->get<std::string>();
  }

  // Missing array members mean "no events of this kind".
  const json* optional_array(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    if (!it->is_array()) violation(key, "must be an array");
    return &*it;
  }

  RawActor actor(const json& obj, const char* key) const {
    const json& v = member(obj, key);
    if (!v.is_object()) violation(key, "must be an actor object");
    RawActor a;
    a.login = optional_string(v, "login");
    a.email = optional_string(v, "email");
    a.name = optional_string(v, "name");
    auto type = optional_string(v, "type");
    if (!type) {
      a.type = ActorType::Unknown;
    } else if (*type == "User") {
      a.type = ActorType::User;
    } else if (*type == "Bot") {
      a.type = ActorType::Bot;
    } else {
      violation("type", "must be \"User\", \"Bot\" or null");
    }
    return a;
  }

  std::vector<FileChange> files(const json& obj) const {
    std::vector<FileChange> out;
    const json* arr = optional_array(obj, "files");
    if (!arr) return out;
    for (const json& f : *arr) {
      if (!f.is_object()) violation("files", "entries must be objects");
      FileChange fc;
      fc.path = string(f, "path");
      if (fc.path.empty()) violation("path", "must be non-empty");
      if (fc.path.front() == '/') violation("path", "must not start with '/'");
      fc.lines_changed = integer(f, "lines_changed");
      if (fc.lines_changed < 0) violation("lines_changed", "must be >= 0");
      out.push_back(std::move(fc));
    }
    return out;
  }

  Timestamp timestamp(const json& obj) const {
    Timestamp t = integer(obj, "timestamp");
    if (t <= 0) violation("timestamp", "must be positive");
    return t;
  }

  void comments(const json& obj, const char* key, CommentKind kind,
                std::vector<CommentEvent>& out) const {
    const json* arr = optional_array(obj, key);
    if (!arr) return;
    for (const json& c : *arr) {
      if (!c.is_object()) violation(key, "entries must be objects");
      out.push_back({actor(c, "commenter"), timestamp(c), kind});
    }
  }

  PullRequest pull_request(const json& obj) const {
    PullRequest pr;
    pr.pr_id = string(obj, "pr_id");
    if (pr.pr_id.empty()) violation("pr_id", "must be non-empty");
    pr.created_at = integer(obj, "created_at");
    pr.creator = actor(obj, "creator");
    pr.merged_at = optional_integer(obj, "merged_at");
    pr.files = files(obj);
    if (const json* arr = optional_array(obj, "commits")) {
      for (const json& c : *arr) {
        if (!c.is_object()) violation("commits", "entries must be objects");
        pr.commits.push_back({actor(c, "author"), timestamp(c), files(c)});
      }
    }
    if (const json* arr = optional_array(obj, "reviews")) {
      for (const json& r : *arr) {
        if (!r.is_object()) violation("reviews", "entries must be objects");
        pr.reviews.push_back({actor(r, "reviewer"), timestamp(r)});
      }
    }
    comments(obj, "issue_comments", CommentKind::Issue, pr.comments);
    comments(obj, "review_comments", CommentKind::ReviewComment, pr.comments);
    return pr;
  }

 private:
  std::size_t line_no_;
};

json actor_json(const RawActor& a) {
  json j;
  j["login"] = a.login ? json(*a.login) : json(nullptr);
  j["email"] = a.email ? json(*a.email) : json(nullptr);
  j["name"] = a.name ? json(*a.name) : json(nullptr);
  switch (a.type) {
    case ActorType::User: j["type"] = "User"; break;
    case ActorType::Bot: j["type"] = "Bot"; break;
    case ActorType::Unknown: j["type"] = nullptr; break;
  }
  return j;
}

json files_json(const std::vector<FileChange>& files) {
  json arr = json::array();
  for (const auto& f : files) {
    arr.push_back({{"path", f.path}, {"lines_changed", f.lines_changed}});
  }
  return arr;
}

json pr_json(const PullRequest& pr) {
  json j;
  j["kind"] = "pr";
  j["pr_id"] = pr.pr_id;
  j["created_at"] = pr.created_at;
  j["creator"] = actor_json(pr.creator);
  j["merged_at"] = pr.merged_at ? json(*pr.merged_at) : json(nullptr);
  j["files"] = files_json(pr.files);
  json commits = json::array();
  for (const auto& c : pr.commits) {
    commits.push_back({{"author", actor_json(c.author)},
                       {"timestamp", c.timestamp},
                       {"files", files_json(c.files)}});
  }
  j["commits"] = std::move(commits);
  json reviews = json::array();
  for (const auto& r : pr.reviews) {
    reviews.push_back(
        {{"reviewer", actor_json(r.reviewer)}, {"timestamp", r.timestamp}});
  }
  j["reviews"] = std::move(reviews);
  json issue = json::array();
  json review = json::array();
  for (const auto& c : pr.comments) {
    json e = {{"commenter", actor_json(c.commenter)},
              {"timestamp", c.timestamp}};
    (c.kind == CommentKind::Issue ? issue : review).push_back(std::move(e));
  }
  j["issue_comments"] = std::move(issue);
  j["review_comments"] = std::move(review);
  return j;
}

}  // namespace

bool RawActor::usable() const {
  return !blank(login) || !blank(email) || !blank(name);
}

std::int64_t CommitEvent::lines_changed() const {
  std::int64_t total = 0;
  for (const auto& f : files) total += f.lines_changed;
  return total;
}

bool pr_order_less(const PullRequest& a, const PullRequest& b) {
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return a.pr_id < b.pr_id;
}

void normalize_event_log(EventLog& log) {
  std::sort(log.prs.begin(), log.prs.end(), pr_order_less);
  for (auto& pr : log.prs) {
    std::stable_partition(
        pr.comments.begin(), pr.comments.end(),
        [](const CommentEvent& c) { return c.kind == CommentKind::Issue; });
  }
}

void validate_event_log(const EventLog& log) {
  if (log.t_start >= log.t_end) {
    fail(ErrorCode::PreconditionViolation, "event log needs t_start < t_end");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < log.prs.size(); ++i) {
    const auto& pr = log.prs[i];
    if (!seen.insert(pr.pr_id).second) {
      fail(ErrorCode::PreconditionViolation, "duplicate pr_id " + pr.pr_id);
    }
    if (pr.created_at < log.t_start || pr.created_at > log.t_end) {
      fail(ErrorCode::PreconditionViolation,
           "PR " + pr.pr_id + " created outside [t_start, t_end]");
    }
    if (i > 0 && !pr_order_less(log.prs[i - 1], pr)) {
      fail(ErrorCode::PreconditionViolation,
           "PRs not ordered by (created_at, pr_id) at " + pr.pr_id);
    }
  }
}

EventLog parse_event_log(std::istream& stream, const std::string& project) {
  EventLog log;
  log.project = project;
  bool header_seen = false;
  std::size_t records = 0;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(ErrorCode::MalformedLine, line_no, {},
                       "line " + std::to_string(line_no) +
                           ": malformed JSON: " + e.what());
    }
    RecordReader reader(line_no);
    if (!obj.is_object()) reader.violation("kind", "record must be an object");
    std::string kind = reader.string(obj, "kind");
    ++records;
    if (kind == "header") {
      if (records != 1) reader.violation("kind", "header must be the first record");
      header_seen = true;
      if (auto p = reader.optional_string(obj, "project")) log.project = *p;
      log.t_start = reader.integer(obj, "t_start");
      log.t_end = reader.integer(obj, "t_end");
      if (log.t_start >= log.t_end) {
        reader.violation("t_end", "must be greater than t_start");
      }
    } else if (kind == "pr") {
      PullRequest pr = reader.pull_request(obj);
      if (!ids.insert(pr.pr_id).second) {
        throw ParseError(ErrorCode::DuplicatePr, line_no, "pr_id",
                         "line " + std::to_string(line_no) + ": duplicate pr_id \"" +
                             pr.pr_id + "\"");
      }
      if (header_seen &&
          (pr.created_at < log.t_start || pr.created_at > log.t_end)) {
        reader.violation("created_at", "lies outside the header's window");
      }
      log.prs.push_back(std::move(pr));
    } else {
      reader.violation("kind", "must be \"header\" or \"pr\"");
    }
  }
  if (stream.bad()) fail(ErrorCode::IoFailure, "read error on event log");
  if (records == 0) fail(ErrorCode::EmptyLog, "event log contains no records");

  normalize_event_log(log);
  if (!header_seen && !log.prs.empty()) {
    log.t_start = log.prs.front().created_at;
    // A single instant is widened by a second so the window stays non-empty.
    log.t_end = std::max(log.prs.back().created_at, log.t_start + 1);
  }
  return log;
}

EventLog read_event_log_file(const std::string& path,
                             const std::string& project) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path);
  return parse_event_log(in, project);
}

PullRequest parse_pull_request_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorCode::MalformedLine, 1, {},
                     std::string("malformed PR JSON: ") + e.what());
  }
  RecordReader reader(1);
  if (!obj.is_object()) reader.violation("kind", "record must be an object");
  auto kind = reader.optional_string(obj, "kind");
  if (kind && *kind != "pr") reader.violation("kind", "must be \"pr\"");
  PullRequest pr = reader.pull_request(obj);
  std::stable_partition(
      pr.comments.begin(), pr.comments.end(),
      [](const CommentEvent& c) { return c.kind == CommentKind::Issue; });
  return pr;
}

void write_event_log(const EventLog& log, std::ostream& sink) {
  validate_event_log(log);
  json header = {{"kind", "header"},
                 {"project", log.project},
                 {"t_start", log.t_start},
                 {"t_end", log.t_end}};
  sink << header.dump() << '\n';
  for (const auto& pr : log.prs) sink << pr_json(pr).dump() << '\n';
  sink.flush();
  if (!sink) fail(ErrorCode::IoFailure, "write error on event log");
}

void write_event_log_file(const EventLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  write_event_log(log, out);
}

}  // namespace mirrec
