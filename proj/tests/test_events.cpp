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

#include <sstream>

#include "helpers.hpp"
#include "mirrec/error.hpp"
#include "mirrec/events.hpp"
#include "mirrec/testkit.hpp"

using namespace mirrec;
using namespace mirrec::test;

namespace {

EventLog parse(const std::string& text) {
  std::istringstream in(text);
  return parse_event_log(in, "p");
}

std::string serialize(const EventLog& log) {
  std::ostringstream out;
  write_event_log(log, out);
  return out.str();
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

const char* kPrLine =
    R"({"kind":"pr","pr_id":"%s","created_at":%d,"creator":{"login":"a"}})";

std::string pr_line(const std::string& id, int created) {
  char buf[256];
  std::snprintf(buf, sizeof buf, kPrLine, id.c_str(), created);
  return buf;
}

}  // namespace

TEST_SUITE("events") {

TEST_CASE("empty stream is rejected") {
  CHECK(code_of([] { parse(""); }) == ErrorCode::EmptyLog);
  CHECK(code_of([] { parse("\n  \n"); }) == ErrorCode::EmptyLog);
}

TEST_CASE("records are sorted by creation time") {
  const EventLog log = parse(pr_line("b", 10) + "\n" + pr_line("a", 5) + "\n");
  REQUIRE(log.prs.size() == 2);
  CHECK(log.prs[0].created_at == 5);
  CHECK(log.prs[1].created_at == 10);
  CHECK(log.t_start == 5);
  CHECK(log.t_end == 10);
}

TEST_CASE("duplicate pr_id reports the id and line") {
  try {
    parse(pr_line("42", 5) + "\n" + pr_line("42", 6) + "\n");
    FAIL("expected DuplicatePr");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::DuplicatePr);
    CHECK(e.line_no() == 2);
    CHECK(e.field() == "pr_id");
    CHECK(std::string(e.what()).find("42") != std::string::npos);
  }
}

TEST_CASE("malformed JSON carries its line number") {
  try {
    parse(pr_line("1", 5) + "\n{not json\n");
    FAIL("expected MalformedLine");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::MalformedLine);
    CHECK(e.line_no() == 2);
  }
}

TEST_CASE("missing required field is a schema violation") {
  try {
    parse(R"({"kind":"pr","pr_id":"1","creator":{"login":"a"}})");
    FAIL("expected SchemaViolation");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::SchemaViolation);
    CHECK(e.field() == "created_at");
  }
  CHECK(code_of([] {
          parse(R"({"kind":"pr","pr_id":"1","created_at":3,"creator":{"login":"a","type":"Robot"}})");
        }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] {
          parse(R"({"kind":"pr","pr_id":"1","created_at":3,"creator":{"login":"a"},"reviews":[{"reviewer":{"login":"b"},"timestamp":0}]})");
        }) == ErrorCode::SchemaViolation);
}

TEST_CASE("header bounds are enforced") {
  const std::string header = R"({"kind":"header","project":"x","t_start":100,"t_end":200})";
  CHECK(code_of([&] { parse(header + "\n" + pr_line("1", 50)); }) ==
        ErrorCode::SchemaViolation);
  CHECK(code_of([&] { parse(pr_line("1", 150) + "\n" + header); }) ==
        ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse(R"({"kind":"header","t_start":5,"t_end":5})"); }) ==
        ErrorCode::SchemaViolation);
  const EventLog log = parse(header + "\n" + pr_line("1", 150));
  CHECK(log.project == "x");
  CHECK(log.t_start == 100);
  CHECK(log.t_end == 200);
}

TEST_CASE("single headerless PR still has a non-empty window") {
  const EventLog log = parse(pr_line("1", 7));
  CHECK(log.t_start == 7);
  CHECK(log.t_end > log.t_start);
  CHECK(parse(serialize(log)) == log);
}

TEST_CASE("round trip of a one-PR log") {
  PullRequest p = pr("1", 150, "alice", {"a/b.c", "a/d.c"});
  commit(p, "alice", 160, 7);
  review(p, "bob", 170);
  p.comments.push_back({user("carol"), 165, CommentKind::Issue});
  p.comments.push_back({by_name("Dee"), 171, CommentKind::ReviewComment});
  p.merged_at = 180;
  p.creator.name = "Alice A";
  EventLog log = log_of({p}, 100, 200);
  log.project = "p";
  CHECK(parse(serialize(log)) == log);
}

TEST_CASE("round trip of an empty log keeps the bounds") {
  EventLog log;
  log.project = "p";
  log.t_start = 100;
  log.t_end = 200;
  const EventLog back = parse(serialize(log));
  CHECK(back.prs.empty());
  CHECK(back.t_start == 100);
  CHECK(back.t_end == 200);
  CHECK(back == log);
}

TEST_CASE("writing an unordered log is a precondition violation") {
  EventLog log;
  log.t_start = 1;
  log.t_end = 100;
  log.prs = {pr("b", 10, "a"), pr("a", 5, "a")};
  std::ostringstream out;
  CHECK(code_of([&] { write_event_log(log, out); }) == ErrorCode::PreconditionViolation);
  log.prs = {pr("a", 5, "a"), pr("a", 10, "a")};
  CHECK(code_of([&] { write_event_log(log, out); }) == ErrorCode::PreconditionViolation);
  log.prs = {pr("a", 500, "a")};
  CHECK(code_of([&] { write_event_log(log, out); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("round trip property over generated logs") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    SynthParams p;
    p.seed = seed;
    p.n_prs = 30 + seed;
    p.n_devs = 3 + seed % 7;
    p.n_subtrees = 1 + seed % 3;
    p.months = 1 + seed % 5;
    p.reviewer_affinity = 0.5;
    p.expert_commits = seed % 2 == 0;
    EventLog log = generate_log(p);
    // Mix in actors without login and bots so every actor shape is covered.
    log.prs.front().creator = by_name("Joint A and B");
    log.prs.back().reviews.push_back({bot("ci-bot"), log.prs.back().created_at + 1});
    log.prs.back().comments.push_back({RawActor{}, log.prs.back().created_at + 2,
                                       CommentKind::Issue});
    normalize_event_log(log);
    CAPTURE(seed);
    CHECK(parse(serialize(log)) == log);
  }
}

TEST_CASE("missing file reports the path") {
  try {
    read_event_log_file("/nonexistent/dir/log.jsonl");
    FAIL("expected IoFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoFailure);
    CHECK(std::string(e.what()).find("/nonexistent/dir/log.jsonl") != std::string::npos);
  }
}

TEST_CASE("single PR record parsing") {
  const PullRequest p = parse_pull_request_json(
      R"({"pr_id":"q","created_at":9,"creator":{"login":"a"},"files":[{"path":"x/y","lines_changed":3}]})");
  CHECK(p.pr_id == "q");
  CHECK(p.files.size() == 1);
  CHECK(code_of([] { parse_pull_request_json("[1,2"); }) == ErrorCode::MalformedLine);
}

}  // TEST_SUITE
