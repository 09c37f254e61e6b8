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

#include <json.hpp>
#include <sstream>

#include "helpers.hpp"
#include "mirrec/app.hpp"
#include "mirrec/error.hpp"
#include "mirrec/testkit.hpp"

using namespace mirrec;
using namespace mirrec::test;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

AppConfig loaded(const std::string& text) {
  AppConfig cfg;
  std::istringstream in(text);
  cfg.load(in);
  return cfg;
}

}  // namespace

TEST_SUITE("app") {

TEST_CASE("default configuration") {
  const auto j = nlohmann::json::parse(AppConfig{}.to_json());
  CHECK(j["mu"] == 0.9);
  CHECK(j["top_k_similar"] == 10);
  CHECK(j["alpha"] == 0.8);
  CHECK(j["weights"] == nlohmann::json::array({4.0, 3.0, 1.0, 1.0}));
  CHECK(j["bulk_commit_threshold"] == 100);
  CHECK(j["tol"] == 1e-9);
  CHECK(j["max_iter"] == 10000);
  CHECK(j["top_k"] == 5);
  for (const char* k : {"include_re", "include_ct", "include_ic", "include_rc",
                        "include_creator", "include_prpr"}) {
    CHECK(j[k] == true);
  }
}

TEST_CASE("every key is echoed and settable") {
  const auto j = nlohmann::json::parse(AppConfig{}.to_json());
  CHECK(j.size() == AppConfig::keys().size());
  for (const auto& k : AppConfig::keys()) CHECK(j.contains(k));

  AppConfig cfg;
  cfg.set("mu", "0.5");
  cfg.set("alpha", "0.25");
  cfg.set("top_k_similar", "3");
  cfg.set("weights", "5,2,1,0.5");
  cfg.set("include_rc", "false");
  cfg.set("bulk_commit_threshold", "7");
  cfg.set("input", "\"a b.jsonl\"");
  CHECK(cfg.hyper.mu == 0.5);
  CHECK(cfg.hyper.alpha == 0.25);
  CHECK(cfg.hyper.top_k_similar == 3);
  CHECK(cfg.hyper.role_weights == RoleWeights{5, 2, 1, 0.5});
  CHECK(!cfg.mask.include_rc);
  CHECK(cfg.filter.bulk_commit_threshold == 7);
  CHECK(cfg.input == "a b.jsonl");
  cfg.set("weights", "4:3:1:1");
  CHECK(cfg.hyper.role_weights == RoleWeights{});
}

TEST_CASE("bad keys and values") {
  AppConfig cfg;
  CHECK(code_of([&] { cfg.set("nope", "1"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("mu", "abc"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("mu", "1.5"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("alpha", "-0.1"); }) == ErrorCode::InvalidConfig);
  CHECK(cfg.hyper.mu == 0.9);
  CHECK(code_of([&] { cfg.set("alpha", "0"); }) == ErrorCode::Ok);
  CHECK(code_of([&] { cfg.set("weights", "1,2,3"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("top_k", "-1"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("drop_bots", "maybe"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { loaded("mu 0.5\n"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { AppConfig c; c.load_file("/nonexistent/mirrec.conf"); }) ==
        ErrorCode::IoFailure);
}

TEST_CASE("config file syntax") {
  const AppConfig cfg = loaded(
      "# comment\n"
      "mu = 0.7   # trailing\n"
      "\n"
      "output = 'out#1.csv'\n"
      "include_prpr=false\n");
  CHECK(cfg.hyper.mu == 0.7);
  CHECK(cfg.output == "out#1.csv");
  CHECK(!cfg.mask.include_prpr);
  CHECK(cfg.hyper.alpha == 0.8);
}

TEST_CASE("later settings override earlier ones") {
  AppConfig cfg = loaded("mu = 0.7\nmu = 0.6\n");
  CHECK(cfg.hyper.mu == 0.6);
  cfg.set("mu", "0.2");
  CHECK(cfg.hyper.mu == 0.2);
}

TEST_CASE("ingest reports removals") {
  SynthParams sp;
  sp.n_prs = 80;
  EventLog log = generate_log(sp);
  const auto clean = ingest(log, {});
  CHECK(clean.report.events_removed() == 0);
  CHECK(clean.report.prs_dropped() == 0);
  CHECK(clean.log == log);

  log.prs[3].reviews.push_back({bot("ci-bot"), log.prs[3].created_at + 5});
  const auto dirty = ingest(log, {});
  CHECK(dirty.report.bot_events == 1);
  CHECK(dirty.report.events_removed() == 1);
}

TEST_CASE("recommend_for ranks the planted expert first") {
  SynthParams sp;
  sp.n_prs = 200;
  const EventLog log = generate_log(sp);
  AppConfig cfg;
  cfg.jobs = 1;
  int checked = 0;
  for (auto it = log.prs.rbegin(); it != log.prs.rend() && checked < 5; ++it, ++checked) {
    const std::string& path = it->files.front().path;
    const std::size_t a = path.find("mod") + 3;
    const std::string owner = "dev" + path.substr(a, path.find('/', a) - a);
    const auto rec = recommend_for(log, it->pr_id, cfg);
    REQUIRE(!rec.ranked.empty());
    CHECK(rec.ranked.size() <= 5);
    CHECK(rec.query_pr == it->pr_id);
    CHECK(rec.ranked.front().dev.canonical == owner);
  }
}

TEST_CASE("recommend_for edge cases") {
  SynthParams sp;
  sp.n_prs = 60;
  sp.months = 2;
  const EventLog log = generate_log(sp);
  AppConfig cfg;
  cfg.top_k = 0;
  const auto rec = recommend_for(log, log.prs.back().pr_id, cfg);
  CHECK(rec.ranked.empty());
  CHECK(rec.to_json() == "{\"candidates\":[],\"pr_id\":\"" + log.prs.back().pr_id + "\"}");

  CHECK(code_of([&] { recommend_for(log, std::string("nope"), AppConfig{}); }) ==
        ErrorCode::UnknownPr);

  // A query at the window start has no training history to normalize over.
  PullRequest q = pr("first", log.t_start, "dev3", {"src/mod3/file0.cpp"});
  CHECK(code_of([&] { recommend_for(log, q, AppConfig{}); }) == ErrorCode::DegenerateWindow);

  // Free-standing query after the log.
  PullRequest later = pr("new", log.t_end, "dev13", {"src/mod3/file0.cpp"});
  const auto r2 = recommend_for(log, later, AppConfig{});
  REQUIRE(!r2.ranked.empty());
  CHECK(r2.ranked.front().dev.canonical == "dev3");
}

TEST_CASE("evaluate over 14 months gives two rounds") {
  SynthParams sp;
  sp.n_prs = 200;
  const EventLog log = generate_log(sp);
  AppConfig cfg;
  const EvalReport full = evaluate(log, cfg);
  CHECK(full.rounds.size() == 2);
  CHECK(full.mask.is_full());

  cfg.set("include_rc", "false");
  const EvalReport no_rc = evaluate(log, cfg);
  CHECK(no_rc.mask.label() == "re_ct_ic");
  CHECK(no_rc.to_csv(true).find(",re_ct_ic\n") != std::string::npos);

  cfg = AppConfig{};
  cfg.rounds = 1;
  CHECK(evaluate(log, cfg).rounds.size() == 1);

  sp.months = 12;
  CHECK(code_of([&] { evaluate(generate_log(sp), AppConfig{}); }) ==
        ErrorCode::InsufficientSpan);
}

TEST_CASE("build_graph covers the cleaned log") {
  SynthParams sp;
  sp.n_prs = 30;
  sp.months = 2;
  const EventLog log = generate_log(sp);
  const IncidenceSystem s = build_graph(log, {});
  for (const auto& p : log.prs) CHECK(s.pr_vertex(p.pr_id).has_value());
  const auto j = nlohmann::json::parse(s.to_json());
  CHECK(j.is_object());
}

}  // TEST_SUITE
