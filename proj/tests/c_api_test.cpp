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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>

#include <json.hpp>

#include "mirrec/mirrec.h"

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { mirrec_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Handles {
  mirrec_config* cfg = nullptr;
  mirrec_log* log = nullptr;
  Handles() {
    REQUIRE(mirrec_config_new(&cfg) == MIRREC_OK);
    mirrec_synth_params p;
    mirrec_synth_params_default(&p);
    p.n_prs = 120;
    REQUIRE(mirrec_synth(&p, &log) == MIRREC_OK);
  }
  ~Handles() {
    mirrec_log_free(log);
    mirrec_config_free(cfg);
  }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(mirrec_version()) == "0.1.0");
  CHECK(std::string(mirrec_status_name(MIRREC_OK)) == "Ok");
  CHECK(std::string(mirrec_status_name(MIRREC_UNKNOWN_PR)) == "UnknownPr");
  CHECK(std::string(mirrec_status_name(static_cast<mirrec_status>(99))) == "Unknown");
}

TEST_CASE("config keys round-trip through the handle") {
  mirrec_config* cfg = nullptr;
  REQUIRE(mirrec_config_new(&cfg) == MIRREC_OK);
  const size_t n = mirrec_config_key_count();
  CHECK(n == 25);
  CHECK(mirrec_config_key(n) == nullptr);
  CHECK(mirrec_config_set(cfg, "mu", "0.4") == MIRREC_OK);
  CHECK(mirrec_config_set(cfg, "bogus", "1") == MIRREC_INVALID_CONFIG);
  CHECK(std::strstr(mirrec_last_error(), "bogus") != nullptr);
  // A failed set leaves the handle unchanged.
  CHECK(mirrec_config_set(cfg, "mu", "7") == MIRREC_INVALID_CONFIG);
  Owned json;
  REQUIRE(mirrec_config_to_json(cfg, &json.p) == MIRREC_OK);
  CHECK(mirrec_last_error()[0] == '\0');
  const auto j = nlohmann::json::parse(json.str());
  CHECK(j["mu"] == 0.4);
  for (size_t i = 0; i < n; ++i) CHECK(j.contains(mirrec_config_key(i)));
  CHECK(mirrec_config_load_file(cfg, "/nonexistent.conf") == MIRREC_IO_FAILURE);
  mirrec_config_free(cfg);
}

TEST_CASE("NULL arguments are precondition violations") {
  CHECK(mirrec_config_new(nullptr) == MIRREC_PRECONDITION_VIOLATION);
  mirrec_log* log = nullptr;
  CHECK(mirrec_log_load(nullptr, &log) == MIRREC_PRECONDITION_VIOLATION);
  CHECK(mirrec_log_pr_count(nullptr) == 0);
  mirrec_log_free(nullptr);
  mirrec_config_free(nullptr);
  mirrec_string_free(nullptr);
}

TEST_CASE("log parse, serialize and save") {
  Handles h;
  CHECK(mirrec_log_pr_count(h.log) == 120);
  Owned text;
  REQUIRE(mirrec_log_to_jsonl(h.log, &text.p) == MIRREC_OK);
  mirrec_log* back = nullptr;
  REQUIRE(mirrec_log_parse(text.p, std::strlen(text.p), &back) == MIRREC_OK);
  Owned again;
  REQUIRE(mirrec_log_to_jsonl(back, &again.p) == MIRREC_OK);
  CHECK(text.str() == again.str());
  mirrec_log_free(back);

  const char* bad = "{\"kind\":\"pr\"";
  mirrec_log* none = nullptr;
  CHECK(mirrec_log_parse(bad, std::strlen(bad), &none) == MIRREC_MALFORMED_LINE);
  CHECK(none == nullptr);
  CHECK(mirrec_log_parse("", 0, &none) == MIRREC_EMPTY_LOG);
  CHECK(mirrec_log_load("/nonexistent/x.jsonl", &none) == MIRREC_IO_FAILURE);
  CHECK(std::strstr(mirrec_last_error(), "/nonexistent/x.jsonl") != nullptr);
}

TEST_CASE("ingest and recommend") {
  Handles h;
  mirrec_log* clean = nullptr;
  Owned report;
  REQUIRE(mirrec_ingest(h.log, h.cfg, &clean, &report.p) == MIRREC_OK);
  CHECK(mirrec_log_pr_count(clean) == 120);
  const auto r = nlohmann::json::parse(report.str());
  CHECK(r.is_object());
  mirrec_log_free(clean);
  REQUIRE(mirrec_ingest(h.log, h.cfg, &clean, nullptr) == MIRREC_OK);
  mirrec_log_free(clean);

  Owned text;
  REQUIRE(mirrec_log_to_jsonl(h.log, &text.p) == MIRREC_OK);
  const std::string all = text.str();
  const std::string last_line =
      all.substr(all.rfind('\n', all.size() - 2) + 1);
  const std::string last_id = nlohmann::json::parse(last_line)["pr_id"];

  Owned rec;
  REQUIRE(mirrec_recommend(h.log, last_id.c_str(), h.cfg, &rec.p) == MIRREC_OK);
  const auto j = nlohmann::json::parse(rec.str());
  CHECK(j["pr_id"] == last_id);
  CHECK(j["candidates"].size() == 5);

  Owned rec2;
  // The same record given as JSON trains on the same history.
  REQUIRE(mirrec_recommend_json(h.log, last_line.c_str(), h.cfg, &rec2.p) ==
          MIRREC_OK);
  CHECK(rec2.str() == rec.str());
  Owned miss;
  CHECK(mirrec_recommend(h.log, "missing", h.cfg, &miss.p) == MIRREC_UNKNOWN_PR);
  CHECK(miss.p == nullptr);
}

TEST_CASE("evaluate outputs and mask column") {
  Handles h;
  Owned csv, summary;
  REQUIRE(mirrec_evaluate(h.log, h.cfg, &csv.p, &summary.p) == MIRREC_OK);
  CHECK(csv.str().rfind("round,test_month,k,acc,mrr,n_test_prs\n", 0) == 0);
  const auto s = nlohmann::json::parse(summary.str());
  CHECK(s["rounds_evaluated"] == 2);
  CHECK(s["config"]["mu"] == 0.9);
  CHECK(s["time_hygiene"]["violations"] == 0);

  REQUIRE(mirrec_config_set(h.cfg, "include_rc", "false") == MIRREC_OK);
  Owned masked;
  REQUIRE(mirrec_evaluate(h.log, h.cfg, &masked.p, nullptr) == MIRREC_OK);
  CHECK(masked.str().find(",mask\n") != std::string::npos);
  CHECK(masked.str().find(",re_ct_ic\n") != std::string::npos);

  mirrec_synth_params p;
  mirrec_synth_params_default(&p);
  p.months = 6;
  mirrec_log* short_log = nullptr;
  REQUIRE(mirrec_synth(&p, &short_log) == MIRREC_OK);
  CHECK(mirrec_evaluate(short_log, h.cfg, nullptr, nullptr) == MIRREC_INSUFFICIENT_SPAN);
  mirrec_log_free(short_log);

  p.n_prs = 0;
  CHECK(mirrec_synth(&p, &short_log) == MIRREC_PRECONDITION_VIOLATION);
}

TEST_CASE("evaluation CSV is byte-identical across runs") {
  Handles a, b;
  Owned x, y;
  REQUIRE(mirrec_evaluate(a.log, a.cfg, &x.p, nullptr) == MIRREC_OK);
  REQUIRE(mirrec_config_set(b.cfg, "jobs", "3") == MIRREC_OK);
  REQUIRE(mirrec_evaluate(b.log, b.cfg, &y.p, nullptr) == MIRREC_OK);
  CHECK(x.str() == y.str());
}

TEST_CASE("graph dump") {
  Handles h;
  Owned g;
  REQUIRE(mirrec_dump_graph(h.log, h.cfg, &g.p) == MIRREC_OK);
  const auto j = nlohmann::json::parse(g.str());
  CHECK(j.is_object());
}

TEST_CASE("log save writes a loadable file") {
  Handles h;
  const std::string path = "c_api_test_log.jsonl";
  REQUIRE(mirrec_log_save(h.log, path.c_str()) == MIRREC_OK);
  mirrec_log* back = nullptr;
  REQUIRE(mirrec_log_load(path.c_str(), &back) == MIRREC_OK);
  CHECK(mirrec_log_pr_count(back) == 120);
  mirrec_log_free(back);
  std::remove(path.c_str());
}
