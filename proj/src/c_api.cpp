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

#include "mirrec/mirrec.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mirrec/app.hpp"
#include "mirrec/error.hpp"
#include "mirrec/testkit.hpp"

struct mirrec_config {
  mirrec::AppConfig cfg;
};

struct mirrec_log {
  mirrec::EventLog log;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mirrec_status to_status(mirrec::ErrorCode code) {
  return static_cast<mirrec_status>(static_cast<int>(code));
}

template <typename Fn>
mirrec_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return MIRREC_OK;
  } catch (const mirrec::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MIRREC_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MIRREC_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    mirrec::fail(mirrec::ErrorCode::PreconditionViolation,
                 std::string(what) + " must not be NULL");
  }
}

void set_out(char** out, const std::string& s) {
  if (out != nullptr) *out = dup_string(s);
}

}  // namespace

extern "C" {

const char* mirrec_version(void) { return "0.1.0"; }

const char* mirrec_status_name(mirrec_status status) {
  // error_code_name returns views into static literals.
  return mirrec::error_code_name(static_cast<mirrec::ErrorCode>(status)).data();
}

const char* mirrec_last_error(void) { return g_last_error.c_str(); }

void mirrec_string_free(char* s) { std::free(s); }

mirrec_status mirrec_config_new(mirrec_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mirrec_config();
  });
}

void mirrec_config_free(mirrec_config* cfg) { delete cfg; }

mirrec_status mirrec_config_set(mirrec_config* cfg, const char* key,
                                const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    mirrec::AppConfig next = cfg->cfg;
    next.set(key, value);
    cfg->cfg = std::move(next);
  });
}

mirrec_status mirrec_config_load_file(mirrec_config* cfg, const char* path) {
  return guarded([&] {
    need(cfg, "cfg");
    need(path, "path");
    mirrec::AppConfig next = cfg->cfg;
    next.load_file(path);
    cfg->cfg = std::move(next);
  });
}

size_t mirrec_config_key_count(void) { return mirrec::AppConfig::keys().size(); }

const char* mirrec_config_key(size_t i) {
  const auto& keys = mirrec::AppConfig::keys();
  return i < keys.size() ? keys[i].c_str() : nullptr;
}

mirrec_status mirrec_config_to_json(const mirrec_config* cfg, char** out_json) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out_json, "out_json");
    *out_json = dup_string(cfg->cfg.to_json());
  });
}

mirrec_status mirrec_log_load(const char* path, mirrec_log** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto log = std::make_unique<mirrec_log>();
    log->log = mirrec::read_event_log_file(path);
    *out = log.release();
  });
}

mirrec_status mirrec_log_parse(const char* text, size_t len, mirrec_log** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(std::string(text, len));
    auto log = std::make_unique<mirrec_log>();
    log->log = mirrec::parse_event_log(in, {});
    *out = log.release();
  });
}

mirrec_status mirrec_log_save(const mirrec_log* log, const char* path) {
  return guarded([&] {
    need(log, "log");
    need(path, "path");
    mirrec::write_event_log_file(log->log, path);
  });
}

mirrec_status mirrec_log_to_jsonl(const mirrec_log* log, char** out_text) {
  return guarded([&] {
    need(log, "log");
    need(out_text, "out_text");
    std::ostringstream out;
    mirrec::write_event_log(log->log, out);
    *out_text = dup_string(out.str());
  });
}

size_t mirrec_log_pr_count(const mirrec_log* log) {
  return log == nullptr ? 0 : log->log.prs.size();
}

void mirrec_log_free(mirrec_log* log) { delete log; }

mirrec_status mirrec_ingest(const mirrec_log* raw, const mirrec_config* cfg,
                            mirrec_log** out_clean, char** out_report_json) {
  return guarded([&] {
    need(raw, "raw");
    need(cfg, "cfg");
    need(out_clean, "out_clean");
    mirrec::IngestResult result = mirrec::ingest(raw->log, cfg->cfg);
    auto clean = std::make_unique<mirrec_log>();
    clean->log = std::move(result.log);
    std::string report = result.report.to_json();
    set_out(out_report_json, report);
    *out_clean = clean.release();
  });
}

mirrec_status mirrec_recommend(const mirrec_log* log, const char* pr_id,
                               const mirrec_config* cfg, char** out_json) {
  return guarded([&] {
    need(log, "log");
    need(pr_id, "pr_id");
    need(cfg, "cfg");
    need(out_json, "out_json");
    *out_json = dup_string(
        mirrec::recommend_for(log->log, std::string(pr_id), cfg->cfg).to_json());
  });
}

mirrec_status mirrec_recommend_json(const mirrec_log* log, const char* pr_json,
                                    const mirrec_config* cfg, char** out_json) {
  return guarded([&] {
    need(log, "log");
    need(pr_json, "pr_json");
    need(cfg, "cfg");
    need(out_json, "out_json");
    const mirrec::PullRequest query = mirrec::parse_pull_request_json(pr_json);
    *out_json = dup_string(mirrec::recommend_for(log->log, query, cfg->cfg).to_json());
  });
}

mirrec_status mirrec_evaluate(const mirrec_log* log, const mirrec_config* cfg,
                              char** out_csv, char** out_summary_json) {
  return guarded([&] {
    need(log, "log");
    need(cfg, "cfg");
    const mirrec::EvalReport report = mirrec::evaluate(log->log, cfg->cfg);
    nlohmann::json summary = nlohmann::json::parse(report.summary_json());
    summary["config"] = nlohmann::json::parse(cfg->cfg.to_json());
    const std::string csv = report.to_csv(!report.mask.is_full());
    const std::string json = summary.dump(2);
    char* csv_out = out_csv ? dup_string(csv) : nullptr;
    try {
      set_out(out_summary_json, json);
    } catch (...) {
      std::free(csv_out);
      throw;
    }
    if (out_csv) *out_csv = csv_out;
  });
}

void mirrec_synth_params_default(mirrec_synth_params* p) {
  if (p == nullptr) return;
  const mirrec::SynthParams d;
  p->seed = d.seed;
  p->n_devs = d.n_devs;
  p->n_prs = d.n_prs;
  p->n_subtrees = d.n_subtrees;
  p->months = d.months;
  p->reviewer_affinity = d.reviewer_affinity;
  p->expert_commits = d.expert_commits ? 1 : 0;
  p->expert_review_delay_months = d.expert_review_delay_months;
}

mirrec_status mirrec_synth(const mirrec_synth_params* p, mirrec_log** out) {
  return guarded([&] {
    need(p, "params");
    need(out, "out");
    mirrec::SynthParams sp;
    sp.seed = p->seed;
    sp.n_devs = p->n_devs;
    sp.n_prs = p->n_prs;
    sp.n_subtrees = p->n_subtrees;
    sp.months = p->months;
    sp.reviewer_affinity = p->reviewer_affinity;
    sp.expert_commits = p->expert_commits != 0;
    sp.expert_review_delay_months = p->expert_review_delay_months;
    auto log = std::make_unique<mirrec_log>();
    log->log = mirrec::generate_log(sp);
    *out = log.release();
  });
}

mirrec_status mirrec_dump_graph(const mirrec_log* log, const mirrec_config* cfg,
                                char** out_json) {
  return guarded([&] {
    need(log, "log");
    need(cfg, "cfg");
    need(out_json, "out_json");
    *out_json = dup_string(mirrec::build_graph(log->log, cfg->cfg).to_json());
  });
}

}  // extern "C"
