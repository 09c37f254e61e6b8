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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mirrec/mirrec.h"

namespace {

struct Failure {
  mirrec_status status;
};

void check(mirrec_status s) {
  if (s != MIRREC_OK) throw Failure{s};
}

struct ConfigDeleter {
  void operator()(mirrec_config* c) const { mirrec_config_free(c); }
};
struct LogDeleter {
  void operator()(mirrec_log* l) const { mirrec_log_free(l); }
};
using ConfigPtr = std::unique_ptr<mirrec_config, ConfigDeleter>;
using LogPtr = std::unique_ptr<mirrec_log, LogDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  mirrec_string_free(s);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "mirrec: cannot write " << path << '\n';
    throw Failure{MIRREC_IO_FAILURE};
  }
}

std::string kebab(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> h = {
      {"mu", "regularization mu in [0,1) (default 0.9)"},
      {"alpha", "attenuation factor for repeated events (default 0.8)"},
      {"top_k_similar", "PR-PR edges per PR (default 10)"},
      {"weights", "role weights a,b,c,d for reviewer,committer,review commenter,issue commenter (default 4,3,1,1)"},
      {"bulk_commit_threshold", "drop commits touching at least this many files (default 100)"},
      {"drop_bots", "drop events by bot accounts (true|false)"},
      {"drop_unresolved", "drop events whose actor cannot be identified (true|false)"},
      {"drop_self_reviews", "drop reviews by the PR creator (true|false)"},
      {"truncate_post_merge", "drop events after merge (true|false)"},
      {"drop_empty_prs", "drop PRs without files or reviews (true|false)"},
      {"include_re", "use reviewer edges (true|false)"},
      {"include_ct", "use committer edges (true|false)"},
      {"include_ic", "use issue-commenter edges (true|false)"},
      {"include_rc", "use review-commenter edges (true|false)"},
      {"include_creator", "use creator edges (true|false)"},
      {"include_prpr", "use PR-PR similarity edges (true|false)"},
      {"tol", "solver tolerance, infinity norm (default 1e-9)"},
      {"max_iter", "solver iteration cap (default 10000)"},
      {"max_distance", "identity matching edit distance (default 2)"},
      {"jobs", "worker threads (default: number of processors)"},
      {"top_k", "recommendation list length (default 5)"},
      {"rounds", "evaluation rounds, 0 for all available (default 0)"},
      {"input", "input event log (JSON lines)"},
      {"output", "output path, '-' for stdout"},
      {"identity_overrides", "CSV of login,email,name identity overrides"},
  };
  return h;
}

// Config flags shared by every pipeline subcommand. Values are collected as
// text and applied after an optional --config file, so flags win.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> negations;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "flat key = value config file")
        ->check(CLI::ExistingFile);
    const std::size_t n = mirrec_config_key_count();
    for (std::size_t i = 0; i < n; ++i) {
      const std::string key = mirrec_config_key(i);
      const auto it = key_help().find(key);
      cmd->add_option("--" + kebab(key), values[key],
                      it == key_help().end() ? key : it->second);
    }
    for (const char* rel : {"re", "ct", "ic", "rc", "creator", "prpr"}) {
      const std::string key = std::string("include_") + rel;
      cmd->add_flag("--no-" + std::string(rel), negations[key],
                    "shorthand for --include-" + std::string(rel) + "=false");
    }
  }

  ConfigPtr build(CLI::App* cmd) const {
    mirrec_config* raw = nullptr;
    check(mirrec_config_new(&raw));
    ConfigPtr cfg(raw);
    if (!config_file.empty()) check(mirrec_config_load_file(cfg.get(), config_file.c_str()));
    for (const auto& [key, value] : values) {
      if (cmd->count("--" + kebab(key)) > 0) {
        check(mirrec_config_set(cfg.get(), key.c_str(), value.c_str()));
      }
    }
    for (const auto& [key, on] : negations) {
      if (on) check(mirrec_config_set(cfg.get(), key.c_str(), "false"));
    }
    return cfg;
  }
};

// Config-resolved value of a string key, read back through the JSON echo.
std::string config_string(const mirrec_config* cfg, const std::string& key) {
  char* json = nullptr;
  check(mirrec_config_to_json(cfg, &json));
  return nlohmann::json::parse(take(json)).value(key, std::string());
}

LogPtr load_log(const std::string& path) {
  if (path.empty()) {
    std::cerr << "mirrec: no input log (use --input or set input in --config)\n";
    throw Failure{MIRREC_INVALID_CONFIG};
  }
  mirrec_log* raw = nullptr;
  check(mirrec_log_load(path.c_str(), &raw));
  return LogPtr(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "mirrec: cannot open " << path << '\n';
    throw Failure{MIRREC_IO_FAILURE};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mirrec: reviewer recommendation on a multiplex-relationship hypergraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mirrec_version()));

  // ingest
  auto* ingest = app.add_subcommand("ingest", "resolve identities, filter noise, write a cleaned log");
  ConfigFlags ingest_flags;
  ingest_flags.attach(ingest);
  std::string ingest_report;
  ingest->add_option("--report", ingest_report, "write the filter report JSON here (default stdout)");

  // recommend
  auto* rec = app.add_subcommand("recommend", "rank reviewers for one PR");
  ConfigFlags rec_flags;
  rec_flags.attach(rec);
  std::string pr_id, pr_json, pr_file;
  auto* id_opt = rec->add_option("--pr-id", pr_id, "PR of the log to rank reviewers for");
  auto* json_opt = rec->add_option("--pr-json", pr_json, "PR record as inline JSON");
  auto* file_opt = rec->add_option("--pr-file", pr_file, "file holding one PR JSON record")
                       ->check(CLI::ExistingFile);
  id_opt->excludes(json_opt)->excludes(file_opt);
  json_opt->excludes(file_opt);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "sliding-window evaluation (12 months train, 1 month test)");
  ConfigFlags ev_flags;
  ev_flags.attach(ev);
  std::string summary_path;
  ev->add_option("--summary", summary_path, "write the JSON summary here (default stderr)");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic log with planted reviewers");
  mirrec_synth_params sp;
  mirrec_synth_params_default(&sp);
  bool expert_commits = false;
  std::string synth_out;
  synth->add_option("--seed", sp.seed, "random seed")->capture_default_str();
  synth->add_option("--devs", sp.n_devs, "number of developers")->capture_default_str();
  synth->add_option("--prs", sp.n_prs, "number of PRs")->capture_default_str();
  synth->add_option("--subtrees", sp.n_subtrees, "number of file subtrees")->capture_default_str();
  synth->add_option("--months", sp.months, "window length in calendar months")->capture_default_str();
  synth->add_option("--affinity", sp.reviewer_affinity, "probability the subtree owner reviews")
      ->capture_default_str();
  synth->add_flag("--expert-commits", expert_commits, "subtree owners also commit to their subtree's PRs");
  synth->add_option("--expert-review-delay", sp.expert_review_delay_months,
                    "months before subtree owners start reviewing")
      ->capture_default_str();
  synth->add_option("--output", synth_out, "output path, '-' for stdout");

  // dump-graph
  auto* dump = app.add_subcommand("dump-graph", "write the hypergraph (vertices, edges, weights) as JSON");
  ConfigFlags dump_flags;
  dump_flags.attach(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : MIRREC_INVALID_CONFIG;
  }

  try {
    if (ingest->parsed()) {
      ConfigPtr cfg = ingest_flags.build(ingest);
      LogPtr raw = load_log(config_string(cfg.get(), "input"));
      mirrec_log* clean = nullptr;
      char* report = nullptr;
      check(mirrec_ingest(raw.get(), cfg.get(), &clean, &report));
      LogPtr clean_ptr(clean);
      const std::string report_text = take(report) + "\n";
      const std::string out = config_string(cfg.get(), "output");
      if (out.empty() || out == "-") {
        char* text = nullptr;
        check(mirrec_log_to_jsonl(clean, &text));
        write_text("-", take(text));
        if (ingest_report.empty()) std::cerr << report_text;
        else write_text(ingest_report, report_text);
      } else {
        check(mirrec_log_save(clean, out.c_str()));
        write_text(ingest_report, report_text);
      }
    } else if (rec->parsed()) {
      ConfigPtr cfg = rec_flags.build(rec);
      LogPtr log = load_log(config_string(cfg.get(), "input"));
      char* out = nullptr;
      if (!pr_id.empty()) {
        check(mirrec_recommend(log.get(), pr_id.c_str(), cfg.get(), &out));
      } else if (!pr_json.empty() || !pr_file.empty()) {
        const std::string text = pr_json.empty() ? read_file(pr_file) : pr_json;
        check(mirrec_recommend_json(log.get(), text.c_str(), cfg.get(), &out));
      } else {
        std::cerr << "mirrec: recommend needs --pr-id, --pr-json or --pr-file\n";
        return MIRREC_INVALID_CONFIG;
      }
      write_text(config_string(cfg.get(), "output"), take(out) + "\n");
    } else if (ev->parsed()) {
      ConfigPtr cfg = ev_flags.build(ev);
      LogPtr log = load_log(config_string(cfg.get(), "input"));
      char* csv = nullptr;
      char* summary = nullptr;
      check(mirrec_evaluate(log.get(), cfg.get(), &csv, &summary));
      const std::string csv_text = take(csv);
      const std::string summary_text = take(summary) + "\n";
      write_text(config_string(cfg.get(), "output"), csv_text);
      if (summary_path.empty()) std::cerr << summary_text;
      else write_text(summary_path, summary_text);
    } else if (synth->parsed()) {
      sp.expert_commits = expert_commits ? 1 : 0;
      mirrec_log* raw = nullptr;
      check(mirrec_synth(&sp, &raw));
      LogPtr log(raw);
      if (synth_out.empty() || synth_out == "-") {
        char* text = nullptr;
        check(mirrec_log_to_jsonl(log.get(), &text));
        write_text("-", take(text));
      } else {
        check(mirrec_log_save(log.get(), synth_out.c_str()));
      }
    } else if (dump->parsed()) {
      ConfigPtr cfg = dump_flags.build(dump);
      LogPtr log = load_log(config_string(cfg.get(), "input"));
      char* out = nullptr;
      check(mirrec_dump_graph(log.get(), cfg.get(), &out));
      write_text(config_string(cfg.get(), "output"), take(out) + "\n");
    }
  } catch (const Failure& f) {
    const char* msg = mirrec_last_error();
    if (msg != nullptr && *msg != '\0') {
      std::cerr << "mirrec: " << mirrec_status_name(f.status) << ": " << msg << '\n';
    }
    return static_cast<int>(f.status);
  }
  return 0;
}
