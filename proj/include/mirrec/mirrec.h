/*
 * mirrec - multiplex-relationship hypergraph reviewer recommendation
 * Copyright 2026 The mirrec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to mirrec.
 *
 * Every fallible call returns a mirrec_status; on failure the message is
 * available from mirrec_last_error() on the same thread until the next call.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with mirrec_string_free().
 */

#ifndef MIRREC_MIRREC_H_
#define MIRREC_MIRREC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(MIRREC_BUILDING_LIBRARY)
#define MIRREC_API __attribute__((visibility("default")))
#else
#define MIRREC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mirrec_status {
  MIRREC_OK = 0,
  MIRREC_IO_FAILURE = 1,
  MIRREC_MALFORMED_LINE = 2,
  MIRREC_SCHEMA_VIOLATION = 3,
  MIRREC_DUPLICATE_PR = 4,
  MIRREC_EMPTY_LOG = 5,
  MIRREC_PRECONDITION_VIOLATION = 6,
  MIRREC_DEGENERATE_WINDOW = 7,
  MIRREC_NO_CONVERGENCE = 8,
  MIRREC_MU_OUT_OF_RANGE = 9,
  MIRREC_INSUFFICIENT_SPAN = 10,
  MIRREC_UNKNOWN_PR = 11,
  MIRREC_SINGULAR_MATRIX = 12,
  MIRREC_TIME_HYGIENE_VIOLATION = 13,
  MIRREC_INVALID_CONFIG = 14,
  MIRREC_INTERNAL = 15
} mirrec_status;

typedef struct mirrec_config mirrec_config;
typedef struct mirrec_log mirrec_log;

typedef struct mirrec_synth_params {
  uint64_t seed;
  size_t n_devs;
  size_t n_prs;
  size_t n_subtrees;
  size_t months;
  double reviewer_affinity;
  int expert_commits;
  size_t expert_review_delay_months;
} mirrec_synth_params;

MIRREC_API const char* mirrec_version(void);
MIRREC_API const char* mirrec_status_name(mirrec_status status);
MIRREC_API const char* mirrec_last_error(void);
MIRREC_API void mirrec_string_free(char* s);

/* Configuration. Keys are the flat config-file names ("mu", "weights", ...). */
MIRREC_API mirrec_status mirrec_config_new(mirrec_config** out);
MIRREC_API void mirrec_config_free(mirrec_config* cfg);
MIRREC_API mirrec_status mirrec_config_set(mirrec_config* cfg, const char* key,
                                           const char* value);
MIRREC_API mirrec_status mirrec_config_load_file(mirrec_config* cfg,
                                                 const char* path);
/* Settable keys, in a fixed order; NULL past the end. */
MIRREC_API size_t mirrec_config_key_count(void);
MIRREC_API const char* mirrec_config_key(size_t i);
MIRREC_API mirrec_status mirrec_config_to_json(const mirrec_config* cfg,
                                               char** out_json);

/* Event logs in the JSON-lines format. */
MIRREC_API mirrec_status mirrec_log_load(const char* path, mirrec_log** out);
MIRREC_API mirrec_status mirrec_log_parse(const char* text, size_t len,
                                          mirrec_log** out);
MIRREC_API mirrec_status mirrec_log_save(const mirrec_log* log,
                                         const char* path);
MIRREC_API mirrec_status mirrec_log_to_jsonl(const mirrec_log* log,
                                             char** out_text);
MIRREC_API size_t mirrec_log_pr_count(const mirrec_log* log);
MIRREC_API void mirrec_log_free(mirrec_log* log);

/* Identity resolution and filtering. out_report_json may be NULL. */
MIRREC_API mirrec_status mirrec_ingest(const mirrec_log* raw,
                                       const mirrec_config* cfg,
                                       mirrec_log** out_clean,
                                       char** out_report_json);

/* Ranks reviewers for a PR of the log, or for a PR given as a JSON record. */
MIRREC_API mirrec_status mirrec_recommend(const mirrec_log* log,
                                          const char* pr_id,
                                          const mirrec_config* cfg,
                                          char** out_json);
MIRREC_API mirrec_status mirrec_recommend_json(const mirrec_log* log,
                                               const char* pr_json,
                                               const mirrec_config* cfg,
                                               char** out_json);

/* Sliding-window evaluation: per-round CSV plus a JSON summary that echoes
 * the configuration. Either out-parameter may be NULL. */
MIRREC_API mirrec_status mirrec_evaluate(const mirrec_log* log,
                                         const mirrec_config* cfg,
                                         char** out_csv,
                                         char** out_summary_json);

MIRREC_API void mirrec_synth_params_default(mirrec_synth_params* p);
MIRREC_API mirrec_status mirrec_synth(const mirrec_synth_params* p,
                                      mirrec_log** out);

/* Vertices, edges and weights of the hypergraph built from the whole log. */
MIRREC_API mirrec_status mirrec_dump_graph(const mirrec_log* log,
                                           const mirrec_config* cfg,
                                           char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* MIRREC_MIRREC_H_ */
