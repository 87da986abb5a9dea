/* Copyright 2026 The Collo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef COLLO_COLLO_H_
#define COLLO_COLLO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COLLO_API __declspec(dllexport)
#else
#define COLLO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; on failure the message is
 * available from collo_last_error() on the same thread. */
typedef enum collo_status {
  COLLO_OK = 0,
  COLLO_ERR_INPUT = 1,     /* malformed or inconsistent input data */
  COLLO_ERR_ARG = 2,       /* invalid argument or configuration */
  COLLO_ERR_IO = 3,        /* file could not be read or written */
  COLLO_ERR_INTERNAL = 4,  /* invariant violation inside the library */
} collo_status;

typedef struct collo_config collo_config;
typedef struct collo_database collo_database;
typedef struct collo_model collo_model;

COLLO_API const char* collo_version(void);
/* Message of the last failed call on this thread; "" if none. */
COLLO_API const char* collo_last_error(void);
/* Frees strings returned through char** out-parameters. NULL is ignored. */
COLLO_API void collo_string_free(char* s);

/* --- configuration ------------------------------------------------------ */

COLLO_API collo_status collo_config_new(collo_config** out);
/* Flat "key = value" file; relative paths resolve against its directory. */
COLLO_API collo_status collo_config_load(const char* path, collo_config** out);
COLLO_API collo_status collo_config_set(collo_config* config, const char* key, const char* value);
COLLO_API collo_status collo_config_get(const collo_config* config, const char* key, char** out);
/* Canonical settings, one "key=value" per line. */
COLLO_API collo_status collo_config_dump(const collo_config* config, char** out);
/* Newline-separated list of every key collo_config_set accepts. */
COLLO_API collo_status collo_config_keys(char** out);
COLLO_API void collo_config_free(collo_config* config);

/* --- mining and the database ------------------------------------------- */

/* Runs the mining flow. `report` (may be NULL) receives per-verb counts and
 * warnings as tab-separated text. */
COLLO_API collo_status collo_mine(const collo_config* config, collo_database** out, char** report);
COLLO_API collo_status collo_database_load(const char* path, collo_database** out);
COLLO_API collo_status collo_database_parse(const char* json, collo_database** out);
/* Atomic write (temporary file + rename). */
COLLO_API collo_status collo_database_save(const collo_database* db, const char* path);
COLLO_API collo_status collo_database_serialize(const collo_database* db, char** out);
/* COLLO_OK when valid; COLLO_ERR_INPUT with one problem per line in `out`. */
COLLO_API collo_status collo_database_validate(const collo_database* db, char** out);
COLLO_API size_t collo_database_count(const collo_database* db);
COLLO_API void collo_database_free(collo_database* db);

/* Collostructions of `verb` by descending p_col. `deprel` and `substring`
 * filter on slot relation and collexeme text; either may be NULL. */
COLLO_API collo_status collo_query(const collo_database* db, const char* verb, const char* deprel,
                                   const char* substring, char** out);

/* Retrieved clauses for the verbs of one sentence (all sentences when
 * sent_id is NULL). `verb` may be NULL for every verb-tagged token. */
COLLO_API collo_status collo_clause(const collo_config* config, const char* conllu_path,
                                    const char* sent_id, const char* verb, char** out);

/* --- statistics ---------------------------------------------------------- */

/* x_min <= 0 selects x_min by KS minimization. */
COLLO_API collo_status collo_stats_powerlaw(const double* samples, size_t n, double x_min, char** out);
/* level: "sense" or "collostruction" percentages pooled over all verbs. */
COLLO_API collo_status collo_stats_powerlaw_db(const collo_database* db, const char* level,
                                               double x_min, char** out);
COLLO_API collo_status collo_stats_slots(const collo_database* db, char** out);
/* Uses the config's word embeddings (fallback encoder when unset). */
COLLO_API collo_status collo_stats_coherence(const collo_database* db, const collo_config* config,
                                             int literal_denominator, char** out);
/* hypernyms_path and verb may be NULL. */
COLLO_API collo_status collo_stats_actions(const collo_database* db, const char* sememes_path,
                                           const char* hypernyms_path, const char* verb,
                                           size_t top_k, char** out);

/* --- verb-usage error detection ---------------------------------------- */

typedef struct collo_train_params {
  int epochs;
  int batch_size;
  double learning_rate;
  uint64_t seed;
  int resample_period;
} collo_train_params;

/* Defaults: 200 epochs, batch 32, learning rate 1e-3, seed 0, period 50. */
COLLO_API collo_train_params collo_train_params_default(void);

COLLO_API collo_status collo_ged_index(const collo_database* db, char** out);
/* Trains on a dataset (JSON Lines) whose sentences are parsed in
 * `conllu_path`. `log` (may be NULL) receives one line per epoch. */
COLLO_API collo_status collo_ged_train(const collo_database* db, const collo_config* config,
                                       const char* conllu_path, const char* dataset_path,
                                       const collo_train_params* params, collo_model** out, char** log);
COLLO_API collo_status collo_ged_eval(const collo_database* db, const collo_config* config,
                                      const collo_model* model, const char* conllu_path,
                                      const char* dataset_path, char** report);
COLLO_API collo_status collo_ged_check(const collo_database* db, const collo_config* config,
                                       const collo_model* model, const char* conllu_path,
                                       const char* sent_id, const char* verb, char** out);
COLLO_API collo_status collo_ged_dump_features(const collo_database* db, const collo_config* config,
                                               const char* conllu_path, const char* dataset_path,
                                               char** out);
COLLO_API collo_status collo_model_load(const char* path, collo_model** out);
COLLO_API collo_status collo_model_save(const collo_model* model, const char* path);
COLLO_API void collo_model_free(collo_model* model);

/* Metrics for a confusion matrix with "error" as the positive class, as a
 * Table-style report. */
COLLO_API collo_status collo_metrics_report(long tp, long fp, long fn, long tn, char** out);

#ifdef __cplusplus
}
#endif

#endif /* COLLO_COLLO_H_ */
