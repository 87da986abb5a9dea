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

#include "collo/collo.h"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "collo/classifier.hpp"
#include "collo/error.hpp"
#include "collo/pipeline.hpp"
#include "collo/reports.hpp"

struct collo_config {
  collo::PipelineConfig value;
};
struct collo_database {
  collo::Database value;
};
struct collo_model {
  collo::Classifier value;
};

namespace {

thread_local std::string g_last_error;

collo_status status_for(collo::ErrorKind kind) {
  switch (kind) {
    case collo::ErrorKind::kInput: return COLLO_ERR_INPUT;
    case collo::ErrorKind::kArgument: return COLLO_ERR_ARG;
    case collo::ErrorKind::kIo: return COLLO_ERR_IO;
    case collo::ErrorKind::kInvariant: return COLLO_ERR_INTERNAL;
  }
  return COLLO_ERR_INTERNAL;
}

template <typename F>
collo_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const collo::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return COLLO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return COLLO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return COLLO_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

template <typename T>
void need(const T* p, const char* what) {
  if (!p) throw collo::ArgumentError(std::string(what) + " must not be NULL");
}

std::string str_or(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

const char* collo_version(void) { return "1.0.0"; }
const char* collo_last_error(void) { return g_last_error.c_str(); }
void collo_string_free(char* s) { std::free(s); }

collo_status collo_config_new(collo_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new collo_config{};
    return COLLO_OK;
  });
}

collo_status collo_config_load(const char* path, collo_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto c = std::make_unique<collo_config>();
    c->value = collo::read_config_file(path);
    *out = c.release();
    return COLLO_OK;
  });
}

collo_status collo_config_set(collo_config* config, const char* key, const char* value) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(value, "value");
    config->value.set(key, value);
    return COLLO_OK;
  });
}

collo_status collo_config_get(const collo_config* config, const char* key, char** out) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(out, "out");
    put(out, config->value.get(key));
    return COLLO_OK;
  });
}

collo_status collo_config_dump(const collo_config* config, char** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    put(out, config->value.canonical());
    return COLLO_OK;
  });
}

collo_status collo_config_keys(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string text;
    for (const auto& k : collo::config_keys()) text += k + "\n";
    put(out, text);
    return COLLO_OK;
  });
}

void collo_config_free(collo_config* config) { delete config; }

collo_status collo_mine(const collo_config* config, collo_database** out, char** report) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    collo::MineResult r = collo::mine(config->value);
    for (const auto& v : r.database.verbs)
      for (const auto& c : v.collostructions) {
        auto problems = collo::validate_collostruction(c);
        if (!problems.empty())
          throw collo::InvariantError("generated collostruction for '" + v.verb + "' is invalid: " + problems[0]);
      }
    if (report) {
      std::ostringstream o;
      o << "verb\tinstances\tsampled\tsense_clusters\tkept\tclustered\tdiscarded\toutliers\tcollostructions\n";
      for (const auto& v : r.reports)
        o << v.verb << '\t' << v.instances << '\t' << v.sampled << '\t' << v.sense_clusters << '\t'
          << v.kept_sense_clusters << '\t' << v.clustered_instances << '\t' << v.discarded_instances
          << '\t' << v.depcluster_outliers << '\t' << v.collostructions << '\n';
      for (const auto& w : r.warnings) o << "warning\t" << w << '\n';
      put(report, o.str());
    }
    *out = new collo_database{std::move(r.database)};
    return COLLO_OK;
  });
}

collo_status collo_database_load(const char* path, collo_database** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto db = std::make_unique<collo_database>();
    db->value = collo::read_database_file(path);
    *out = db.release();
    return COLLO_OK;
  });
}

collo_status collo_database_parse(const char* json, collo_database** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto db = std::make_unique<collo_database>();
    db->value = collo::parse_database(json);
    *out = db.release();
    return COLLO_OK;
  });
}

collo_status collo_database_save(const collo_database* db, const char* path) {
  return guarded([&] {
    need(db, "db");
    need(path, "path");
    collo::write_database_file(path, db->value);
    return COLLO_OK;
  });
}

collo_status collo_database_serialize(const collo_database* db, char** out) {
  return guarded([&] {
    need(db, "db");
    need(out, "out");
    put(out, collo::serialize_database(db->value));
    return COLLO_OK;
  });
}

collo_status collo_database_validate(const collo_database* db, char** out) {
  return guarded([&] {
    need(db, "db");
    const auto problems = collo::validate_database(db->value);
    std::string text;
    for (const auto& p : problems) text += p + "\n";
    put(out, text);
    return problems.empty() ? COLLO_OK : COLLO_ERR_INPUT;
  });
}

size_t collo_database_count(const collo_database* db) {
  return db ? db->value.collostruction_count() : 0;
}

void collo_database_free(collo_database* db) { delete db; }

collo_status collo_query(const collo_database* db, const char* verb, const char* deprel,
                         const char* substring, char** out) {
  return guarded([&] {
    need(db, "db");
    need(verb, "verb");
    need(out, "out");
    collo::QueryFilter f;
    if (deprel && *deprel) f.deprel = collo::to_lower_ascii(deprel);
    if (substring && *substring) f.substring = substring;
    std::string text;
    for (const auto* c : collo::query(db->value, verb, f)) text += collo::format_collostruction(*c);
    put(out, text);
    return COLLO_OK;
  });
}

collo_status collo_clause(const collo_config* config, const char* conllu_path, const char* sent_id,
                          const char* verb, char** out) {
  return guarded([&] {
    need(conllu_path, "conllu_path");
    need(out, "out");
    const collo::PipelineConfig cfg = config ? config->value : collo::PipelineConfig{};
    const auto opts = collo::clause_options(cfg);
    const collo::Corpus corpus = collo::Corpus::load({conllu_path});
    std::string text;
    if (sent_id && *sent_id) {
      const auto* tree = corpus.find(sent_id);
      if (!tree) throw collo::InputError(std::string("no sentence with sent_id '") + sent_id + "'");
      text = collo::describe_clauses(*tree, opts, str_or(verb));
    } else {
      for (const auto& t : corpus.trees()) text += collo::describe_clauses(t, opts, str_or(verb));
    }
    put(out, text);
    return COLLO_OK;
  });
}

collo_status collo_stats_powerlaw(const double* samples, size_t n, double x_min, char** out) {
  return guarded([&] {
    if (n > 0) need(samples, "samples");
    need(out, "out");
    std::optional<double> xm;
    if (x_min > 0) xm = x_min;
    put(out, collo::report_powerlaw(std::span<const double>(samples, n), xm));
    return COLLO_OK;
  });
}

collo_status collo_stats_powerlaw_db(const collo_database* db, const char* level, double x_min, char** out) {
  return guarded([&] {
    need(db, "db");
    need(out, "out");
    const std::string lv = str_or(level);
    collo::PercentLevel pl;
    if (lv == "sense") pl = collo::PercentLevel::kSense;
    else if (lv == "collostruction" || lv.empty()) pl = collo::PercentLevel::kCollostruction;
    else throw collo::ArgumentError("level must be 'sense' or 'collostruction'");
    const auto samples = collo::database_percentages(db->value, pl);
    std::optional<double> xm;
    if (x_min > 0) xm = x_min;
    put(out, collo::report_powerlaw(samples, xm));
    return COLLO_OK;
  });
}

collo_status collo_stats_slots(const collo_database* db, char** out) {
  return guarded([&] {
    need(db, "db");
    need(out, "out");
    put(out, collo::report_slots(db->value));
    return COLLO_OK;
  });
}

collo_status collo_stats_coherence(const collo_database* db, const collo_config* config,
                                   int literal_denominator, char** out) {
  return guarded([&] {
    need(db, "db");
    need(out, "out");
    const collo::PipelineConfig cfg = config ? config->value : collo::PipelineConfig{};
    std::optional<collo::EmbeddingStore> words;
    if (!cfg.word_embeddings.empty()) words = collo::read_embeddings_file(cfg.word_embeddings);
    put(out, collo::report_coherence(db->value, words ? &*words : nullptr, cfg.fallback_dim,
                                     literal_denominator != 0));
    return COLLO_OK;
  });
}

collo_status collo_stats_actions(const collo_database* db, const char* sememes_path,
                                 const char* hypernyms_path, const char* verb, size_t top_k, char** out) {
  return guarded([&] {
    need(db, "db");
    need(sememes_path, "sememes_path");
    need(out, "out");
    const auto lex = collo::read_sememe_lexicon(sememes_path, str_or(hypernyms_path));
    put(out, collo::report_actions(db->value, str_or(verb), lex, top_k ? top_k : 5));
    return COLLO_OK;
  });
}

collo_train_params collo_train_params_default(void) {
  const collo::ClassifierHyper h;
  return collo_train_params{h.epochs, h.batch_size, h.learning_rate, h.seed, h.resample_period};
}

collo_status collo_ged_index(const collo_database* db, char** out) {
  return guarded([&] {
    need(db, "db");
    need(out, "out");
    put(out, collo::report_index(collo::CollostructionIndex(db->value)));
    return COLLO_OK;
  });
}

collo_status collo_ged_train(const collo_database* db, const collo_config* config, const char* conllu_path,
                             const char* dataset_path, const collo_train_params* params, collo_model** out,
                             char** log) {
  return guarded([&] {
    need(db, "db");
    need(conllu_path, "conllu_path");
    need(dataset_path, "dataset_path");
    need(out, "out");
    const collo::PipelineConfig cfg = config ? config->value : collo::PipelineConfig{};
    const collo_train_params p = params ? *params : collo_train_params_default();
    collo::ClassifierHyper h;
    h.epochs = p.epochs;
    h.batch_size = p.batch_size;
    h.learning_rate = p.learning_rate;
    h.seed = p.seed;
    h.resample_period = p.resample_period;

    const collo::Corpus corpus = collo::Corpus::load({conllu_path});
    const auto instances = collo::read_ged_dataset(dataset_path);
    const collo::GedResources res(db->value, cfg);
    const auto examples = collo::build_examples(corpus, instances, res.context(), cfg.jobs);

    std::ostringstream o;
    size_t featured = 0;
    for (const auto& e : examples) featured += e.features ? 1 : 0;
    o << "# instances=" << examples.size() << " with_features=" << featured << '\n';
    o << "epoch\tsample_hash\tsample_size\tloss\n";
    auto m = std::make_unique<collo_model>();
    m->value = collo::train_classifier(examples, h, [&](const collo::EpochInfo& e) {
      o << e.epoch << '\t' << std::hex << std::setw(16) << std::setfill('0') << e.sample_hash << std::dec
        << std::setfill(' ') << '\t' << e.sample_size << '\t' << std::setprecision(6) << e.mean_loss << '\n';
    });
    put(log, o.str());
    *out = m.release();
    return COLLO_OK;
  });
}

collo_status collo_ged_eval(const collo_database* db, const collo_config* config, const collo_model* model,
                            const char* conllu_path, const char* dataset_path, char** report) {
  return guarded([&] {
    need(db, "db");
    need(model, "model");
    need(conllu_path, "conllu_path");
    need(dataset_path, "dataset_path");
    need(report, "report");
    const collo::PipelineConfig cfg = config ? config->value : collo::PipelineConfig{};
    const collo::Corpus corpus = collo::Corpus::load({conllu_path});
    const auto instances = collo::read_ged_dataset(dataset_path);
    const collo::GedResources res(db->value, cfg);
    const auto r = collo::evaluate_dataset(corpus, instances, res, model->value, cfg.jobs);
    std::ostringstream o;
    o << collo::format_evaluation(r.evaluation);
    o << "# tp=" << r.evaluation.tp << " fp=" << r.evaluation.fp << " fn=" << r.evaluation.fn
      << " tn=" << r.evaluation.tn << '\n';
    put(report, o.str());
    return COLLO_OK;
  });
}

collo_status collo_ged_check(const collo_database* db, const collo_config* config, const collo_model* model,
                             const char* conllu_path, const char* sent_id, const char* verb, char** out) {
  return guarded([&] {
    need(db, "db");
    need(model, "model");
    need(conllu_path, "conllu_path");
    need(out, "out");
    const collo::PipelineConfig cfg = config ? config->value : collo::PipelineConfig{};
    const collo::Corpus corpus = collo::Corpus::load({conllu_path});
    const collo::GedResources res(db->value, cfg);
    std::string text;
    if (sent_id && *sent_id) {
      const auto* tree = corpus.find(sent_id);
      if (!tree) throw collo::InputError(std::string("no sentence with sent_id '") + sent_id + "'");
      text = collo::report_check(*tree, str_or(verb), res, model->value);
    } else {
      if (corpus.trees().size() != 1) throw collo::ArgumentError("sent_id is required for multi-sentence input");
      text = collo::report_check(corpus.trees()[0], str_or(verb), res, model->value);
    }
    put(out, text);
    return COLLO_OK;
  });
}

collo_status collo_ged_dump_features(const collo_database* db, const collo_config* config,
                                     const char* conllu_path, const char* dataset_path, char** out) {
  return guarded([&] {
    need(db, "db");
    need(conllu_path, "conllu_path");
    need(dataset_path, "dataset_path");
    need(out, "out");
    const collo::PipelineConfig cfg = config ? config->value : collo::PipelineConfig{};
    const collo::Corpus corpus = collo::Corpus::load({conllu_path});
    const auto instances = collo::read_ged_dataset(dataset_path);
    const collo::GedResources res(db->value, cfg);
    put(out, collo::report_features(corpus, instances, res, cfg.jobs));
    return COLLO_OK;
  });
}

collo_status collo_model_load(const char* path, collo_model** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto m = std::make_unique<collo_model>();
    m->value = collo::read_classifier_file(path);
    *out = m.release();
    return COLLO_OK;
  });
}

collo_status collo_model_save(const collo_model* model, const char* path) {
  return guarded([&] {
    need(model, "model");
    need(path, "path");
    collo::write_classifier_file(path, model->value);
    return COLLO_OK;
  });
}

void collo_model_free(collo_model* model) { delete model; }

collo_status collo_metrics_report(long tp, long fp, long fn, long tn, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto e = collo::evaluate_confusion(tp, fp, fn, tn);
    std::ostringstream o;
    o << collo::format_evaluation(e);
    o << "# tp=" << tp << " fp=" << fp << " fn=" << fn << " tn=" << tn << '\n';
    put(out, o.str());
    return COLLO_OK;
  });
}

}  // extern "C"
