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

// Command-line front end. Talks to the library only through collo.h.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "collo/collo.h"

namespace {

// Exit codes: 0 success, 1 input/usage error, 2 internal invariant violation.
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct Failure {
  collo_status status;
};

void check(collo_status s) {
  if (s != COLLO_OK) throw Failure{s};
}

int exit_code(collo_status s) { return s == COLLO_ERR_INTERNAL ? kExitInternal : kExitInput; }

// RAII wrappers over the opaque handles.
struct Text {
  char* p = nullptr;
  ~Text() { collo_string_free(p); }
  std::string str() const { return p ? p : ""; }
};
struct Config {
  collo_config* p = nullptr;
  ~Config() { collo_config_free(p); }
};
struct Db {
  collo_database* p = nullptr;
  ~Db() { collo_database_free(p); }
};
struct Model {
  collo_model* p = nullptr;
  ~Model() { collo_model_free(p); }
};

struct Globals {
  std::string config_path;
  std::map<std::string, std::string> flags;  // config key -> value from --<key>
  std::vector<std::string> overrides;
  std::optional<long long> seed;
  std::optional<int> jobs;
};

void load_config(const Globals& g, Config& c) {
  if (!g.config_path.empty()) {
    check(collo_config_load(g.config_path.c_str(), &c.p));
  } else {
    check(collo_config_new(&c.p));
  }
  for (const auto& [key, value] : g.flags)
    if (!value.empty()) check(collo_config_set(c.p, key.c_str(), value.c_str()));
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      throw Failure{COLLO_ERR_ARG};
    }
    check(collo_config_set(c.p, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  if (g.seed) check(collo_config_set(c.p, "seed", std::to_string(*g.seed).c_str()));
  if (g.jobs) check(collo_config_set(c.p, "jobs", std::to_string(*g.jobs).c_str()));
}

void load_db(const std::string& path, Db& db) { check(collo_database_load(path.c_str(), &db.p)); }

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    throw Failure{COLLO_ERR_IO};
  }
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      std::cerr << "error: not a number: '" << tok << "'\n";
      throw Failure{COLLO_ERR_INPUT};
    }
  }
  return out;
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verb collostruction mining and verb-usage error detection"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "Flat key=value configuration file");
  app.add_option("--set", g.overrides, "Override a configuration key (key=value)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--jobs", g.jobs, "Worker threads");

  // One flag per configuration key, e.g. --sense-threshold, --min-pts.
  {
    Text keys;
    if (collo_config_keys(&keys.p) != COLLO_OK) {
      std::cerr << "error: " << collo_last_error() << "\n";
      return kExitInternal;
    }
    std::istringstream in(keys.str());
    const std::set<std::string> taken{"seed", "jobs", "output", "corpus", "verbs"};
    for (std::string key; std::getline(in, key);) {
      if (key.empty() || taken.count(key)) continue;
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      app.add_option(flag, g.flags[key], "Configuration key '" + key + "'");
    }
  }

  // mine
  auto* mine = app.add_subcommand("mine", "Mine collostructions into a database file");
  std::string mine_out;
  std::vector<std::string> mine_corpus, mine_verbs;
  mine->add_option("-o,--output", mine_out, "Database path (overrides config 'output')");
  mine->add_option("--corpus", mine_corpus, "CoNLL-U files");
  mine->add_option("--verbs", mine_verbs, "Target verbs");

  // query
  auto* query = app.add_subcommand("query", "List a verb's collostructions");
  std::string q_db, q_verb, q_deprel, q_contains;
  query->add_option("--db", q_db)->required();
  query->add_option("--verb", q_verb)->required();
  query->add_option("--deprel", q_deprel, "Keep collostructions with this slot relation");
  query->add_option("--contains", q_contains, "Keep collostructions with a matching collexeme");

  // validate
  auto* validate = app.add_subcommand("validate", "Check a database against the structural invariants");
  std::string v_db;
  validate->add_option("--db", v_db)->required();

  // clause
  auto* clause = app.add_subcommand("clause", "Show retrieved clause structures");
  std::string c_corpus, c_sentence, c_verb;
  clause->add_option("--corpus", c_corpus)->required();
  clause->add_option("--sentence", c_sentence, "sent_id");
  clause->add_option("--verb", c_verb);

  // stats
  auto* stats = app.add_subcommand("stats", "Statistical analyses");
  stats->require_subcommand(1);
  auto* s_pl = stats->add_subcommand("powerlaw", "Power-law fit and comparison with an exponential");
  std::string pl_samples, pl_db, pl_level = "collostruction";
  double pl_xmin = 0.0;
  s_pl->add_option("--samples", pl_samples, "Whitespace-separated positive numbers");
  s_pl->add_option("--db", pl_db);
  s_pl->add_option("--level", pl_level)->check(CLI::IsMember({"sense", "collostruction"}));
  s_pl->add_option("--xmin", pl_xmin, "Fixed x_min (default: KS selection)");
  auto* s_slots = stats->add_subcommand("slots", "Slot occurrence statistics");
  std::string sl_db;
  s_slots->add_option("--db", sl_db)->required();
  auto* s_coh = stats->add_subcommand("coherence", "Within-slot collexeme similarity");
  std::string co_db;
  bool co_literal = false;
  s_coh->add_option("--db", co_db)->required();
  s_coh->add_flag("--literal", co_literal, "Divide the pair sum by N-1");
  auto* s_act = stats->add_subcommand("actions", "Prototypical action sequences");
  std::string ac_db, ac_sememes, ac_hyper, ac_verb;
  size_t ac_top = 5;
  s_act->add_option("--db", ac_db)->required();
  s_act->add_option("--sememes", ac_sememes)->required();
  s_act->add_option("--hypernyms", ac_hyper);
  s_act->add_option("--verb", ac_verb);
  s_act->add_option("--top", ac_top);

  // ged
  auto* ged = app.add_subcommand("ged", "Verb-usage error detection");
  ged->require_subcommand(1);
  std::string g_db, g_corpus, g_data, g_model, g_sentence, g_verb, g_log;
  collo_train_params tp = collo_train_params_default();
  auto* g_index = ged->add_subcommand("index", "Summarize the search index");
  g_index->add_option("--db", g_db)->required();
  auto* g_train = ged->add_subcommand("train", "Train the classifier");
  g_train->add_option("--db", g_db)->required();
  g_train->add_option("--corpus", g_corpus, "Parsed dataset sentences (CoNLL-U)")->required();
  g_train->add_option("--data", g_data, "Dataset (JSON Lines)")->required();
  g_train->add_option("--model", g_model, "Output model path")->required();
  g_train->add_option("--epochs", tp.epochs);
  g_train->add_option("--lr", tp.learning_rate);
  g_train->add_option("--batch", tp.batch_size);
  g_train->add_option("--resample", tp.resample_period);
  g_train->add_option("--log", g_log, "Write the epoch log here instead of stdout");
  auto* g_eval = ged->add_subcommand("eval", "Evaluate on a labelled dataset");
  g_eval->add_option("--db", g_db)->required();
  g_eval->add_option("--corpus", g_corpus)->required();
  g_eval->add_option("--data", g_data)->required();
  g_eval->add_option("--model", g_model)->required();
  auto* g_check = ged->add_subcommand("check", "Classify the verbs of one parsed sentence");
  g_check->add_option("--db", g_db)->required();
  g_check->add_option("--corpus", g_corpus)->required();
  g_check->add_option("--model", g_model)->required();
  g_check->add_option("--sentence", g_sentence, "sent_id");
  g_check->add_option("--verb", g_verb);
  auto* g_dump = ged->add_subcommand("dump-features", "Export the feature table");
  g_dump->add_option("--db", g_db)->required();
  g_dump->add_option("--corpus", g_corpus)->required();
  g_dump->add_option("--data", g_data)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    Config cfg;
    load_config(g, cfg);
    Text out;
    if (*mine) {
      if (!mine_corpus.empty()) {
        std::string joined;
        for (const auto& c : mine_corpus) joined += (joined.empty() ? "" : ",") + c;
        check(collo_config_set(cfg.p, "corpus", joined.c_str()));
      }
      if (!mine_verbs.empty()) {
        std::string joined;
        for (const auto& v : mine_verbs) joined += (joined.empty() ? "" : ",") + v;
        check(collo_config_set(cfg.p, "verbs", joined.c_str()));
      }
      if (!mine_out.empty()) check(collo_config_set(cfg.p, "output", mine_out.c_str()));
      Db db;
      check(collo_mine(cfg.p, &db.p, &out.p));
      Text path_text;
      check(collo_config_get(cfg.p, "output", &path_text.p));
      const std::string path = path_text.str();
      if (path.empty()) {
        std::cerr << "error: no output path (use --output or config key 'output')\n";
        return kExitInput;
      }
      check(collo_database_save(db.p, path.c_str()));
      std::cout << out.str();
      std::cerr << "wrote " << collo_database_count(db.p) << " collostructions to " << path << '\n';
    } else if (*query) {
      Db db;
      load_db(q_db, db);
      check(collo_query(db.p, q_verb.c_str(), opt(q_deprel), opt(q_contains), &out.p));
      std::cout << out.str();
    } else if (*validate) {
      Db db;
      load_db(v_db, db);
      const collo_status s = collo_database_validate(db.p, &out.p);
      std::cout << (s == COLLO_OK ? "ok\n" : out.str());
      if (s != COLLO_OK) return exit_code(s);
    } else if (*clause) {
      check(collo_clause(cfg.p, c_corpus.c_str(), opt(c_sentence), opt(c_verb), &out.p));
      std::cout << out.str();
    } else if (*s_pl) {
      if (!pl_samples.empty()) {
        const auto xs = read_samples(pl_samples);
        check(collo_stats_powerlaw(xs.data(), xs.size(), pl_xmin, &out.p));
      } else if (!pl_db.empty()) {
        Db db;
        load_db(pl_db, db);
        check(collo_stats_powerlaw_db(db.p, pl_level.c_str(), pl_xmin, &out.p));
      } else {
        std::cerr << "error: stats powerlaw needs --samples or --db\n";
        return kExitInput;
      }
      std::cout << out.str();
    } else if (*s_slots) {
      Db db;
      load_db(sl_db, db);
      check(collo_stats_slots(db.p, &out.p));
      std::cout << out.str();
    } else if (*s_coh) {
      Db db;
      load_db(co_db, db);
      check(collo_stats_coherence(db.p, cfg.p, co_literal ? 1 : 0, &out.p));
      std::cout << out.str();
    } else if (*s_act) {
      Db db;
      load_db(ac_db, db);
      check(collo_stats_actions(db.p, ac_sememes.c_str(), opt(ac_hyper), opt(ac_verb), ac_top, &out.p));
      std::cout << out.str();
    } else if (*g_index) {
      Db db;
      load_db(g_db, db);
      check(collo_ged_index(db.p, &out.p));
      std::cout << out.str();
    } else if (*g_train) {
      Db db;
      load_db(g_db, db);
      if (g.seed) tp.seed = static_cast<uint64_t>(*g.seed);
      Model model;
      check(collo_ged_train(db.p, cfg.p, g_corpus.c_str(), g_data.c_str(), &tp, &model.p, &out.p));
      check(collo_model_save(model.p, g_model.c_str()));
      if (g_log.empty()) {
        std::cout << out.str();
      } else {
        std::ofstream log(g_log);
        log << out.str();
      }
    } else if (*g_eval) {
      Db db;
      load_db(g_db, db);
      Model model;
      check(collo_model_load(g_model.c_str(), &model.p));
      check(collo_ged_eval(db.p, cfg.p, model.p, g_corpus.c_str(), g_data.c_str(), &out.p));
      std::cout << out.str();
    } else if (*g_check) {
      Db db;
      load_db(g_db, db);
      Model model;
      check(collo_model_load(g_model.c_str(), &model.p));
      check(collo_ged_check(db.p, cfg.p, model.p, g_corpus.c_str(), opt(g_sentence), opt(g_verb), &out.p));
      std::cout << out.str();
    } else if (*g_dump) {
      Db db;
      load_db(g_db, db);
      check(collo_ged_dump_features(db.p, cfg.p, g_corpus.c_str(), g_data.c_str(), &out.p));
      std::cout << out.str();
    }
  } catch (const Failure& f) {
    const char* msg = collo_last_error();
    if (msg && *msg) std::cerr << "error: " << msg << '\n';
    return exit_code(f.status);
  }
  return 0;
}
