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

#include "collo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "collo/error.hpp"

namespace collo {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ArgumentError("config: " + key + " expects a number, got '" + v + "'");
  }
}

long long to_integer(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ArgumentError("config: " + key + " expects an integer, got '" + v + "'");
  }
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

std::string fmt(double d) {
  std::ostringstream o;
  o << std::setprecision(17) << d;
  return o.str();
}

std::string hex64(std::uint64_t h) {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

std::uint64_t file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a64(ss.str());
}

const char* mode_name(DepclusterMode m) {
  switch (m) {
    case DepclusterMode::kTwoStage: return "two-stage";
    case DepclusterMode::kSynSem: return "synsem";
    case DepclusterMode::kSyntactic: return "syntactic";
  }
  return "?";
}

}  // namespace

std::vector<std::string> config_keys() {
  return {"alpha",        "alpha_w",       "beta",        "beta_w",          "corpus",
          "fallback_dim", "jobs",          "max_examples", "max_instances",  "min_cluster_size",
          "min_pts",      "mode",          "output",      "path_cap",        "path_mode",
          "seed",         "sense_threshold", "sentence_embeddings", "sim_floor", "strength",
          "verbs",        "weights",       "word_embeddings", "word_identity"};
}

void PipelineConfig::set(const std::string& key, const std::string& raw, const std::string& base_dir) {
  const std::string v = trim(raw);
  if (key == "corpus") {
    corpus.clear();
    for (const auto& p : split_list(v)) corpus.push_back(resolve(p, base_dir));
  } else if (key == "sentence_embeddings") {
    sentence_embeddings = resolve(v, base_dir);
  } else if (key == "word_embeddings") {
    word_embeddings = resolve(v, base_dir);
  } else if (key == "output") {
    output = resolve(v, base_dir);
  } else if (key == "fallback_dim") {
    fallback_dim = static_cast<int>(to_integer(key, v));
  } else if (key == "verbs") {
    verbs = split_list(v);
  } else if (key == "sense_threshold") {
    sense_threshold = to_double(key, v);
  } else if (key == "min_cluster_size") {
    min_cluster_size = static_cast<int>(to_integer(key, v));
  } else if (key == "alpha") {
    similarity.alpha = to_double(key, v);
  } else if (key == "beta") {
    similarity.beta = to_double(key, v);
  } else if (key == "alpha_w") {
    similarity.alpha_w = to_double(key, v);
  } else if (key == "beta_w") {
    similarity.beta_w = to_double(key, v);
  } else if (key == "sim_floor") {
    similarity.sim_floor = to_double(key, v);
  } else if (key == "min_pts") {
    min_pts = static_cast<int>(to_integer(key, v));
  } else if (key == "mode") {
    if (v == "two-stage") mode = DepclusterMode::kTwoStage;
    else if (v == "synsem") mode = DepclusterMode::kSynSem;
    else if (v == "syntactic") mode = DepclusterMode::kSyntactic;
    else throw ArgumentError("config: mode must be two-stage, synsem or syntactic");
  } else if (key == "word_identity") {
    if (v == "lemma") word_identity = WordIdentity::kLemma;
    else if (v == "form") word_identity = WordIdentity::kForm;
    else throw ArgumentError("config: word_identity must be lemma or form");
  } else if (key == "strength") {
    if (v == "conditional") strength = StrengthMode::kConditional;
    else if (v == "literal") strength = StrengthMode::kLiteral;
    else throw ArgumentError("config: strength must be conditional or literal");
  } else if (key == "path_mode") {
    if (v == "greedy") path_mode = PathMode::kGreedy;
    else if (v == "exhaustive") path_mode = PathMode::kExhaustive;
    else throw ArgumentError("config: path_mode must be greedy or exhaustive");
  } else if (key == "path_cap") {
    path_cap = static_cast<size_t>(std::max(0LL, to_integer(key, v)));
  } else if (key == "max_instances") {
    max_instances = static_cast<size_t>(std::max(0LL, to_integer(key, v)));
  } else if (key == "max_examples") {
    max_examples = static_cast<size_t>(std::max(0LL, to_integer(key, v)));
  } else if (key == "weights") {
    auto parts = split_list(v);
    if (parts.size() != 5) throw ArgumentError("config: weights expects five comma-separated numbers");
    weights = {to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2]),
               to_double(key, parts[3]), to_double(key, parts[4])};
  } else if (key == "seed") {
    const long long s = to_integer(key, v);
    if (s < 0) throw ArgumentError("config: seed must be non-negative");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "jobs") {
    jobs = static_cast<int>(to_integer(key, v));
  } else {
    throw ArgumentError("config: unknown key '" + key + "'");
  }
}

void PipelineConfig::validate() const {
  similarity.validate();
  weights.validate();
  if (fallback_dim < 8) throw ArgumentError("config: fallback_dim must be at least 8");
  if (!(sense_threshold >= -1.0 && sense_threshold <= 1.0))
    throw ArgumentError("config: sense_threshold must lie in [-1, 1]");
  if (min_cluster_size < 1) throw ArgumentError("config: min_cluster_size must be positive");
  if (min_pts < 1) throw ArgumentError("config: min_pts must be positive");
  if (path_cap < 1) throw ArgumentError("config: path_cap must be positive");
  if (max_instances < 1) throw ArgumentError("config: max_instances must be positive");
  if (jobs < 1) throw ArgumentError("config: jobs must be positive");
}

std::string PipelineConfig::canonical() const {
  std::map<std::string, std::string> kv;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  kv["verbs"] = join(verbs);
  kv["fallback_dim"] = std::to_string(fallback_dim);
  kv["sense_threshold"] = fmt(sense_threshold);
  kv["min_cluster_size"] = std::to_string(min_cluster_size);
  kv["alpha"] = fmt(similarity.alpha);
  kv["beta"] = fmt(similarity.beta);
  kv["alpha_w"] = fmt(similarity.alpha_w);
  kv["beta_w"] = fmt(similarity.beta_w);
  kv["sim_floor"] = fmt(similarity.sim_floor);
  kv["min_pts"] = std::to_string(min_pts);
  kv["mode"] = mode_name(mode);
  kv["word_identity"] = word_identity == WordIdentity::kLemma ? "lemma" : "form";
  kv["strength"] = strength == StrengthMode::kConditional ? "conditional" : "literal";
  kv["path_mode"] = path_mode == PathMode::kGreedy ? "greedy" : "exhaustive";
  kv["path_cap"] = std::to_string(path_cap);
  kv["max_instances"] = std::to_string(max_instances);
  kv["max_examples"] = std::to_string(max_examples);
  kv["weights"] = fmt(weights.a) + "," + fmt(weights.b) + "," + fmt(weights.c) + "," +
                  fmt(weights.d) + "," + fmt(weights.e);
  kv["seed"] = std::to_string(seed);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string PipelineConfig::get(const std::string& key) const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  if (key == "corpus") return join(corpus);
  if (key == "sentence_embeddings") return sentence_embeddings;
  if (key == "word_embeddings") return word_embeddings;
  if (key == "output") return output;
  if (key == "jobs") return std::to_string(jobs);
  std::istringstream canon(canonical());
  for (std::string line; std::getline(canon, line);)
    if (line.compare(0, key.size() + 1, key + "=") == 0) return line.substr(key.size() + 1);
  throw ArgumentError("config: unknown key '" + key + "'");
}

PipelineConfig parse_config(std::istream& in, const std::string& base_dir) {
  PipelineConfig c;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
    try {
      c.set(trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return c;
}

PipelineConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse_config(in, std::filesystem::path(path).parent_path().string());
}

ClauseOptions clause_options(const PipelineConfig& config) {
  ClauseOptions o;
  o.word_identity = config.word_identity;
  return o;
}

Corpus::Corpus(std::vector<DependencyTree> trees) : trees_(std::move(trees)) {
  for (size_t i = 0; i < trees_.size(); ++i)
    if (!by_id_.emplace(trees_[i].sent_id(), i).second)
      throw InputError("duplicate sent_id '" + trees_[i].sent_id() + "'");
}

Corpus Corpus::load(const std::vector<std::string>& paths) {
  std::vector<DependencyTree> all;
  for (const auto& p : paths) {
    auto t = read_conllu_file(p);
    all.insert(all.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  return Corpus(std::move(all));
}

const DependencyTree* Corpus::find(const std::string& sent_id) const {
  auto it = by_id_.find(sent_id);
  return it == by_id_.end() ? nullptr : &trees_[it->second];
}

WordSim make_word_sim(const EmbeddingStore* store, int fallback_dim) {
  if (store) {
    WordSimilarity sim(store);
    return [sim](std::string_view a, std::string_view b) { return sim(a, b); };
  }
  struct Cache {
    int dim;
    std::mutex mu;
    std::unordered_map<std::string, Vector> vectors;
    Vector get(std::string_view w) {
      std::lock_guard<std::mutex> lock(mu);
      auto it = vectors.find(std::string(w));
      if (it == vectors.end()) it = vectors.emplace(std::string(w), fallback_embed(w, dim)).first;
      return it->second;
    }
  };
  auto cache = std::make_shared<Cache>();
  cache->dim = fallback_dim;
  return [cache](std::string_view a, std::string_view b) -> double {
    if (a == b) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    const Vector u = cache->get(a), v = cache->get(b);
    return std::clamp(cosine(u, v), 0.0, 1.0);
  };
}

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  const size_t workers = std::min<size_t>(std::max(1, jobs), std::max<size_t>(n, 1));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

struct VerbOutput {
  VerbEntry entry;
  VerbReport report;
  std::vector<std::string> warnings;
};

std::string sentence_text(const DependencyTree& t) {
  if (!t.text().empty()) return t.text();
  std::string s;
  for (const auto& tok : t.tokens()) s += tok.form;
  return s;
}

VerbOutput mine_verb(const PipelineConfig& config, const Corpus& corpus, const std::string& verb,
                     const EmbeddingStore* sentence_store, const WordSim& word_sim,
                     const CorpusCounts* counts) {
  VerbOutput out;
  out.entry.verb = verb;
  out.report.verb = verb;
  const ClauseOptions copts = clause_options(config);

  // (tree index, target token id): first verb-tagged occurrence per sentence.
  std::vector<std::pair<size_t, int>> instances;
  const auto& trees = corpus.trees();
  for (size_t i = 0; i < trees.size(); ++i) {
    for (const Token& t : trees[i].tokens()) {
      if (is_verb(t, copts) && trees[i].word(t.id, copts.word_identity) == verb) {
        instances.emplace_back(i, t.id);
        break;
      }
    }
  }
  out.report.instances = static_cast<long>(instances.size());
  if (instances.empty()) {
    out.warnings.push_back("verb '" + verb + "' has no instances in the corpus");
    return out;
  }
  if (instances.size() > config.max_instances) {
    std::mt19937_64 rng(config.seed ^ fnv1a64(verb));
    std::vector<size_t> keep(config.max_instances);
    for (size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    for (size_t i = keep.size(); i < instances.size(); ++i) {
      const size_t j = static_cast<size_t>(rng() % (i + 1));
      if (j < keep.size()) keep[j] = i;
    }
    std::sort(keep.begin(), keep.end());
    std::vector<std::pair<size_t, int>> sampled;
    for (size_t k : keep) sampled.push_back(instances[k]);
    instances = std::move(sampled);
  }
  out.report.sampled = static_cast<long>(instances.size());
  out.entry.total_instances = out.report.sampled;

  EmbeddingStore local(sentence_store ? sentence_store->dim() : config.fallback_dim);
  std::vector<std::string> ids;
  std::map<std::string, std::pair<size_t, int>> by_id;
  for (const auto& [ti, target] : instances) {
    const DependencyTree& tree = trees[ti];
    ids.push_back(tree.sent_id());
    by_id[tree.sent_id()] = {ti, target};
    if (sentence_store) {
      const Vector* v = sentence_store->find(tree.sent_id());
      if (!v) throw InputError("no sentence embedding for '" + tree.sent_id() + "'");
      local.insert(tree.sent_id(), *v);
    } else {
      local.insert(tree.sent_id(), fallback_embed(sentence_text(tree), config.fallback_dim));
    }
  }
  const auto senses = cluster_sentences(local, ids, config.sense_threshold);
  out.report.sense_clusters = static_cast<long>(senses.size());

  GenerationOptions gopts;
  gopts.path_mode = config.path_mode;
  gopts.path_cap = config.path_cap;
  gopts.strength = config.strength;
  gopts.corpus = counts;
  gopts.max_examples = config.max_examples;

  for (const SenseCluster& sense : senses) {
    if (sense.size() < config.min_cluster_size) {
      out.report.discarded_instances += sense.size();
      continue;
    }
    ++out.report.kept_sense_clusters;
    out.report.clustered_instances += sense.size();

    std::vector<ClauseStructure> clauses;
    for (const auto& id : sense.member_sent_ids) {
      const auto& [ti, target] = by_id.at(id);
      clauses.push_back(retrieve_clause(trees[ti], target, copts));
    }

    auto run = [&](const std::vector<int>& subset, SimilarityMode mode, const char* stage,
                   std::vector<int>* leftover) {
      std::vector<ClauseStructure> sub;
      for (int i : subset) sub.push_back(clauses[i]);
      SimilarityParams p = config.similarity;
      p.mode = mode;
      const ClusterResult r = depcluster_dbscan(sub, p, word_sim, config.min_pts);
      for (const auto& members : r.clusters) {
        std::vector<ClauseStructure> group;
        for (int m : members) group.push_back(sub[m]);
        auto col = generate_collostruction(group, verb, out.entry.total_instances, gopts);
        if (!col) continue;
        col->sense_cluster_id = sense.cluster_id;
        col->stage = stage;
        out.entry.collostructions.push_back(std::move(*col));
      }
      for (int o : r.outliers) leftover->push_back(subset[o]);
    };

    std::vector<int> all(clauses.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> outliers;
    switch (config.mode) {
      case DepclusterMode::kSynSem:
        run(all, SimilarityMode::kSynSem, "synsem", &outliers);
        break;
      case DepclusterMode::kSyntactic:
        run(all, SimilarityMode::kSyntactic, "syntactic", &outliers);
        break;
      case DepclusterMode::kTwoStage: {
        std::vector<int> first;
        run(all, SimilarityMode::kSynSem, "synsem", &first);
        if (!first.empty()) run(first, SimilarityMode::kSyntactic, "syntactic", &outliers);
        break;
      }
    }
    out.report.depcluster_outliers += static_cast<long>(outliers.size());
  }
  out.report.collostructions = static_cast<long>(out.entry.collostructions.size());
  if (out.entry.collostructions.empty())
    out.warnings.push_back("verb '" + verb + "' produced no collostructions");
  return out;
}

}  // namespace

MineResult mine(const PipelineConfig& config, const Corpus& corpus,
                const EmbeddingStore* sentence_store, const EmbeddingStore* word_store) {
  config.validate();
  if (config.verbs.empty()) throw ArgumentError("config: no verbs given");
  const WordSim word_sim = make_word_sim(word_store, config.fallback_dim);

  CorpusCounts counts;
  if (config.strength == StrengthMode::kLiteral) {
    for (const auto& t : corpus.trees())
      for (const auto& tok : t.tokens()) {
        ++counts.word_freq[t.word(tok.id, config.word_identity)];
        ++counts.total_tokens;
      }
  }

  std::vector<std::string> verbs = config.verbs;
  std::vector<VerbOutput> outputs(verbs.size());
  parallel_for(verbs.size(), config.jobs, [&](size_t i) {
    outputs[i] = mine_verb(config, corpus, verbs[i], sentence_store, word_sim,
                           config.strength == StrengthMode::kLiteral ? &counts : nullptr);
  });

  MineResult result;
  auto& m = result.database.manifest;
  m["tool"] = "collo";
  m["config"] = nlohmann::ordered_json::object();
  std::istringstream canon(config.canonical());
  for (std::string line; std::getline(canon, line);) {
    const auto eq = line.find('=');
    m["config"][line.substr(0, eq)] = line.substr(eq + 1);
  }
  std::string hash_input = config.canonical();
  for (const auto& p : config.corpus) hash_input += "corpus:" + hex64(file_hash(p)) + "\n";
  if (!config.sentence_embeddings.empty())
    hash_input += "sentence_embeddings:" + hex64(file_hash(config.sentence_embeddings)) + "\n";
  if (!config.word_embeddings.empty())
    hash_input += "word_embeddings:" + hex64(file_hash(config.word_embeddings)) + "\n";
  m["config_hash"] = hex64(fnv1a64(hash_input));
  m["sentences"] = corpus.trees().size();
  m["embeddings"] = {{"sentence", sentence_store ? "file" : "fallback"},
                     {"word", word_store ? "file" : "fallback"}};
  m["verbs"] = nlohmann::ordered_json::array();
  for (auto& o : outputs) {
    const auto& r = o.report;
    m["verbs"].push_back({{"verb", r.verb},
                          {"instances", r.instances},
                          {"sampled", r.sampled},
                          {"sense_clusters", r.sense_clusters},
                          {"kept_sense_clusters", r.kept_sense_clusters},
                          {"clustered_instances", r.clustered_instances},
                          {"discarded_instances", r.discarded_instances},
                          {"depcluster_outliers", r.depcluster_outliers},
                          {"collostructions", r.collostructions}});
    for (auto& w : o.warnings) result.warnings.push_back(w);
    result.reports.push_back(r);
    // Verbs the corpus never shows stay in the manifest only.
    if (r.instances > 0) result.database.verbs.push_back(std::move(o.entry));
  }
  m["warnings"] = result.warnings;
  return result;
}

MineResult mine(const PipelineConfig& config) {
  config.validate();
  if (config.corpus.empty()) throw ArgumentError("config: no corpus given");
  const Corpus corpus = Corpus::load(config.corpus);
  std::optional<EmbeddingStore> sentences, words;
  if (!config.sentence_embeddings.empty()) sentences = read_embeddings_file(config.sentence_embeddings);
  if (!config.word_embeddings.empty()) words = read_embeddings_file(config.word_embeddings);
  return mine(config, corpus, sentences ? &*sentences : nullptr, words ? &*words : nullptr);
}

std::vector<const Collostruction*> query(const Database& db, const std::string& verb,
                                         const QueryFilter& filter) {
  const VerbEntry* e = db.find(verb);
  if (!e) throw InputError("verb '" + verb + "' is not in the database");
  std::vector<const Collostruction*> out;
  for (const auto& c : e->collostructions) {
    if (filter.deprel) {
      bool hit = std::any_of(c.slots.begin(), c.slots.end(),
                             [&](const Slot& s) { return !s.key.is_focus() && s.key.deprel == *filter.deprel; });
      if (!hit) continue;
    }
    if (filter.substring) {
      bool hit = false;
      for (const auto& s : c.slots)
        for (const auto& x : s.collexemes)
          if (x.word.find(*filter.substring) != std::string::npos) hit = true;
      if (!hit) continue;
    }
    out.push_back(&c);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Collostruction* a, const Collostruction* b) { return a->p_col > b->p_col; });
  return out;
}

std::string format_collostruction(const Collostruction& c) {
  std::ostringstream o;
  o << std::setprecision(4);
  o << c.verb << "\tsense=" << c.sense_cluster_id << "\tstage=" << c.stage << "\tp_col=" << c.p_col
    << "\tsupport=" << c.support << "\tfocus=" << c.focus_deprel << '\n';
  for (size_t i = 0; i < c.slots.size(); ++i) {
    const Slot& s = c.slots[i];
    o << "  [" << i << "] " << to_string(s.key) << "\tp_slot=" << s.p_slot;
    const int e = c.head_edge(static_cast<int>(i));
    if (e >= 0) o << "\thead=" << c.edges[e].head;
    o << "\t";
    for (size_t k = 0; k < s.collexemes.size() && k < 8; ++k)
      o << (k ? " " : "") << s.collexemes[k].word << ':' << s.collexemes[k].p_lex;
    if (s.collexemes.size() > 8) o << " ...";
    o << '\n';
  }
  return o.str();
}

std::string describe_clauses(const DependencyTree& tree, const ClauseOptions& options,
                             const std::string& verb) {
  std::ostringstream o;
  for (const Token& t : tree.tokens()) {
    if (!is_verb(t, options)) continue;
    if (!verb.empty() && tree.word(t.id, options.word_identity) != verb) continue;
    const ClauseStructure c = retrieve_clause(tree, t.id, options);
    o << tree.sent_id() << '\t' << t.id << '\t' << c.verb << "\tstrategy=" << c.strategy << '\n';
    for (const auto& n : c.sequence())
      o << "  " << format_node(n) << '\t' << to_string(classify_edge(c, n)) << '\n';
  }
  return o.str();
}

GedAnalysis analyze_target(const DependencyTree& tree, int target_id, const GedContext& ctx) {
  if (!ctx.index) throw ArgumentError("GED context has no index");
  GedAnalysis a;
  a.target_id = target_id;
  a.clause = retrieve_clause(tree, target_id, ctx.clause);
  a.candidates = heuristic_search(*a.clause, *ctx.index);
  if (a.candidates.empty()) return a;
  a.top = select_top(*a.clause, a.candidates, *ctx.index, ctx.weights, ctx.similarity, ctx.word_sim);
  a.features = extract_features(*a.clause, ctx.index->get(a.top->id), a.top->alignment);
  return a;
}

const DependencyTree& instance_tree(const Corpus& corpus, const GedInstance& inst) {
  if (!inst.sent_id.empty()) {
    if (const DependencyTree* t = corpus.find(inst.sent_id)) return *t;
    throw InputError("no parsed sentence with sent_id '" + inst.sent_id + "'");
  }
  for (const auto& t : corpus.trees())
    if (t.text() == inst.text) return t;
  throw InputError("no parsed sentence matches instance text");
}

GedAnalysis analyze_instance(const DependencyTree& tree, const GedInstance& inst, const GedContext& ctx) {
  return analyze_target(tree, locate_target(tree, inst, ctx.clause), ctx);
}

std::vector<TrainingExample> build_examples(const Corpus& corpus,
                                            const std::vector<GedInstance>& instances,
                                            const GedContext& ctx, int jobs) {
  std::vector<TrainingExample> out(instances.size());
  parallel_for(instances.size(), jobs, [&](size_t i) {
    const auto& inst = instances[i];
    out[i].is_error = inst.is_error;
    out[i].features = analyze_instance(instance_tree(corpus, inst), inst, ctx).features;
  });
  return out;
}

}  // namespace collo
