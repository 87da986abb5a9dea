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

#ifndef COLLO_PIPELINE_HPP_
#define COLLO_PIPELINE_HPP_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collo/classifier.hpp"
#include "collo/clause.hpp"
#include "collo/colgen.hpp"
#include "collo/database.hpp"
#include "collo/depcluster.hpp"
#include "collo/embedding.hpp"
#include "collo/ged.hpp"
#include "collo/sense_cluster.hpp"

namespace collo {

enum class DepclusterMode { kTwoStage, kSynSem, kSyntactic };

inline constexpr size_t kDefaultMaxInstances = 40000;

// Flat key=value configuration. Every key can also be set programmatically
// (and from the command line) through set().
struct PipelineConfig {
  std::vector<std::string> corpus;  // CoNLL-U files
  std::string sentence_embeddings;  // empty: fallback encoder
  std::string word_embeddings;      // empty: fallback encoder
  int fallback_dim = kDefaultFallbackDim;
  std::vector<std::string> verbs;
  double sense_threshold = kDefaultSenseThreshold;
  int min_cluster_size = kDefaultMinClusterSize;
  SimilarityParams similarity;
  int min_pts = kDefaultMinPts;
  DepclusterMode mode = DepclusterMode::kTwoStage;
  WordIdentity word_identity = WordIdentity::kLemma;
  StrengthMode strength = StrengthMode::kConditional;
  PathMode path_mode = PathMode::kGreedy;
  size_t path_cap = kDefaultPathCap;
  size_t max_instances = kDefaultMaxInstances;
  size_t max_examples = 5;
  MatchWeights weights;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output;

  // Relative paths are resolved against base_dir when it is nonempty.
  // Throws ArgumentError for unknown keys or malformed values.
  void set(const std::string& key, const std::string& value, const std::string& base_dir = "");
  // Current value in the same textual form set() accepts.
  std::string get(const std::string& key) const;
  // Throws ArgumentError on inconsistent settings.
  void validate() const;
  // Sorted key=value lines of every setting that affects mining output.
  std::string canonical() const;
};

// Reads "key = value" lines; '#' starts a comment.
PipelineConfig parse_config(std::istream& in, const std::string& base_dir = "");
PipelineConfig read_config_file(const std::string& path);
std::vector<std::string> config_keys();

ClauseOptions clause_options(const PipelineConfig& config);

// Corpus plus lookup by sent_id. Duplicate sent_ids are an input error.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<DependencyTree> trees);
  static Corpus load(const std::vector<std::string>& paths);

  const std::vector<DependencyTree>& trees() const { return trees_; }
  const DependencyTree* find(const std::string& sent_id) const;

 private:
  std::vector<DependencyTree> trees_;
  std::map<std::string, size_t> by_id_;
};

// Word similarity over a word-embedding file, or the fallback encoder when
// no store is given. Safe to share between threads.
WordSim make_word_sim(const EmbeddingStore* store, int fallback_dim);

struct VerbReport {
  std::string verb;
  long instances = 0;           // matching sentences before sampling
  long sampled = 0;             // instances used
  long sense_clusters = 0;
  long kept_sense_clusters = 0;
  long clustered_instances = 0; // members of kept sense clusters
  long discarded_instances = 0; // members of sense clusters below min size
  long depcluster_outliers = 0;
  long collostructions = 0;
};

struct MineResult {
  Database database;
  std::vector<VerbReport> reports;
  std::vector<std::string> warnings;
};

// Runs the full mining flow. Inputs are read from the configured files.
MineResult mine(const PipelineConfig& config);
// Same flow over already loaded inputs. `sentence_store` / `word_store` may be
// null to use the fallback encoder.
MineResult mine(const PipelineConfig& config, const Corpus& corpus,
                const EmbeddingStore* sentence_store, const EmbeddingStore* word_store);

struct QueryFilter {
  std::optional<std::string> deprel;     // some slot has this deprel
  std::optional<std::string> substring;  // some collexeme contains it
};

// Collostructions of `verb`, p_col descending (stable). Throws InputError
// for an unknown verb.
std::vector<const Collostruction*> query(const Database& db, const std::string& verb,
                                         const QueryFilter& filter = {});
std::string format_collostruction(const Collostruction& c);

// Clause listing for every verb-tagged token (or only `verb`) of a sentence.
std::string describe_clauses(const DependencyTree& tree, const ClauseOptions& options,
                             const std::string& verb = "");

// --- verb-usage error detection flows --------------------------------------

struct GedContext {
  const CollostructionIndex* index = nullptr;
  SimilarityParams similarity;
  MatchWeights weights;
  ClauseOptions clause;
  WordSim word_sim;
};

struct GedAnalysis {
  int target_id = 0;
  std::optional<ClauseStructure> clause;
  std::vector<int> candidates;
  std::optional<TopMatch> top;
  std::optional<FeatureVector> features;  // absent when the verb is unknown
};

GedAnalysis analyze_target(const DependencyTree& tree, int target_id, const GedContext& ctx);
GedAnalysis analyze_instance(const DependencyTree& tree, const GedInstance& inst, const GedContext& ctx);

// Finds the parsed sentence of an instance: by sent_id, else by exact text.
const DependencyTree& instance_tree(const Corpus& corpus, const GedInstance& inst);

std::vector<TrainingExample> build_examples(const Corpus& corpus,
                                            const std::vector<GedInstance>& instances,
                                            const GedContext& ctx, int jobs = 1);

// Runs fn(i) for i in [0, n) on up to `jobs` threads; the first exception
// (lowest index) is rethrown after all workers finish.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn);

}  // namespace collo

#endif  // COLLO_PIPELINE_HPP_
