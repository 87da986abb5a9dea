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

#ifndef COLLO_GED_HPP_
#define COLLO_GED_HPP_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "collo/clause.hpp"
#include "collo/database.hpp"
#include "collo/depcluster.hpp"

namespace collo {

// One position of a slot sequence as seen by the search patterns.
struct PatternItem {
  std::vector<std::string> words;
  std::string deprel;  // the focus carries "<deprel>-focus"
};

std::vector<PatternItem> pattern_items(const Collostruction& c);
std::vector<PatternItem> pattern_items(const ClauseStructure& clause);

enum class PatternCategory {
  kWordDepBigram = 0,     // ((w_i, d_i), (w_i+1, d_i+1))
  kWordBigramUnigram = 1, // (w_i, w_i+1) and w_i
  kDepBigram = 2,         // (d_i, d_i+1)
  kWordDepUnigram = 3,    // (w_i, d_i)
};
inline constexpr size_t kPatternCategories = 4;
const char* to_string(PatternCategory c);

using PatternUnit = std::string;
std::set<PatternUnit> pattern_units(const std::vector<PatternItem>& items, PatternCategory category);
// Human-readable form of an encoded unit.
std::string describe_unit(const PatternUnit& unit);

class CollostructionIndex {
 public:
  CollostructionIndex() = default;
  explicit CollostructionIndex(const Database& db);

  size_t size() const { return refs_.size(); }
  const Collostruction& get(int id) const { return *refs_.at(id).col; }
  const std::vector<int>& ids_for_verb(const std::string& verb) const;
  // Sorted, deduplicated collostruction ids; empty when the unit is unknown.
  const std::vector<int>& postings(PatternCategory category, const PatternUnit& unit) const;
  const std::unordered_map<PatternUnit, std::vector<int>>& table(PatternCategory category) const {
    return postings_[static_cast<size_t>(category)];
  }

 private:
  std::vector<CollostructionRef> refs_;
  std::map<std::string, std::vector<int>> by_verb_;
  std::array<std::unordered_map<PatternUnit, std::vector<int>>, kPatternCategories> postings_;
};

inline constexpr size_t kCandidatesPerPattern = 3;

// Per pattern category, the collostructions of the clause's verb with the
// most matching units (at least one; ties by support, then id). Returns the
// union in ascending id order; empty when the verb is unknown.
std::vector<int> heuristic_search(const ClauseStructure& clause, const CollostructionIndex& index,
                                  size_t per_pattern = kCandidatesPerPattern);

// Byte-level Levenshtein distance.
size_t edit_distance(std::string_view a, std::string_view b);
// 1 - distance / max length (1 when both are empty).
double relation_similarity(std::string_view a, std::string_view b);

// p_slot * rel_sim * (alpha_w * head_sim + beta_w * dep_sim).
double fuzzy_node_sim(const ClauseNode& node, const Collostruction& col, int slot,
                      const SimilarityParams& params, const WordSim& word_sim);

struct AlignedPair {
  int clause_index = 0;
  int col_index = 0;
  double similarity = 0.0;
};

struct Alignment {
  std::vector<AlignedPair> pairs;  // both indices strictly increasing
  double total() const;
  // Similarity of the pair touching this index, 0 when unaligned.
  double clause_similarity(int clause_index) const;
  double col_similarity(int col_index) const;
};

// Maximum-total monotone alignment of clause.sequence() against the slots.
// Zero-similarity pairs are never part of the result.
Alignment align(const ClauseStructure& clause, const Collostruction& col,
                const SimilarityParams& params, const WordSim& word_sim);

struct AsymmetricSimilarity {
  double sim2clause = 0.0;
  double sim2col = 0.0;
};

AsymmetricSimilarity asym_similarities(const Alignment& alignment, int clause_slots, int col_slots);
AsymmetricSimilarity asym_similarities(double z, int clause_slots, int col_slots);

struct CoverageDensity {
  double cov_clause = 0.0;
  double den_clause = 0.0;
  double den_col = 0.0;
};

CoverageDensity coverage_density(const Alignment& alignment, int clause_slots, int col_slots);

struct MatchWeights {
  double a = 0.2, b = 0.2, c = 0.2, d = 0.2, e = 0.2;
  void validate() const;
};

struct MatchScore {
  double sim2clause = 0.0;
  double sim2col = 0.0;
  double cov_clause = 0.0;
  double den_clause = 0.0;
  double den_col = 0.0;
  double combined = 0.0;
};

MatchScore match_score(const ClauseStructure& clause, const Collostruction& col,
                       const Alignment& alignment, const MatchWeights& weights);

struct TopMatch {
  int id = -1;
  Alignment alignment;
  MatchScore score;
};

TopMatch select_top(const ClauseStructure& clause, const std::vector<int>& candidates,
                    const CollostructionIndex& index, const MatchWeights& weights,
                    const SimilarityParams& params, const WordSim& word_sim);

struct FeatureVector {
  std::string core_dep_col;
  std::vector<std::pair<std::string, double>> deps_col;
  std::string core_dep_cls;
  std::vector<std::pair<std::string, double>> deps_cls;
};

// Only FOCUS>CHILD and HEAD>FOCUS entries, in slot / linear order.
FeatureVector extract_features(const ClauseStructure& clause, const Collostruction& col,
                               const Alignment& alignment);

std::string format_features(const FeatureVector& f);

// --- dataset ---------------------------------------------------------------

struct GedInstance {
  std::string text;
  std::optional<std::string> correction;
  std::string verb;
  int begin_offset = 0;  // code points, end exclusive
  int end_offset = 0;
  bool is_error = false;
  std::string sent_id;  // links to the parsed sentence; may be empty
};

// JSON Lines; one object per instance with keys text, correction (optional),
// verb, begin-offset, end-offset, label ("correct"|"error"), sent_id.
std::vector<GedInstance> parse_ged_dataset(std::istream& in);
std::vector<GedInstance> read_ged_dataset(const std::string& path);
std::string to_jsonl(const GedInstance& inst);

// Token id of the instance's verb: the verb-tagged token overlapping the
// offsets, else the first verb-tagged token whose word is the verb.
int locate_target(const DependencyTree& tree, const GedInstance& inst,
                  const ClauseOptions& options = {});

}  // namespace collo

#endif  // COLLO_GED_HPP_
