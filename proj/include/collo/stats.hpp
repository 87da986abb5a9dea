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

#ifndef COLLO_STATS_HPP_
#define COLLO_STATS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collo/database.hpp"
#include "collo/embedding.hpp"

namespace collo {

inline constexpr size_t kMinPowerLawSamples = 10;

struct PowerLawFit {
  double x_min = 0.0;
  double exponent = 0.0;
  size_t n_tail = 0;
  double ks = 0.0;  // Kolmogorov-Smirnov distance of the tail fit
};

struct PowerLawReport {
  PowerLawFit fit;
  double R = 0.0;  // normalized log-likelihood ratio, > 0 favours the power law
  double p = 1.0;
};

// Continuous maximum-likelihood exponent 1 + n / sum(ln(x / x_min)) over the
// samples >= x_min. Without x_min, every distinct sample value that leaves at
// least kMinPowerLawSamples in the tail is tried and the one minimizing the
// KS distance wins (ties: smallest x_min).
PowerLawFit fit_power_law(std::span<const double> samples,
                          std::optional<double> x_min = std::nullopt);

struct LikelihoodRatio {
  double R = 0.0;
  double p = 1.0;
};

// Power law vs exponential, both fitted by maximum likelihood on the tail
// above x_min. R is the log-likelihood ratio sum normalized by its standard
// deviation; p is the two-sided normal significance (Vuong).
LikelihoodRatio compare_power_exponential(std::span<const double> samples, double x_min);

PowerLawReport analyze_power_law(std::span<const double> samples,
                                 std::optional<double> x_min = std::nullopt);

struct SlotStat {
  std::string deprel;
  double occurrence_fraction = 0.0;
  double mean_p_slot = 0.0;
  long collostructions = 0;
};

// Over all collostructions of all verbs; focus slots excluded. Sorted by
// descending occurrence fraction, then deprel.
std::vector<SlotStat> slot_statistics(const Database& db);

struct CoherenceResult {
  double similarity = 0.0;
  size_t used = 0;
  std::vector<std::string> skipped;  // collexemes without embeddings
};

// Mean pairwise cosine of the slot's collexemes. `literal_denominator`
// divides the pair sum by N - 1 instead of the pair count.
CoherenceResult within_slot_similarity(const Slot& slot, const EmbeddingStore& word_embeddings,
                                       bool literal_denominator = false);

class SememeLexicon {
 public:
  // word -> sememes (tab, then comma-joined labels).
  void load_words(std::istream& in);
  // sememe -> parent sememe (tab separated). Rejects cycles.
  void load_hypernyms(std::istream& in);
  void add_word(const std::string& word, std::vector<std::string> sememes);
  void add_hypernym(const std::string& sememe, const std::string& parent);

  bool empty() const { return words_.empty(); }
  // Sememes of the word plus all their hypernyms, deduplicated, in
  // first-seen order. Empty when the word is unknown.
  std::vector<std::string> expand(const std::string& word) const;

 private:
  std::map<std::string, std::vector<std::string>> words_;
  std::map<std::string, std::string> parent_;
};

SememeLexicon read_sememe_lexicon(const std::string& words_path,
                                  const std::string& hypernyms_path = "");

inline const std::vector<std::string>& action_relations() {
  static const std::vector<std::string> rels{"xcomp",       "ccomp",     "nsubj", "dobj",
                                             "compound:vc", "nmod:prep", "conj"};
  return rels;
}

struct ActionSequence {
  std::string relation;  // e.g. "CHILD: XCOMP", "ANCESTOR: CCOMP"
  std::vector<std::pair<std::string, long>> sememes;  // top 5
};

// For the verb's collostructions: slots attached directly to the focus whose
// relation is one of action_relations(). A child slot contributes its own
// deprel; the focus's governor contributes the focus deprel under ANCESTOR.
// Collexemes are expanded to sememes + hypernyms and counted by occurrence.
std::vector<ActionSequence> action_sequences(const Database& db, const std::string& verb,
                                             const SememeLexicon& lexicon, size_t top_k = 5);

}  // namespace collo

#endif  // COLLO_STATS_HPP_
