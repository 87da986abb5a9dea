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

#ifndef COLLO_REPORTS_HPP_
#define COLLO_REPORTS_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collo/classifier.hpp"
#include "collo/database.hpp"
#include "collo/ged.hpp"
#include "collo/pipeline.hpp"
#include "collo/stats.hpp"

namespace collo {

// Tab-separated text reports. Each starts with a header line.

std::string report_powerlaw(std::span<const double> samples, std::optional<double> x_min = std::nullopt);

enum class PercentLevel { kSense, kCollostruction };
// Per verb, the share (in percent) of its instances held by each sense
// cluster or each collostruction, pooled over all verbs.
std::vector<double> database_percentages(const Database& db, PercentLevel level);

std::string report_slots(const Database& db);
// Without a store, collexemes are embedded by the fallback encoder.
std::string report_coherence(const Database& db, const EmbeddingStore* words, int fallback_dim,
                             bool literal_denominator = false);
// Empty verb: every verb in the database.
std::string report_actions(const Database& db, const std::string& verb, const SememeLexicon& lexicon,
                           size_t top_k = 5);

std::string report_index(const CollostructionIndex& index);

// Everything the detection flows need, derived from a database and config.
class GedResources {
 public:
  GedResources(const Database& db, const PipelineConfig& config);
  GedResources(const GedResources&) = delete;
  GedResources& operator=(const GedResources&) = delete;

  const CollostructionIndex& index() const { return index_; }
  const GedContext& context() const { return ctx_; }

 private:
  CollostructionIndex index_;
  std::optional<EmbeddingStore> words_;
  GedContext ctx_;
};

// One line per instance: id, label, candidate count, top id, features.
std::string report_features(const Corpus& corpus, const std::vector<GedInstance>& instances,
                            const GedResources& res, int jobs = 1);

std::string report_check(const DependencyTree& tree, const std::string& verb, const GedResources& res,
                         const Classifier& model);

struct EvalOutcome {
  Evaluation evaluation;
  std::vector<Prediction> predictions;
};
EvalOutcome evaluate_dataset(const Corpus& corpus, const std::vector<GedInstance>& instances,
                             const GedResources& res, const Classifier& model, int jobs = 1);

}  // namespace collo

#endif  // COLLO_REPORTS_HPP_
