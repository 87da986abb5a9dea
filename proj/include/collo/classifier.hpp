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

#ifndef COLLO_CLASSIFIER_HPP_
#define COLLO_CLASSIFIER_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "collo/ged.hpp"

namespace collo {

// Deprel vocabulary; id 0 is reserved for unknown labels.
class DeprelVocabulary {
 public:
  int add(const std::string& label);
  int id(const std::string& label) const;
  size_t size() const { return labels_.size() + 1; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::map<std::string, int> ids_;
  std::vector<std::string> labels_;
};

struct TrainingExample {
  std::optional<FeatureVector> features;  // absent for unknown verbs
  bool is_error = false;
};

struct ClassifierHyper {
  int embed_dim = 32;
  int hidden1 = 64;
  int hidden2 = 32;
  int batch_size = 32;
  double learning_rate = 1e-3;
  int epochs = 200;
  int resample_period = 50;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Prediction {
  double c_prob = 0.5;
  double e_prob = 0.5;
  bool is_error = false;  // c_prob - e_prob < 0
  bool from_prior = false;
};

// Decision rule on a probability pair: error iff c_prob - e_prob < 0.
bool decide_error(double c_prob, double e_prob);

struct EpochInfo {
  int epoch = 0;  // 0-based
  std::uint64_t sample_hash = 0;  // identifies the error-class sample in use
  size_t sample_size = 0;
  double mean_loss = 0.0;
};
using EpochCallback = std::function<void(const EpochInfo&)>;

class Classifier {
 public:
  Classifier() = default;

  // Input width of the feed-forward head.
  int input_dim() const { return 4 * hyper_.embed_dim + 6; }
  const ClassifierHyper& hyper() const { return hyper_; }
  double error_prior() const { return error_prior_; }

  // Falls back to the training error prior when features are absent.
  Prediction predict(const FeatureVector* features) const;
  // The two output logits (correct, error).
  std::pair<double, double> logits(const FeatureVector& features) const;

  nlohmann::ordered_json to_json() const;
  static Classifier from_json(const nlohmann::ordered_json& j);

  friend Classifier train_classifier(std::span<const TrainingExample>, const ClassifierHyper&,
                                     const EpochCallback&);

 private:
  struct Forward;
  void encode(const FeatureVector& f, std::vector<double>& x, Forward* trace) const;
  void init(const ClassifierHyper& hyper, std::uint64_t seed);

  ClassifierHyper hyper_;
  DeprelVocabulary vocab_;
  double error_prior_ = 0.5;
  // Row-major parameter blocks.
  std::vector<double> emb_;  // vocab x embed_dim
  std::vector<double> w1_, b1_, w2_, b2_, w3_, b3_;
};

// Mini-batch Adam on cross-entropy. Each epoch uses every correct-class
// example plus an equal-size sample of error-class examples (all of them
// when there are fewer), redrawn every resample_period epochs. Examples
// without features only contribute to the prior. Deterministic given seed.
// Throws ArgumentError when a class has fewer than two examples.
Classifier train_classifier(std::span<const TrainingExample> examples, const ClassifierHyper& hyper,
                            const EpochCallback& on_epoch = {});

void write_classifier_file(const std::string& path, const Classifier& model);
Classifier read_classifier_file(const std::string& path);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
};

struct Evaluation {
  long tp = 0, fp = 0, fn = 0, tn = 0;  // with "error" as the positive class
  double accuracy = 0.0;
  ClassMetrics correct;
  ClassMetrics error;
};

// predicted[i] / gold[i] are true for the error class.
Evaluation evaluate(const std::vector<bool>& predicted, const std::vector<bool>& gold);
Evaluation evaluate_confusion(long tp, long fp, long fn, long tn);

// Tab-separated report: overall accuracy, then precision/recall/F-score for correct usage and for errors.
std::string format_evaluation(const Evaluation& e, const std::string& system = "collo");

}  // namespace collo

#endif  // COLLO_CLASSIFIER_HPP_
