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

#include <cmath>
#include <filesystem>
#include <random>

#include "collo/classifier.hpp"
#include "collo/error.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace collo;

namespace {

double accuracy(const Classifier& model, const std::vector<TrainingExample>& data) {
  long ok = 0;
  for (const auto& ex : data) ok += model.predict(&*ex.features).is_error == ex.is_error;
  return static_cast<double>(ok) / static_cast<double>(data.size());
}

ClassifierHyper quick(int epochs) {
  ClassifierHyper h;
  h.epochs = epochs;
  h.seed = 3;
  return h;
}

}  // namespace

TEST_CASE("decision rule") {
  CHECK_FALSE(decide_error(0.5, 0.5));
  CHECK_FALSE(decide_error(0.9, 0.1));
  CHECK(decide_error(0.2, 0.8));
}

TEST_CASE("vocabulary reserves id 0") {
  DeprelVocabulary v;
  CHECK(v.add("nsubj") == 1);
  CHECK(v.add("dobj") == 2);
  CHECK(v.add("nsubj") == 1);
  CHECK(v.id("dobj") == 2);
  CHECK(v.id("unseen") == 0);
  CHECK(v.size() == 3);
}

TEST_CASE("hyperparameters are validated") {
  ClassifierHyper h;
  CHECK_NOTHROW(h.validate());
  h.batch_size = 0;
  CHECK_THROWS_AS(h.validate(), Error);
  h = {};
  h.learning_rate = -1;
  CHECK_THROWS_AS(h.validate(), Error);
  h = {};
  h.resample_period = 0;
  CHECK_THROWS_AS(h.validate(), Error);
}

TEST_CASE("training learns a separable rule") {
  std::mt19937_64 rng(1);
  auto train = testing::synthetic_examples(rng, 400, 0.6);
  auto test = testing::synthetic_examples(rng, 200, 0.6);
  auto model = train_classifier(train, quick(60));
  CHECK(accuracy(model, test) >= 0.95);
  for (const auto& ex : test) {
    auto p = model.predict(&*ex.features);
    CHECK(p.c_prob + p.e_prob == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.is_error == decide_error(p.c_prob, p.e_prob));
    auto [lc, le] = model.logits(*ex.features);
    CHECK(p.is_error == (le > lc));
  }
}

TEST_CASE("training is deterministic given the seed") {
  std::mt19937_64 rng(2);
  auto data = testing::synthetic_examples(rng, 120, 0.6);
  auto a = train_classifier(data, quick(20));
  auto b = train_classifier(data, quick(20));
  CHECK(a.to_json().dump() == b.to_json().dump());
  auto h = quick(20);
  h.seed = 4;
  CHECK(train_classifier(data, h).to_json().dump() != a.to_json().dump());
}

TEST_CASE("error sample is redrawn on the resample period") {
  std::mt19937_64 rng(3);
  auto data = testing::synthetic_examples(rng, 100, 0.7);
  long errors = 0;
  for (const auto& ex : data) errors += ex.is_error;
  std::vector<EpochInfo> log;
  auto h = quick(25);
  h.resample_period = 10;
  train_classifier(data, h, [&](const EpochInfo& e) { log.push_back(e); });
  REQUIRE(log.size() == 25);
  for (size_t i = 1; i < log.size(); ++i) {
    const bool boundary = log[i].epoch % 10 == 0;
    CHECK((log[i].sample_hash != log[i - 1].sample_hash) == boundary);
    CHECK(std::isfinite(log[i].mean_loss));
  }
  CHECK(static_cast<long>(log[0].sample_size) == static_cast<long>(data.size()) - errors);
}

TEST_CASE("unknown verbs fall back to the training prior") {
  std::mt19937_64 rng(4);
  auto data = testing::synthetic_examples(rng, 60, 0.5);
  for (int i = 0; i < 30; ++i) data.push_back({std::nullopt, true});
  auto model = train_classifier(data, quick(5));
  long errors = 0;
  for (const auto& ex : data) errors += ex.is_error;
  CHECK(model.error_prior() == doctest::Approx(static_cast<double>(errors) / data.size()));
  auto p = model.predict(nullptr);
  CHECK(p.from_prior);
  CHECK(p.e_prob == doctest::Approx(model.error_prior()));
  CHECK(p.is_error);
}

TEST_CASE("single-class data is rejected") {
  std::mt19937_64 rng(5);
  auto data = testing::synthetic_examples(rng, 40, 0.0);
  CHECK_THROWS_AS(train_classifier(data, quick(2)), Error);
  data.push_back(testing::synthetic_examples(rng, 1, 1.0)[0]);
  CHECK_THROWS_AS(train_classifier(data, quick(2)), Error);
}

TEST_CASE("model files round trip") {
  std::mt19937_64 rng(6);
  auto data = testing::synthetic_examples(rng, 80, 0.5);
  auto model = train_classifier(data, quick(5));
  const auto path = std::filesystem::temp_directory_path() / "collo_model_test.json";
  write_classifier_file(path.string(), model);
  auto back = read_classifier_file(path.string());
  std::filesystem::remove(path);
  CHECK(back.to_json().dump() == model.to_json().dump());
  for (const auto& ex : data) {
    auto [a1, a2] = model.logits(*ex.features);
    auto [b1, b2] = back.logits(*ex.features);
    CHECK(a1 == b1);
    CHECK(a2 == b2);
  }
  auto j = model.to_json();
  j["format"] = "other";
  CHECK_THROWS_AS(Classifier::from_json(j), Error);
}

TEST_CASE("metrics from a confusion matrix") {
  auto e = evaluate_confusion(6, 2, 3, 9);
  CHECK(e.error.precision == doctest::Approx(0.75));
  CHECK(e.error.recall == doctest::Approx(2.0 / 3.0));
  CHECK(e.error.f1 == doctest::Approx(0.705882).epsilon(1e-5));
  CHECK(e.correct.precision == doctest::Approx(0.75));
  CHECK(e.correct.recall == doctest::Approx(9.0 / 11.0));
  CHECK(e.accuracy == doctest::Approx(0.75));
  CHECK(e.error.support == 9);
  CHECK(e.correct.support == 11);

  std::vector<bool> pred, gold;
  auto push = [&](bool p, bool g, int k) {
    for (int i = 0; i < k; ++i) {
      pred.push_back(p);
      gold.push_back(g);
    }
  };
  push(true, true, 6);
  push(true, false, 2);
  push(false, true, 3);
  push(false, false, 9);
  auto v = evaluate(pred, gold);
  CHECK(v.tp == 6);
  CHECK(v.fp == 2);
  CHECK(v.fn == 3);
  CHECK(v.tn == 9);
  CHECK(v.error.f1 == doctest::Approx(e.error.f1));

  auto perfect = evaluate({true, false}, {true, false});
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.error.f1 == 1.0);
  CHECK(perfect.correct.f1 == 1.0);
  CHECK_THROWS_AS(evaluate({true}, {true, false}), Error);
}

TEST_CASE("report layout") {
  auto text = format_evaluation(evaluate_confusion(6, 2, 3, 9), "sys");
  CHECK(text.find("Accuracy") != std::string::npos);
  CHECK(text.find("Verb Usage Errors") != std::string::npos);
  CHECK(text.find("sys\t0.750\t0.750\t0.818\t0.783\t0.750\t0.667\t0.706\n") != std::string::npos);
}
