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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "collo/error.hpp"
#include "collo/stats.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace collo;
using testing::make_collostruction;

namespace {

std::vector<double> pareto_sample(uint64_t seed, size_t n, double alpha = 2.5) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = oracle::pareto(rng, alpha, 1.0);
  return v;
}

}  // namespace

TEST_CASE("power-law exponent from a Pareto sample") {
  auto xs = pareto_sample(1, 1000);
  auto fit = fit_power_law(xs, 1.0);
  CHECK(fit.exponent >= 2.3);
  CHECK(fit.exponent <= 2.7);
  CHECK(fit.n_tail == 1000);

  double logs = 0.0;
  for (double x : xs) logs += std::log(x);
  CHECK(fit.exponent == doctest::Approx(1.0 + 1000.0 / logs).epsilon(1e-12));

  auto scanned = fit_power_law(xs);
  CHECK(scanned.exponent > 2.0);
  CHECK(scanned.exponent < 3.0);
  CHECK(scanned.n_tail >= kMinPowerLawSamples);
}

TEST_CASE("power-law fit errors") {
  std::vector<double> same(50, 2.0);
  CHECK_THROWS_AS(fit_power_law(same), Error);
  CHECK_THROWS_AS(fit_power_law(same, 2.0), Error);
  auto xs = pareto_sample(2, 100);
  CHECK_THROWS_AS(fit_power_law(xs, 1e9), Error);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>(5, 1.0)), Error);
  xs[3] = -1.0;
  CHECK_THROWS_AS(fit_power_law(xs), Error);
}

TEST_CASE("likelihood ratio separates Pareto from exponential") {
  int pareto_wins = 0, exp_wins = 0;
  for (uint64_t t = 0; t < 20; ++t) {
    if (compare_power_exponential(pareto_sample(100 + t, 1000), 1.0).R > 0) ++pareto_wins;
    std::mt19937_64 rng(500 + t);
    std::vector<double> e(1000);
    for (double& x : e) x = oracle::exponential(rng, 1.0, 1.0);
    if (compare_power_exponential(e, 1.0).R < 0) ++exp_wins;
  }
  CHECK(pareto_wins >= 18);
  CHECK(exp_wins >= 18);
}

TEST_CASE("likelihood ratio is scale invariant") {
  auto xs = pareto_sample(7, 400);
  auto base = compare_power_exponential(xs, 1.0);
  for (double k : {0.01, 3.0, 1000.0}) {
    std::vector<double> scaled(xs);
    for (double& x : scaled) x *= k;
    auto r = compare_power_exponential(scaled, k);
    CHECK(std::abs(r.R - base.R) <= 1e-9);
    CHECK(std::abs(r.p - base.p) <= 1e-9);
  }
  CHECK(base.p >= 0.0);
  CHECK(base.p <= 1.0);
}

TEST_CASE("slot statistics") {
  Database db;
  VerbEntry v{"解决", 10, {}};
  v.collostructions.push_back(make_collostruction("解决", {{"nsubj", {{"他", 2}}}}, {{"dobj", {{"问题", 4}}}}, 4));
  v.collostructions.push_back(make_collostruction("解决", {}, {{"dobj", {{"矛盾", 2}}}}, 4));
  db.verbs.push_back(v);
  auto stats = slot_statistics(db);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].deprel == "dobj");
  CHECK(stats[0].occurrence_fraction == 1.0);
  CHECK(stats[0].mean_p_slot == doctest::Approx(0.75));
  CHECK(stats[1].deprel == "nsubj");
  CHECK(stats[1].occurrence_fraction == 0.5);
  CHECK_THROWS_AS(slot_statistics(Database{}), Error);
}

TEST_CASE("within-slot similarity") {
  EmbeddingStore e(2);
  e.insert("a", {1.0, 0.0});
  e.insert("b", {0.6, 0.8});
  e.insert("c", {1.0, 0.0});
  Slot s;
  s.collexemes = {{"a", 1, 0.5}, {"b", 1, 0.5}};
  CHECK(within_slot_similarity(s, e).similarity == doctest::Approx(0.6));
  s.collexemes = {{"a", 1, 0.5}, {"c", 1, 0.5}};
  CHECK(within_slot_similarity(s, e).similarity == doctest::Approx(1.0));

  s.collexemes = {{"a", 1, 0.5}, {"b", 1, 0.5}, {"c", 1, 0.5}, {"zz", 1, 0.5}};
  auto r = within_slot_similarity(s, e);
  CHECK(r.used == 3);
  CHECK(r.skipped == std::vector<std::string>{"zz"});
  CHECK(r.similarity == doctest::Approx((0.6 + 1.0 + 0.6) / 3.0));
  CHECK(within_slot_similarity(s, e, true).similarity == doctest::Approx((0.6 + 1.0 + 0.6) / 2.0));

  auto rev = s;
  std::reverse(rev.collexemes.begin(), rev.collexemes.end());
  CHECK(within_slot_similarity(rev, e).similarity == doctest::Approx(r.similarity).epsilon(1e-12));

  s.collexemes = {{"a", 1, 1.0}};
  CHECK_THROWS_AS(within_slot_similarity(s, e), Error);
  s.collexemes = {{"a", 1, 1.0}, {"zz", 1, 1.0}};
  CHECK_THROWS_AS(within_slot_similarity(s, e), Error);
}

TEST_CASE("within-slot similarity ignores collexeme order") {
  std::mt19937_64 rng(12);
  EmbeddingStore e(4);
  std::vector<std::string> words;
  for (int i = 0; i < 8; ++i) {
    words.push_back("w" + std::to_string(i));
    e.insert(words.back(), {oracle::uniform(rng) + 0.1, oracle::uniform(rng), oracle::uniform(rng), oracle::uniform(rng)});
  }
  for (int t = 0; t < 50; ++t) {
    Slot s;
    for (const auto& w : words)
      if (rng() % 2) s.collexemes.push_back({w, 1, 0.5});
    if (s.collexemes.size() < 2) continue;
    const double base = within_slot_similarity(s, e).similarity;
    std::shuffle(s.collexemes.begin(), s.collexemes.end(), rng);
    CHECK(std::abs(within_slot_similarity(s, e).similarity - base) <= 1e-12);
  }
}

TEST_CASE("sememe lexicon") {
  SememeLexicon lex;
  std::istringstream words("问题\tproblem\n难题\tdifficulty,problem\n# comment\n\n");
  lex.load_words(words);
  std::istringstream hyper("difficulty\tproblem\nproblem\tsituation\n");
  lex.load_hypernyms(hyper);
  CHECK(lex.expand("难题") == std::vector<std::string>{"difficulty", "problem", "situation"});
  CHECK(lex.expand("不存在").empty());

  SememeLexicon cyc;
  cyc.add_hypernym("a", "b");
  CHECK_THROWS_AS(cyc.add_hypernym("b", "a"), Error);
  CHECK_THROWS_AS(cyc.add_hypernym("c", "c"), Error);
  std::istringstream bad("no tab here\n");
  CHECK_THROWS_AS(cyc.load_words(bad), Error);

  auto fixture = read_sememe_lexicon(testing::fixture("sememes.tsv"), testing::fixture("hypernyms.tsv"));
  CHECK_FALSE(fixture.empty());
  CHECK_THROWS_AS(read_sememe_lexicon("/nonexistent/sememes.tsv"), Error);
}

TEST_CASE("action sequences count sememes per relation") {
  SememeLexicon lex;
  lex.add_word("想", {"willing"});
  lex.add_word("愿意", {"willing"});
  lex.add_word("乐意", {"willing", "happy"});
  lex.add_word("他", {"human"});
  Database db;
  VerbEntry v{"体验", 10, {}};
  auto c = make_collostruction("体验", {{"nsubj", {{"他", 2}, {"陌生", 1}}}},
                               {{"xcomp", {{"想", 1}, {"愿意", 1}, {"乐意", 1}}}, {"advmod", {{"想", 1}}}});
  v.collostructions.push_back(c);
  db.verbs.push_back(v);

  auto seqs = action_sequences(db, "体验", lex);
  REQUIRE(seqs.size() == 2);
  CHECK(seqs[0].relation == "CHILD: XCOMP");
  CHECK(seqs[0].sememes[0] == std::make_pair(std::string("willing"), 3L));
  CHECK(seqs[0].sememes[1] == std::make_pair(std::string("happy"), 1L));
  CHECK(seqs[1].relation == "CHILD: NSUBJ");
  CHECK(seqs[1].sememes == std::vector<std::pair<std::string, long>>{{"human", 2}});
  CHECK(action_sequences(db, "体验", lex, 1)[0].sememes.size() == 1);

  // The focus hanging from a governor reports under ANCESTOR.
  auto g = c;
  g.focus_deprel = "ccomp";
  g.edges = {{0, 1, "nsubj", 1.0}, {1, 2, "ccomp", 1.0}, {3, 2, "advmod", 1.0}};
  db.verbs[0].collostructions = {g};
  bool ancestor = false;
  for (const auto& s : action_sequences(db, "体验", lex)) ancestor = ancestor || s.relation == "ANCESTOR: CCOMP";
  CHECK(ancestor);

  CHECK_THROWS_AS(action_sequences(db, "体验", SememeLexicon{}), Error);
  CHECK_THROWS_AS(action_sequences(db, "走", lex), Error);
}
