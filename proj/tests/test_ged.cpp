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

#include "collo/conllu.hpp"
#include "collo/embedding.hpp"
#include "collo/error.hpp"
#include "collo/ged.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace collo;
using testing::make_clause;
using testing::make_collostruction;

namespace {

double exact(std::string_view a, std::string_view b) { return a == b ? 1.0 : 0.0; }

double hashed(std::string_view a, std::string_view b) {
  if (a == b) return 1.0;
  std::string key(std::min(a, b));
  key += '|';
  key += std::max(a, b);
  return static_cast<double>(fnv1a64(key) % 1000) / 1000.0;
}

Database single(Collostruction c) {
  Database db;
  db.verbs.push_back({c.verb, c.support, {c}});
  return db;
}

// Levenshtein by the textbook recurrence over a full table.
double oracle_rel(const std::string& a, const std::string& b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
  const double m = static_cast<double>(std::max(a.size(), b.size()));
  return m == 0 ? 1.0 : 1.0 - d[a.size()][b.size()] / m;
}

double oracle_fuzzy(const ClauseNode& n, const Collostruction& c, int j, const WordSim& ws) {
  const Slot& s = c.slots[j];
  const std::string rel = s.key.is_focus() ? c.focus_deprel : s.key.deprel;
  double head = 0.0;
  bool has_head = false;
  for (const auto& e : c.edges)
    if (e.dependent == j) {
      has_head = true;
      for (const auto& x : c.slots[e.head].collexemes) head = std::max(head, ws(n.head_form, x.word));
    }
  if (!has_head) head = ws(n.head_form, kRootWord);
  double dep = 0.0;
  for (const auto& x : s.collexemes) dep = std::max(dep, ws(n.dep_form, x.word));
  return s.p_slot * oracle_rel(n.deprel, rel) * (0.5 * head + 0.5 * dep);
}

ClauseStructure random_clause(std::mt19937_64& rng, int max_side) {
  static const std::vector<std::string> deprels{"nsubj", "dobj", "advmod", "nmod:prep", "aux", "ccomp"};
  static const std::vector<std::string> words{"他", "我", "问题", "办法", "已经", "了", "在", "家"};
  std::vector<testing::NodeSpec> left, right;
  for (int k = static_cast<int>(rng() % (max_side + 1)); k > 0; --k)
    left.push_back({deprels[rng() % deprels.size()], words[rng() % words.size()]});
  for (int k = static_cast<int>(rng() % (max_side + 1)); k > 0; --k)
    right.push_back({deprels[rng() % deprels.size()], words[rng() % words.size()]});
  return make_clause(rng() % 2 ? "解决" : "体验", left, right);
}

}  // namespace

TEST_CASE("index holds dependency bigrams around the focus") {
  auto db = single(make_collostruction("体验", {{"nsubj", {{"他", 1}}}}, {{"dobj", {{"生活", 1}}}}));
  CollostructionIndex index(db);
  CHECK(index.size() == 1);
  std::set<std::string> bigrams;
  for (const auto& [unit, ids] : index.table(PatternCategory::kDepBigram)) bigrams.insert(describe_unit(unit));
  CHECK(bigrams == std::set<std::string>{"D:nsubj/root-focus", "D:root-focus/dobj"});

  Database twice = db;
  twice.verbs[0].collostructions.push_back(twice.verbs[0].collostructions[0]);
  CollostructionIndex dup(twice);
  for (size_t c = 0; c < kPatternCategories; ++c)
    for (const auto& [unit, ids] : dup.table(static_cast<PatternCategory>(c))) {
      CHECK(ids == std::vector<int>{0, 1});
    }

  CollostructionIndex empty{Database{}};
  CHECK(empty.size() == 0);
  CHECK(empty.table(PatternCategory::kWordDepBigram).empty());
  auto clause = make_clause("体验", {{"nsubj", "他"}}, {});
  CHECK(heuristic_search(clause, empty).empty());
}

TEST_CASE("identical clause finds its collostruction") {
  auto db = single(make_collostruction("体验", {{"nsubj", {{"他", 1}}}}, {{"dobj", {{"生活", 1}}}}));
  CollostructionIndex index(db);
  auto clause = make_clause("体验", {{"nsubj", "他"}}, {{"dobj", "生活"}});
  CHECK(heuristic_search(clause, index) == std::vector<int>{0});
  clause.verb = "走";
  CHECK(heuristic_search(clause, index).empty());
}

TEST_CASE("heuristic search equals the full-scan oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto db = testing::random_database(rng, 5 + static_cast<int>(rng() % 96));
    CollostructionIndex index(db);
    std::vector<const Collostruction*> all;
    for (const auto& ref : flatten(db)) all.push_back(ref.col);
    for (int q = 0; q < 10; ++q) {
      auto clause = random_clause(rng, 3);
      CHECK(heuristic_search(clause, index) == oracle::full_scan_search(clause, all));
    }
  }
}

TEST_CASE("relation similarity") {
  CHECK(edit_distance("dobj", "iobj") == 1);
  CHECK(relation_similarity("dobj", "iobj") == doctest::Approx(0.75));
  CHECK(relation_similarity("nsubj", "nsubj") == 1.0);
  CHECK(relation_similarity("", "") == 1.0);
  CHECK(relation_similarity("ab", "") == 0.0);
}

TEST_CASE("fuzzy node similarity") {
  auto col = make_collostruction("体验", {{"nsubj", {{"他", 2}, {"我", 1}}}}, {{"dobj", {{"生活", 4}}}}, 4);
  SimilarityParams p;
  ClauseNode n{1, 2, "nsubj", "体验", "我", Side::kLeft};
  // p_slot = 3/4, head matches the focus collexeme, dependent matches a collexeme.
  CHECK(fuzzy_node_sim(n, col, 0, p, exact) == doctest::Approx(0.75));
  n.dep_form = "你";
  CHECK(fuzzy_node_sim(n, col, 0, p, exact) == doctest::Approx(0.75 * 0.5));
  ClauseNode i{3, 2, "iobj", "体验", "生活", Side::kRight};
  CHECK(fuzzy_node_sim(i, col, 2, p, exact) == doctest::Approx(0.75));

  col.slots[0].p_slot = 0.0;
  CHECK(fuzzy_node_sim(n, col, 0, p, exact) == 0.0);

  ClauseNode focus{2, 0, "root", kRootWord, "体验", Side::kFocus};
  CHECK(fuzzy_node_sim(focus, col, 1, p, exact) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fuzzy_node_sim(focus, col, 9, p, exact), Error);
}

TEST_CASE("alignment of identical and disjoint sequences") {
  auto col = make_collostruction("体验", {{"nsubj", {{"他", 5}}}}, {{"dobj", {{"生活", 5}}}}, 5);
  auto clause = make_clause("体验", {{"nsubj", "他"}}, {{"dobj", "生活"}});
  SimilarityParams p;
  auto a = align(clause, col, p, exact);
  REQUIRE(a.pairs.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(a.pairs[k].clause_index == k);
    CHECK(a.pairs[k].col_index == k);
    CHECK(a.pairs[k].similarity == doctest::Approx(1.0));
  }
  auto other = make_clause("体验", {{"xx", "a"}}, {}, "yy");
  CHECK(align(other, col, p, exact).pairs.empty());
}

TEST_CASE("alignment equals exhaustive enumeration") {
  std::mt19937_64 rng(5);
  SimilarityParams p;
  for (int trial = 0; trial < 300; ++trial) {
    auto db = testing::random_database(rng, 1);
    const auto& col = db.verbs[0].collostructions.empty() ? db.verbs[1].collostructions[0]
                                                           : db.verbs[0].collostructions[0];
    auto clause = random_clause(rng, 3);
    auto seq = clause.sequence();
    auto a = align(clause, col, p, hashed);
    const double want = oracle::best_monotone_matching(
        static_cast<int>(seq.size()), static_cast<int>(col.slots.size()),
        [&](int i, int j) { return oracle_fuzzy(seq[i], col, j, hashed); });
    CHECK(std::abs(a.total() - want) <= 1e-9);
    for (size_t k = 0; k < a.pairs.size(); ++k) {
      CHECK(a.pairs[k].similarity > 0.0);
      CHECK(a.pairs[k].similarity <= 1.0);
      if (k) {
        CHECK(a.pairs[k].clause_index > a.pairs[k - 1].clause_index);
        CHECK(a.pairs[k].col_index > a.pairs[k - 1].col_index);
      }
    }
  }
}

TEST_CASE("asymmetric similarities") {
  auto r = asym_similarities(2.0, 4, 6);
  CHECK(r.sim2col == doctest::Approx(2.0 / 5.8).epsilon(1e-12));
  CHECK(r.sim2clause == doctest::Approx(2.0 / 4.2).epsilon(1e-12));
  auto full = asym_similarities(3.0, 3, 3);
  CHECK(full.sim2col == 1.0);
  CHECK(full.sim2clause == 1.0);
  auto none = asym_similarities(0.0, 2, 5);
  CHECK(none.sim2col == 0.0);
  CHECK(none.sim2clause == 0.0);
  CHECK_THROWS_AS(asym_similarities(0.0, 0, 0), Error);

  Alignment a;
  a.pairs = {{0, 0, 1.5}, {1, 2, 0.5}};  // the first is clamped to 1
  auto c = asym_similarities(a, 4, 6);
  CHECK(c.sim2col == doctest::Approx(1.5 / (1.5 + 0.25 + 4.05)));
}

TEST_CASE("asymmetric similarity properties") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + static_cast<int>(rng() % 8);
    const int n = 1 + static_cast<int>(rng() % 8);
    const double z1 = oracle::uniform(rng) * std::min(m, n);
    const double z2 = z1 + oracle::uniform(rng) * (std::min(m, n) - z1);
    auto a = asym_similarities(z1, m, n), b = asym_similarities(z2, m, n);
    CHECK(a.sim2col <= b.sim2col + 1e-12);
    CHECK(a.sim2clause <= b.sim2clause + 1e-12);
    for (double v : {a.sim2col, a.sim2clause, b.sim2col, b.sim2clause}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
    auto eq = asym_similarities(z1, m, m);
    CHECK(eq.sim2col == doctest::Approx(eq.sim2clause).epsilon(1e-12));
  }
}

TEST_CASE("coverage and density") {
  Alignment full;
  for (int i = 0; i < 5; ++i) full.pairs.push_back({i, i, 1.0});
  auto f = coverage_density(full, 5, 5);
  CHECK(f.cov_clause == 1.0);
  CHECK(f.den_clause == doctest::Approx(0.8));
  CHECK(f.den_col == doctest::Approx(0.8));

  auto e = coverage_density(Alignment{}, 3, 4);
  CHECK(e.cov_clause == 0.0);
  CHECK(e.den_clause == 0.0);
  CHECK(e.den_col == 0.0);

  Alignment gaps;
  gaps.pairs = {{1, 0, 1.0}, {3, 1, 1.0}};
  auto g = coverage_density(gaps, 4, 2);
  CHECK(g.cov_clause == 0.5);
  CHECK(g.den_clause == 0.0);
  CHECK(g.den_col == 0.5);
  CHECK_THROWS_AS(coverage_density(gaps, 0, 2), Error);
}

TEST_CASE("top match selection") {
  Database db;
  db.verbs.push_back({"体验", 10, {}});
  auto& cs = db.verbs[0].collostructions;
  cs.push_back(make_collostruction("体验", {}, {{"dobj", {{"生活", 5}}}}, 5));
  cs.push_back(make_collostruction("体验", {{"nsubj", {{"他", 5}}}}, {{"dobj", {{"生活", 5}}}}, 5));
  cs.push_back(make_collostruction("体验", {{"nsubj", {{"他", 7}}}}, {{"dobj", {{"生活", 7}}}}, 7));
  CollostructionIndex index(db);
  auto clause = make_clause("体验", {{"nsubj", "他"}}, {{"dobj", "生活"}});
  SimilarityParams p;
  MatchWeights w;
  auto top = select_top(clause, {0, 1}, index, w, p, exact);
  CHECK(top.id == 1);
  CHECK(top.score.combined > 0.0);
  CHECK(select_top(clause, {0}, index, w, p, exact).id == 0);
  // 1 and 2 tie on score; higher support wins.
  CHECK(select_top(clause, {0, 1, 2}, index, w, p, exact).id == 2);

  CHECK_THROWS_AS(select_top(clause, {}, index, w, p, exact), Error);
  w.a = 0.5;
  CHECK_THROWS_AS(select_top(clause, {0}, index, w, p, exact), Error);
}

TEST_CASE("feature extraction keeps focus children and governor") {
  auto tree = read_conllu_file(testing::fixture("three.conllu"))[2];
  auto clause = retrieve_clause(tree, 6);  // 解决 under 帮助
  Collostruction col = make_collostruction("解决", {{"nsubj", {{"你", 2}}}, {"ccomp", {{"帮助", 2}}}},
                                           {{"dobj", {{"问题", 2}}}}, 2);
  col.focus_deprel = "xcomp";
  // nsubj -> ccomp slot, focus -> ccomp slot, dobj -> focus.
  col.edges = {{0, 1, "nsubj", 1.0}, {2, 1, "xcomp", 1.0}, {3, 2, "dobj", 1.0}};
  auto a = align(clause, col, SimilarityParams{}, exact);
  auto f = extract_features(clause, col, a);
  CHECK(f.core_dep_col == "xcomp");
  CHECK(f.core_dep_cls == "xcomp");
  REQUIRE(f.deps_col.size() == 2);
  CHECK(f.deps_col[0].first == "ccomp");
  CHECK(f.deps_col[1].first == "dobj");
  REQUIRE(f.deps_cls.size() == 2);
  CHECK(f.deps_cls[0].first == "ccomp");  // 帮助, the governor
  CHECK(f.deps_cls[1].first == "dobj");
  for (const auto& [d, s] : f.deps_cls) {
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
  CHECK(format_features(f).find("col core=xcomp") == 0);

  auto none = extract_features(clause, col, Alignment{});
  for (const auto& [d, s] : none.deps_cls) CHECK(s == 0.0);
  for (const auto& [d, s] : none.deps_col) CHECK(s == 0.0);
}

TEST_CASE("dataset lines") {
  std::istringstream in(
      R"({"text":"他解决了问题。","verb":"解决","begin-offset":1,"end-offset":3,"label":"correct","sent_id":"x1"})"
      "\n\n"
      R"({"text":"他在解决。","correction":"他解决了。","verb":"解决","begin-offset":2,"end-offset":4,"label":"error"})"
      "\n");
  auto ds = parse_ged_dataset(in);
  REQUIRE(ds.size() == 2);
  CHECK_FALSE(ds[0].is_error);
  CHECK(ds[0].sent_id == "x1");
  CHECK(ds[1].is_error);
  CHECK(ds[1].correction.value() == "他解决了。");
  std::istringstream again(to_jsonl(ds[1]) + "\n");
  auto back = parse_ged_dataset(again);
  CHECK(back[0].text == ds[1].text);
  CHECK(back[0].begin_offset == 2);

  std::istringstream bad_label(R"({"text":"a","verb":"a","begin-offset":0,"end-offset":1,"label":"maybe"})");
  CHECK_THROWS_AS(parse_ged_dataset(bad_label), Error);
  std::istringstream bad_json("{nope\n");
  CHECK_THROWS_AS(parse_ged_dataset(bad_json), Error);
  std::istringstream bad_span(R"({"text":"ab","verb":"a","begin-offset":1,"end-offset":5,"label":"error"})");
  CHECK_THROWS_AS(parse_ged_dataset(bad_span), Error);

  auto fixture = read_ged_dataset(testing::fixture("ged.jsonl"));
  CHECK(fixture.size() == 60);
}

TEST_CASE("target location by offsets, then by word") {
  auto tree = read_conllu_file(testing::fixture("three.conllu"))[2];
  GedInstance g;
  g.text = tree.text();
  g.verb = "解决";
  g.begin_offset = 7;
  g.end_offset = 9;
  CHECK(locate_target(tree, g) == 6);
  g.begin_offset = 5;  // lands on 帮助
  g.end_offset = 6;
  CHECK(locate_target(tree, g) == 4);
  g.begin_offset = 0;  // a pronoun: fall back to the word
  g.end_offset = 1;
  CHECK(locate_target(tree, g) == 6);
  g.verb = "跑";
  CHECK_THROWS_AS(locate_target(tree, g), Error);
}
