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
#include <set>

#include "collo/depcluster.hpp"
#include "collo/embedding.hpp"
#include "collo/error.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace collo;

namespace {

ClauseNode node(int id, const std::string& deprel, const std::string& head, const std::string& dep) {
  return {id, 0, deprel, head, dep, Side::kLeft};
}

double exact(std::string_view a, std::string_view b) { return a == b ? 1.0 : 0.0; }

// Symmetric pseudo-random similarity on a small vocabulary.
double hashed(std::string_view a, std::string_view b) {
  if (a == b) return 1.0;
  auto lo = std::min(a, b), hi = std::max(a, b);
  std::string key(lo);
  key += '|';
  key += hi;
  return static_cast<double>(fnv1a64(key) % 1000) / 1000.0;
}

const std::vector<std::string> kDeprels{"nsubj", "dobj", "advmod", "nmod:prep"};
const std::vector<std::string> kWords{"我", "你", "问题", "办法", "很", "在"};

std::vector<ClauseNode> random_nodes(std::mt19937_64& rng, int n, int first_id) {
  std::vector<ClauseNode> out;
  for (int i = 0; i < n; ++i)
    out.push_back(node(first_id + i, kDeprels[rng() % kDeprels.size()], kWords[rng() % kWords.size()],
                       kWords[rng() % kWords.size()]));
  return out;
}

ClauseStructure random_clause(std::mt19937_64& rng, int max_len) {
  ClauseStructure c;
  c.v_child = random_nodes(rng, static_cast<int>(rng() % (max_len + 1)), 1);
  c.v_ancestor = random_nodes(rng, static_cast<int>(rng() % 3), 100);
  c.focus = node(50, "root", kRootWord, "解决");
  c.target_id = 50;
  c.verb = "解决";
  return c;
}

std::vector<std::vector<int>> to_rows(const DistanceMatrix& d) {
  std::vector<std::vector<int>> rows(d.size(), std::vector<int>(d.size()));
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j) rows[i][j] = d(i, j);
  return rows;
}

std::set<std::vector<int>> as_set(const ClusterResult& r) { return {r.clusters.begin(), r.clusters.end()}; }

}  // namespace

TEST_CASE("node similarity") {
  SimilarityParams p;
  auto ws = [](std::string_view a, std::string_view) { return a == "h" ? 0.8 : 0.4; };
  CHECK(node_similarity(node(1, "nsubj", "h", "d"), node(2, "nsubj", "h", "d"), p, ws) ==
        doctest::Approx(0.6).epsilon(1e-12));
  CHECK(node_similarity(node(1, "nsubj", "a", "b"), node(2, "dobj", "a", "b"), p, exact) == 0.0);
  CHECK(node_similarity(node(1, "nsubj", "a", "b"), node(2, "nsubj", "a", "b"), p, exact) == 1.0);
  p.mode = SimilarityMode::kSyntactic;
  CHECK(node_similarity(node(1, "nsubj", "a", "b"), node(2, "nsubj", "x", "y"), p, exact) == 1.0);
}

TEST_CASE("set similarity") {
  SimilarityParams p;
  std::vector<ClauseNode> ab{node(1, "a", "x", "x"), node(2, "b", "x", "x")};
  std::vector<ClauseNode> acb{node(1, "a", "x", "x"), node(2, "c", "x", "x"), node(3, "b", "x", "x")};
  CHECK(set_similarity(ab, acb, p, exact) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(set_similarity(ab, ab, p, exact) == 1.0);
  CHECK(set_similarity({}, {}, p, exact) == 1.0);
  CHECK(set_similarity(ab, {}, p, exact) == 0.0);
  std::vector<ClauseNode> cd{node(1, "c", "x", "x"), node(2, "d", "x", "x")};
  CHECK(set_similarity(ab, cd, p, exact) == 0.0);
}

TEST_CASE("set similarity equals exhaustive alignment") {
  std::mt19937_64 rng(21);
  SimilarityParams p;
  for (int trial = 0; trial < 400; ++trial) {
    auto a = random_nodes(rng, 1 + static_cast<int>(rng() % 6), 1);
    auto b = random_nodes(rng, 1 + static_cast<int>(rng() % 6), 1);
    CHECK(std::abs(set_similarity(a, b, p, hashed) - oracle::set_sim(a, b, p, hashed)) <= 1e-9);
  }
}

TEST_CASE("clause similarity weights and symmetry") {
  SimilarityParams p;
  ClauseStructure a, b;
  a.v_child = {node(1, "nsubj", "x", "y")};
  b.v_child = {node(1, "nsubj", "x", "y")};
  a.v_ancestor = {node(9, "dobj", "x", "y")};
  CHECK(clause_similarity(a, b, p, exact) == doctest::Approx(0.5));
  CHECK(clause_similarity(a, a, p, exact) == 1.0);
  CHECK(clause_distance(a, a, p, exact) == 0);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    auto x = random_clause(rng, 5), y = random_clause(rng, 5);
    CHECK(clause_similarity(x, y, p, hashed) == doctest::Approx(clause_similarity(y, x, p, hashed)).epsilon(1e-12));
    CHECK(clause_distance(x, x, p, hashed) == 0);
  }
}

TEST_CASE("distance table") {
  CHECK(similarity_to_distance(1.0) == 0);
  CHECK(similarity_to_distance(0.3) == 1);
  CHECK(similarity_to_distance(0.05) == 1);
  CHECK(similarity_to_distance(0.0025) == 2);
  CHECK(similarity_to_distance(0.01) == 2);
  CHECK(similarity_to_distance(0.0) == oracle::distance(0.0, 0.05));
  CHECK_THROWS_AS(similarity_to_distance(0.5, 1.0), Error);
  CHECK_THROWS_AS(similarity_to_distance(std::nan("")), Error);
}

TEST_CASE("params validation") {
  SimilarityParams p;
  CHECK_NOTHROW(p.validate());
  p.alpha = 0.7;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.beta_w = -0.5;
  p.alpha_w = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("density clustering basics") {
  SimilarityParams p;
  auto c = testing::make_clause("解决", {{"nsubj", "我"}}, {{"dobj", "问题"}});
  std::vector<ClauseStructure> same(5, c);
  auto r = depcluster_dbscan(same, p, exact);
  REQUIRE(r.clusters.size() == 1);
  CHECK(r.clusters[0].size() == 5);
  CHECK(r.outliers.empty());

  auto one = depcluster_dbscan(std::vector<ClauseStructure>{c}, p, exact);
  CHECK(one.clusters.empty());
  CHECK(one.outliers == std::vector<int>{0});
  CHECK_THROWS_AS(depcluster_dbscan(std::vector<ClauseStructure>{}, p, exact), Error);
}

TEST_CASE("two tight groups") {
  SimilarityParams p;
  auto g1 = testing::make_clause("解决", {{"nsubj", "我"}}, {{"dobj", "问题"}});
  auto g2 = testing::make_clause("解决", {{"advmod", "很"}}, {});
  std::vector<ClauseStructure> cs;
  for (int i = 0; i < 8; ++i) cs.push_back(i % 2 ? g1 : g2);
  auto d = clause_distances(cs, p, exact);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(d(i, j) == ((i - j) % 2 == 0 ? 0 : oracle::distance(0.5 * 0.0 + 0.5 * 1.0, 0.05)));
  auto r = depcluster_dbscan(cs, p, exact);
  CHECK(r.clusters.size() == 2);
  CHECK(as_set(r) == oracle::density_cluster(to_rows(d), 3).clusters);
}

TEST_CASE("density clustering matches the admission-order oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    DistanceMatrix d(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d.set(i, j, static_cast<int>(rng() % 4));
    const int min_pts = 1 + static_cast<int>(rng() % 4);
    auto got = density_cluster(d, min_pts);
    auto want = oracle::density_cluster(to_rows(d), min_pts);
    CHECK(as_set(got) == want.clusters);
    CHECK(got.outliers == want.outliers);

    std::vector<int> seen = got.outliers;
    for (const auto& c : got.clusters) {
      CHECK(static_cast<int>(c.size()) >= min_pts);
      seen.insert(seen.end(), c.begin(), c.end());
    }
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    CHECK(seen == all);
  }
}

TEST_CASE("clause clustering matches the oracle end to end") {
  std::mt19937_64 rng(4);
  SimilarityParams p;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ClauseStructure> cs;
    const int n = 2 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) cs.push_back(random_clause(rng, 4));
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double s = p.alpha * oracle::set_sim(cs[i].v_child, cs[j].v_child, p, hashed) +
                   p.beta * oracle::set_sim(cs[i].v_ancestor, cs[j].v_ancestor, p, hashed);
        rows[i][j] = oracle::distance(s, p.sim_floor);
      }
    auto got = depcluster_dbscan(cs, p, hashed);
    CHECK(as_set(got) == oracle::density_cluster(rows, 3).clusters);
  }
}

TEST_CASE("permuting the input relabels clusters only") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    // Groups of at least two at distance 0 inside, at least 2 across.
    std::vector<int> group;
    const int groups = 1 + static_cast<int>(rng() % 4);
    for (int g = 0; g < groups; ++g)
      for (int k = 2 + static_cast<int>(rng() % 2); k > 0; --k) group.push_back(g);
    const int n = static_cast<int>(group.size());
    DistanceMatrix d(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d.set(i, j, group[i] == group[j] ? 0 : 2 + static_cast<int>(rng() % 2));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    DistanceMatrix dp(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) dp.set(i, j, d(perm[i], perm[j]));
    auto a = density_cluster(d, 3);
    auto b = density_cluster(dp, 3);
    std::set<std::vector<int>> mapped;
    for (const auto& c : b.clusters) {
      std::vector<int> m;
      for (int i : c) m.push_back(perm[i]);
      std::sort(m.begin(), m.end());
      mapped.insert(m);
    }
    CHECK(mapped == as_set(a));
  }
}

TEST_CASE("syntactic mode ignores words") {
  std::mt19937_64 rng(2);
  SimilarityParams p;
  p.mode = SimilarityMode::kSyntactic;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ClauseStructure> cs;
    for (int i = 0; i < 7; ++i) cs.push_back(random_clause(rng, 3));
    auto renamed = cs;
    for (auto& c : renamed)
      for (auto* list : {&c.v_child, &c.v_ancestor})
        for (auto& n : *list) {
          n.head_form = kWords[rng() % kWords.size()];
          n.dep_form = kWords[rng() % kWords.size()];
        }
    auto a = depcluster_dbscan(cs, p, hashed);
    auto b = depcluster_dbscan(renamed, p, hashed);
    CHECK(a.clusters == b.clusters);
    CHECK(a.outliers == b.outliers);
  }
}
