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

#include "collo/depcluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collo/error.hpp"

namespace collo {

void SimilarityParams::validate() const {
  auto pair_ok = [](double x, double y) {
    return x >= 0.0 && y >= 0.0 && std::abs(x + y - 1.0) <= 1e-9;
  };
  if (!pair_ok(alpha, beta)) throw ArgumentError("alpha and beta must be >= 0 and sum to 1");
  if (!pair_ok(alpha_w, beta_w)) {
    throw ArgumentError("alpha_w and beta_w must be >= 0 and sum to 1");
  }
  if (!(sim_floor > 0.0 && sim_floor < 1.0)) throw ArgumentError("sim_floor must lie in (0, 1)");
}

double node_similarity(const ClauseNode& a, const ClauseNode& b,
                       const SimilarityParams& params, const WordSim& word_sim) {
  if (a.deprel != b.deprel) return 0.0;
  if (params.mode == SimilarityMode::kSyntactic) return 1.0;
  double h = std::clamp(word_sim(a.head_form, b.head_form), 0.0, 1.0);
  double d = std::clamp(word_sim(a.dep_form, b.dep_form), 0.0, 1.0);
  return params.alpha_w * h + params.beta_w * d;
}

double set_similarity(std::span<const ClauseNode> a, std::span<const ClauseNode> b,
                      const SimilarityParams& params, const WordSim& word_sim) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const size_t m = a.size();
  const size_t n = b.size();
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(n + 1, 0.0);
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = 0.0;
    for (size_t j = 1; j <= n; ++j) {
      double diag = prev[j - 1] + node_similarity(a[i - 1], b[j - 1], params, word_sim);
      cur[j] = std::max({prev[j], cur[j - 1], diag});
    }
    std::swap(prev, cur);
  }
  return prev[n] / static_cast<double>(std::max(m, n));
}

double clause_similarity(const ClauseStructure& a, const ClauseStructure& b,
                         const SimilarityParams& params, const WordSim& word_sim) {
  return params.alpha * set_similarity(a.v_child, b.v_child, params, word_sim) +
         params.beta * set_similarity(a.v_ancestor, b.v_ancestor, params, word_sim);
}

int similarity_to_distance(double sim, double sim_floor) {
  if (!(sim_floor > 0.0 && sim_floor < 1.0)) throw ArgumentError("sim_floor must lie in (0, 1)");
  if (std::isnan(sim)) throw ArgumentError("similarity is NaN");
  sim = std::clamp(sim, kMinSimilarity, 1.0);
  double ratio = std::log(sim) / std::log(sim_floor);
  // Exact powers of the floor (0.05^2 = 0.0025) land a few ulps above an
  // integer after the division.
  return std::max(0, static_cast<int>(std::ceil(ratio - 1e-9)));
}

int clause_distance(const ClauseStructure& a, const ClauseStructure& b,
                    const SimilarityParams& params, const WordSim& word_sim) {
  return similarity_to_distance(clause_similarity(a, b, params, word_sim), params.sim_floor);
}

DistanceMatrix clause_distances(std::span<const ClauseStructure> clauses,
                                const SimilarityParams& params, const WordSim& word_sim) {
  const int n = static_cast<int>(clauses.size());
  DistanceMatrix dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dist.set(i, j, clause_distance(clauses[i], clauses[j], params, word_sim));
    }
  }
  return dist;
}

ClusterResult density_cluster(const DistanceMatrix& dist, int min_pts) {
  const int n = dist.size();
  if (n == 0) throw ArgumentError("density_cluster: empty input");
  if (min_pts < 1) throw ArgumentError("min_pts must be >= 1");

  std::vector<int> epsilon(n, std::numeric_limits<int>::max());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) epsilon[i] = std::min(epsilon[i], dist(i, j));
    }
  }

  ClusterResult result;
  std::vector<char> assigned(n, 0);
  for (int seed = 0; seed < n; ++seed) {
    if (assigned[seed] || n == 1) continue;
    std::vector<int> members{seed};
    for (int q = 0; q < n; ++q) {
      if (q == seed || assigned[q]) continue;
      bool admissible = std::all_of(members.begin(), members.end(),
                                    [&](int m) { return dist(q, m) <= epsilon[m]; });
      if (admissible) members.push_back(q);
    }
    if (static_cast<int>(members.size()) < min_pts) continue;
    std::sort(members.begin(), members.end());
    for (int m : members) assigned[m] = 1;
    result.clusters.push_back(std::move(members));
  }
  for (int i = 0; i < n; ++i) {
    if (!assigned[i]) result.outliers.push_back(i);
  }
  return result;
}

ClusterResult depcluster_dbscan(std::span<const ClauseStructure> clauses,
                                const SimilarityParams& params, const WordSim& word_sim,
                                int min_pts) {
  if (clauses.empty()) throw ArgumentError("depcluster_dbscan: empty input");
  params.validate();
  return density_cluster(clause_distances(clauses, params, word_sim), min_pts);
}

}  // namespace collo
