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

#ifndef COLLO_DEPCLUSTER_HPP_
#define COLLO_DEPCLUSTER_HPP_

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "collo/clause.hpp"

namespace collo {

enum class SimilarityMode { kSynSem, kSyntactic };

struct SimilarityParams {
  double alpha = 0.5;    // weight of the child lists
  double beta = 0.5;     // weight of the ancestor lists
  double alpha_w = 0.5;  // head-word weight inside a node
  double beta_w = 0.5;   // dependent-word weight inside a node
  SimilarityMode mode = SimilarityMode::kSynSem;
  // Log base of the distance transform: a similarity of sim_floor is one
  // distance unit.
  double sim_floor = 0.05;

  // Throws ArgumentError when a weight pair does not sum to 1 or the floor is
  // outside (0, 1).
  void validate() const;
};

// Word similarity in [0, 1].
using WordSim = std::function<double(std::string_view, std::string_view)>;

double node_similarity(const ClauseNode& a, const ClauseNode& b,
                       const SimilarityParams& params, const WordSim& word_sim);

// Best order-preserving one-to-one alignment score divided by the longer
// length. Empty vs empty is 1, empty vs nonempty is 0.
double set_similarity(std::span<const ClauseNode> a, std::span<const ClauseNode> b,
                      const SimilarityParams& params, const WordSim& word_sim);

double clause_similarity(const ClauseStructure& a, const ClauseStructure& b,
                         const SimilarityParams& params, const WordSim& word_sim);

// ceil(ln(sim) / ln(sim_floor)) with sim clamped to [kMinSimilarity, 1].
int similarity_to_distance(double sim, double sim_floor = 0.05);
int clause_distance(const ClauseStructure& a, const ClauseStructure& b,
                    const SimilarityParams& params, const WordSim& word_sim);

// Keeps zero similarity at a finite distance (7 with the default floor).
inline constexpr double kMinSimilarity = 1e-9;

struct ClusterResult {
  std::vector<std::vector<int>> clusters;  // each ascending
  std::vector<int> outliers;               // ascending
};

inline constexpr int kDefaultMinPts = 3;

// Symmetric integer distance matrix, row-major n x n.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n, 0) {}
  int size() const { return n_; }
  int operator()(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, int v) {
    d_[static_cast<size_t>(i) * n_ + j] = v;
    d_[static_cast<size_t>(j) * n_ + i] = v;
  }

 private:
  int n_;
  std::vector<int> d_;
};

DistanceMatrix clause_distances(std::span<const ClauseStructure> clauses,
                                const SimilarityParams& params, const WordSim& word_sim);

// Density clustering with a per-point epsilon (each point's distance to its
// nearest other point) and mutual admission: a candidate joins a growing
// neighbourhood only if it lies within the epsilon of every member already
// admitted. Seeds are tried in ascending index order over points not yet in a
// cluster; candidates are admitted in ascending index order. Neighbourhoods
// smaller than min_pts are dissolved and their points stay available.
ClusterResult density_cluster(const DistanceMatrix& dist, int min_pts = kDefaultMinPts);

ClusterResult depcluster_dbscan(std::span<const ClauseStructure> clauses,
                                const SimilarityParams& params, const WordSim& word_sim,
                                int min_pts = kDefaultMinPts);

}  // namespace collo

#endif  // COLLO_DEPCLUSTER_HPP_
