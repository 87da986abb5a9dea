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

#ifndef COLLO_SENSE_CLUSTER_HPP_
#define COLLO_SENSE_CLUSTER_HPP_

#include <string>
#include <vector>

#include "collo/embedding.hpp"

namespace collo {

struct SenseCluster {
  int cluster_id = 0;
  std::vector<std::string> member_sent_ids;  // ascending
  int size() const { return static_cast<int>(member_sent_ids.size()); }
};

inline constexpr double kDefaultSenseThreshold = 0.5;
inline constexpr int kDefaultMinClusterSize = 5;

// Average-linkage agglomerative clustering over cosine distance. Two clusters
// merge while their average distance is <= 1 - sim_threshold. Output is
// ordered by descending size, ties by smallest member id; cluster_id is the
// position in that order.
//
// Memory is quadratic in ids.size() (a condensed double matrix).
std::vector<SenseCluster> cluster_sentences(const EmbeddingStore& store,
                                            std::vector<std::string> ids,
                                            double sim_threshold = kDefaultSenseThreshold);

}  // namespace collo

#endif  // COLLO_SENSE_CLUSTER_HPP_
