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

#include "collo/sense_cluster.hpp"

#include <algorithm>
#include <numeric>

#include "collo/error.hpp"

namespace collo {

namespace {

class CondensedMatrix {
 public:
  explicit CondensedMatrix(size_t n) : n_(n), data_(n * (n - 1) / 2, 0.0) {}
  double& at(size_t i, size_t j) {
    if (i > j) std::swap(i, j);
    return data_[i * n_ - i * (i + 1) / 2 + (j - i - 1)];
  }

 private:
  size_t n_;
  std::vector<double> data_;
};

struct Merge {
  size_t a;
  size_t b;
  double height;
};

size_t find_root(std::vector<size_t>& parent, size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Nearest-neighbour chain. Valid for average linkage because it is reducible,
// so the merge list is the same dendrogram the greedy algorithm would build.
std::vector<Merge> nn_chain_average(CondensedMatrix& dist, size_t n) {
  std::vector<Merge> merges;
  std::vector<char> active(n, 1);
  std::vector<double> weight(n, 1.0);
  std::vector<size_t> chain;
  size_t remaining = n;
  while (remaining > 1) {
    if (chain.empty()) {
      for (size_t i = 0; i < n; ++i) {
        if (active[i]) {
          chain.push_back(i);
          break;
        }
      }
    }
    const size_t a = chain.back();
    const bool has_prev = chain.size() >= 2;
    size_t best = has_prev ? chain[chain.size() - 2] : n;
    double best_d = has_prev ? dist.at(a, best) : 0.0;
    for (size_t c = 0; c < n; ++c) {
      if (!active[c] || c == a) continue;
      double d = dist.at(a, c);
      if (best == n || d < best_d) {
        best = c;
        best_d = d;
      }
    }
    if (has_prev && best == chain[chain.size() - 2]) {
      chain.pop_back();
      chain.pop_back();
      size_t keep = std::min(a, best);
      size_t drop = std::max(a, best);
      merges.push_back({keep, drop, best_d});
      const double wk = weight[keep];
      const double wd = weight[drop];
      for (size_t c = 0; c < n; ++c) {
        if (!active[c] || c == keep || c == drop) continue;
        dist.at(keep, c) = (wk * dist.at(keep, c) + wd * dist.at(drop, c)) / (wk + wd);
      }
      weight[keep] = wk + wd;
      active[drop] = 0;
      --remaining;
    } else {
      chain.push_back(best);
    }
  }
  return merges;
}

}  // namespace

std::vector<SenseCluster> cluster_sentences(const EmbeddingStore& store,
                                            std::vector<std::string> ids,
                                            double sim_threshold) {
  if (ids.empty()) throw ArgumentError("cluster_sentences: empty id list");
  if (!(sim_threshold > 0.0 && sim_threshold < 1.0)) {
    throw ArgumentError("cluster_sentences: threshold must lie in (0, 1)");
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ArgumentError("cluster_sentences: duplicate sentence id");
  }
  std::vector<const Vector*> vectors;
  vectors.reserve(ids.size());
  for (const auto& id : ids) {
    const Vector* v = store.find(id);
    if (v == nullptr) throw InputError("no sentence embedding for '" + id + "'");
    vectors.push_back(v);
  }

  const size_t n = ids.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  if (n > 1) {
    CondensedMatrix dist(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        double dot = 0.0;
        for (size_t k = 0; k < vectors[i]->size(); ++k) {
          dot += (*vectors[i])[k] * (*vectors[j])[k];
        }
        dist.at(i, j) = 1.0 - std::clamp(dot, -1.0, 1.0);
      }
    }
    const double cutoff = 1.0 - sim_threshold + 1e-12;
    for (const Merge& m : nn_chain_average(dist, n)) {
      if (m.height <= cutoff) {
        parent[find_root(parent, m.b)] = find_root(parent, m.a);
      }
    }
  }

  std::vector<std::vector<size_t>> groups(n);
  for (size_t i = 0; i < n; ++i) groups[find_root(parent, i)].push_back(i);
  std::vector<std::vector<size_t>> nonempty;
  for (auto& g : groups) {
    if (!g.empty()) nonempty.push_back(std::move(g));
  }
  // Members are ascending, so front() is the smallest id.
  std::sort(nonempty.begin(), nonempty.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x.front() < y.front();
  });
  std::vector<SenseCluster> out;
  out.reserve(nonempty.size());
  for (const auto& g : nonempty) {
    SenseCluster c;
    c.cluster_id = static_cast<int>(out.size());
    for (size_t i : g) c.member_sent_ids.push_back(ids[i]);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace collo
