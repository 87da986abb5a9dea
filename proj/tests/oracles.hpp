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

// Independent reference implementations used by the unit and acceptance
// suites. They favour brute force and direct transcription of the
// definitions over efficiency, and share no code paths with the library
// beyond its plain data types.

#ifndef COLLO_TESTS_ORACLES_HPP_
#define COLLO_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "collo/clause.hpp"
#include "collo/colgen.hpp"
#include "collo/depcluster.hpp"

namespace oracle {

// Uniform double in [0, 1) from raw generator bits.
inline double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double pareto(std::mt19937_64& rng, double alpha, double x_min) {
  return x_min * std::pow(1.0 - uniform(rng), -1.0 / (alpha - 1.0));
}

inline double exponential(std::mt19937_64& rng, double rate, double x_min) {
  return x_min - std::log(1.0 - uniform(rng)) / rate;
}

// Best total over every order-preserving one-to-one partial matching of
// a[0..m) with b[0..n), by explicit enumeration.
inline double best_monotone_matching(int m, int n, const std::function<double(int, int)>& sim) {
  double best = 0.0;
  std::function<void(int, int, double)> go = [&](int i, int j, double acc) {
    best = std::max(best, acc);
    for (int ii = i; ii < m; ++ii)
      for (int jj = j; jj < n; ++jj) go(ii + 1, jj + 1, acc + sim(ii, jj));
  };
  go(0, 0, 0.0);
  return best;
}

inline double node_sim(const collo::ClauseNode& a, const collo::ClauseNode& b,
                       const collo::SimilarityParams& p, const collo::WordSim& ws) {
  if (a.deprel != b.deprel) return 0.0;
  if (p.mode == collo::SimilarityMode::kSyntactic) return 1.0;
  return p.alpha_w * ws(a.head_form, b.head_form) + p.beta_w * ws(a.dep_form, b.dep_form);
}

inline double set_sim(const std::vector<collo::ClauseNode>& a, const std::vector<collo::ClauseNode>& b,
                      const collo::SimilarityParams& p, const collo::WordSim& ws) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const double z = best_monotone_matching(static_cast<int>(a.size()), static_cast<int>(b.size()),
                                          [&](int i, int j) { return node_sim(a[i], b[j], p, ws); });
  return z / static_cast<double>(std::max(a.size(), b.size()));
}

inline int distance(double sim, double floor) {
  sim = std::clamp(sim, 1e-9, 1.0);
  return static_cast<int>(std::ceil(std::log(sim) / std::log(floor) - 1e-9));
}

struct Clustering {
  std::set<std::vector<int>> clusters;
  std::vector<int> outliers;
};

// Density clustering by enumerating admission sequences. For a seed s, every
// sequence s, q1, q2, ... in which each q may join because dist(q, m) <=
// eps(m) for all earlier members m is generated; the neighbourhood is the
// lexicographically first maximal sequence. Seeds are the unassigned points
// in ascending order; neighbourhoods smaller than min_pts are dissolved.
inline Clustering density_cluster(const std::vector<std::vector<int>>& d, int min_pts) {
  const int n = static_cast<int>(d.size());
  std::vector<int> eps(n, 0);
  for (int i = 0; i < n; ++i) {
    int e = -1;
    for (int j = 0; j < n; ++j)
      if (j != i && (e < 0 || d[i][j] < e)) e = d[i][j];
    eps[i] = e < 0 ? 0 : e;
  }
  std::vector<char> assigned(n, 0);
  Clustering out;
  // A lone point has no neighbour to define its radius.
  if (n == 1) {
    out.outliers.push_back(0);
    return out;
  }
  for (int s = 0; s < n; ++s) {
    if (assigned[s]) continue;
    std::vector<int> best;
    std::vector<int> seq{s};
    std::vector<char> used(n, 0);
    used[s] = 1;
    std::function<void()> go = [&] {
      bool extended = false;
      for (int q = 0; q < n; ++q) {
        if (used[q] || assigned[q]) continue;
        bool ok = true;
        for (int m : seq) ok = ok && d[q][m] <= eps[m];
        if (!ok) continue;
        extended = true;
        used[q] = 1;
        seq.push_back(q);
        go();
        seq.pop_back();
        used[q] = 0;
      }
      if (!extended && (best.empty() || seq < best)) best = seq;
    };
    go();
    if (static_cast<int>(best.size()) >= min_pts) {
      for (int m : best) assigned[m] = 1;
      std::sort(best.begin(), best.end());
      out.clusters.insert(best);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!assigned[i]) out.outliers.push_back(i);
  return out;
}

// Average-linkage agglomeration by repeated full scans: merge the closest pair
// of clusters (mean pairwise distance) while it is within `cut`.
inline std::set<std::set<int>> average_linkage(const std::vector<std::vector<double>>& dist, double cut) {
  std::vector<std::set<int>> cl;
  for (int i = 0; i < static_cast<int>(dist.size()); ++i) cl.push_back({i});
  for (;;) {
    double best = 1e300;
    int bi = -1, bj = -1;
    for (int i = 0; i < static_cast<int>(cl.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(cl.size()); ++j) {
        double s = 0.0;
        for (int a : cl[i])
          for (int b : cl[j]) s += dist[a][b];
        s /= static_cast<double>(cl[i].size() * cl[j].size());
        if (s < best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0 || best > cut + 1e-12) break;
    cl[bi].insert(cl[bj].begin(), cl[bj].end());
    cl.erase(cl.begin() + bj);
  }
  return {cl.begin(), cl.end()};
}

// --- heuristic search ------------------------------------------------------

struct Item {
  std::vector<std::string> words;
  std::string deprel;
};

inline std::vector<Item> items_of(const collo::Collostruction& c) {
  std::vector<Item> v;
  for (const auto& s : c.slots) {
    Item it;
    it.deprel = s.key.is_focus() ? c.focus_deprel + "-focus" : s.key.deprel;
    for (const auto& x : s.collexemes) it.words.push_back(x.word);
    v.push_back(it);
  }
  return v;
}

inline std::vector<Item> items_of(const collo::ClauseStructure& c) {
  std::vector<Item> v;
  for (const auto& n : c.sequence())
    v.push_back({{n.dep_form}, n.token_id == c.target_id ? n.deprel + "-focus" : n.deprel});
  return v;
}

using Unit = std::vector<std::string>;

// Units of one pattern category as tuples of strings.
inline std::set<Unit> units(const std::vector<Item>& items, int category) {
  std::set<Unit> out;
  for (size_t i = 0; i < items.size(); ++i) {
    const bool has_next = i + 1 < items.size();
    for (const auto& w : items[i].words) {
      switch (category) {
        case 0:
          if (has_next)
            for (const auto& w2 : items[i + 1].words) out.insert({w, items[i].deprel, w2, items[i + 1].deprel});
          break;
        case 1:
          out.insert({w});
          if (has_next)
            for (const auto& w2 : items[i + 1].words) out.insert({w, w2, "#bigram"});
          break;
        case 3:
          out.insert({w, items[i].deprel});
          break;
        default:
          break;
      }
    }
    if (category == 2 && has_next) out.insert({items[i].deprel, items[i + 1].deprel});
  }
  return out;
}

// Per category, the top `k` collostructions of the clause's verb by number
// of clause units they contain (at least one), ties by support desc then id;
// the union in ascending id order.
inline std::vector<int> full_scan_search(const collo::ClauseStructure& clause,
                                         const std::vector<const collo::Collostruction*>& all, size_t k = 3) {
  std::set<int> chosen;
  const auto ci = items_of(clause);
  for (int cat = 0; cat < 4; ++cat) {
    const auto cu = units(ci, cat);
    std::vector<std::tuple<int, long, int>> ranked;  // (-matches, -support, id)
    for (int id = 0; id < static_cast<int>(all.size()); ++id) {
      if (all[id]->verb != clause.verb) continue;
      const auto ku = units(items_of(*all[id]), cat);
      int m = 0;
      for (const auto& u : cu) m += ku.count(u) ? 1 : 0;
      if (m > 0) ranked.emplace_back(-m, -all[id]->support, id);
    }
    std::sort(ranked.begin(), ranked.end());
    for (size_t i = 0; i < ranked.size() && i < k; ++i) chosen.insert(std::get<2>(ranked[i]));
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace oracle

#endif  // COLLO_TESTS_ORACLES_HPP_
