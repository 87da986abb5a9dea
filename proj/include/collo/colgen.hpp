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

#ifndef COLLO_COLGEN_HPP_
#define COLLO_COLGEN_HPP_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "collo/clause.hpp"

namespace collo {

enum class SlotSide { kChild, kAncestor, kFocus };

const char* to_string(SlotSide side);
SlotSide slot_side_from_string(const std::string& s);

// Slot identity inside one verb's clause cluster. The ordinal separates
// repeated (side, deprel) pairs and counts outward from the focus: the
// nearest is 1, ties between a left and a right node go to the left one.
// The focus key is always {kFocus, "", 1}.
struct SlotKey {
  SlotSide side = SlotSide::kChild;
  std::string deprel;
  int ordinal = 1;

  auto operator<=>(const SlotKey&) const = default;
  bool is_focus() const { return side == SlotSide::kFocus; }
};

SlotKey focus_key();
std::string to_string(const SlotKey& key);

// A clause with each node mapped to its slot key, in linear order.
struct KeyedClause {
  const ClauseStructure* clause = nullptr;
  std::vector<ClauseNode> nodes;
  std::vector<SlotKey> keys;  // parallel to nodes
  int focus_index = 0;

  // Index of the node for token_id, or -1.
  int index_of(int token_id) const;
};

KeyedClause key_clause(const ClauseStructure& clause);

struct AdjacencyGraph {
  std::set<SlotKey> nodes;
  std::map<std::pair<SlotKey, SlotKey>, int> edges;  // (from, to) -> weight
  std::map<SlotKey, int> start_nodes;                // start key -> clause count

  int weight(const SlotKey& from, const SlotKey& to) const;
  // Outgoing edges by descending weight, then ascending key.
  std::vector<std::pair<SlotKey, int>> out_edges(const SlotKey& from) const;
};

using Path = std::vector<SlotKey>;

AdjacencyGraph build_adjacency_graph(std::span<const KeyedClause> cluster);
AdjacencyGraph build_adjacency_graph(std::span<const ClauseStructure> cluster);

enum class PathMode { kGreedy, kExhaustive };
inline constexpr size_t kDefaultPathCap = 10000;

// One path per distinct start node (greedy), or every maximal simple path up
// to `cap` paths in total (exhaustive). Start nodes are visited in key order.
std::vector<Path> enumerate_paths(const AdjacencyGraph& graph, PathMode mode = PathMode::kGreedy,
                                  size_t cap = kDefaultPathCap);

// Unordered slot pairs linked by a dependency in at least one clause.
using DependencyPairs = std::set<std::pair<SlotKey, SlotKey>>;
DependencyPairs dependency_pairs(std::span<const KeyedClause> cluster);

std::vector<Path> filter_paths(std::vector<Path> paths, std::span<const KeyedClause> cluster);

// (Coverage + Average) / (1 + NumDangle).
double score_path(const Path& path, const AdjacencyGraph& graph, const DependencyPairs& deps);

enum class StrengthMode { kConditional, kLiteral };

struct CorpusCounts {
  std::unordered_map<std::string, long> word_freq;
  long total_tokens = 0;
};

// Conditional: count / cluster_size. Literal: p(w, c) * p(w) / p(c) with all
// three estimated over `corpus_total` (clamped to [0, 1]).
double collexeme_strength(long count_in_slot, long cluster_size, long word_corpus_freq,
                          StrengthMode mode = StrengthMode::kConditional,
                          long corpus_total = 0);

struct Collexeme {
  std::string word;
  long count = 0;
  double p_lex = 0.0;
};

struct Slot {
  SlotKey key;
  double p_slot = 0.0;  // share of cluster clauses that fill this slot
  std::vector<Collexeme> collexemes;  // descending p_lex
};

struct CollostructionEdge {
  int dependent = 0;  // slot index
  int head = 0;       // slot index
  std::string deprel;
  double p_slot = 0.0;
};

struct Collostruction {
  std::string verb;
  int sense_cluster_id = 0;
  std::string stage;  // "synsem" or "syntactic"
  double p_col = 0.0;
  long support = 0;
  std::string focus_deprel;
  std::vector<Slot> slots;  // linear order
  std::vector<CollostructionEdge> edges;
  std::vector<std::string> example_sent_ids;

  int focus_index() const;  // -1 when missing
  // Index of the edge whose dependent is `slot`, or -1.
  int head_edge(int slot) const;
};

struct GenerationOptions {
  PathMode path_mode = PathMode::kGreedy;
  size_t path_cap = kDefaultPathCap;
  StrengthMode strength = StrengthMode::kConditional;
  const CorpusCounts* corpus = nullptr;  // required for kLiteral
  size_t max_examples = 5;
};

// Returns nullopt when every candidate path is filtered out.
std::optional<Collostruction> generate_collostruction(
    std::span<const ClauseStructure> cluster, const std::string& verb, long total_verb_instances,
    const GenerationOptions& options = {});

// Empty when the record satisfies every structural invariant.
std::vector<std::string> validate_collostruction(const Collostruction& c);

}  // namespace collo

#endif  // COLLO_COLGEN_HPP_
