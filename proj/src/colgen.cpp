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

#include "collo/colgen.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "collo/error.hpp"

namespace collo {

namespace {

std::pair<SlotKey, SlotKey> unordered(const SlotKey& a, const SlotKey& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::vector<KeyedClause> key_all(std::span<const ClauseStructure> cluster) {
  std::vector<KeyedClause> keyed;
  keyed.reserve(cluster.size());
  for (const auto& c : cluster) keyed.push_back(key_clause(c));
  return keyed;
}

// Per-slot evidence gathered from a cluster.
struct SlotEvidence {
  int occurrences = 0;
  std::map<std::string, long> words;
  std::map<SlotKey, int> heads;
};

}  // namespace

const char* to_string(SlotSide side) {
  switch (side) {
    case SlotSide::kChild: return "child";
    case SlotSide::kAncestor: return "ancestor";
    case SlotSide::kFocus: return "focus";
  }
  return "?";
}

SlotSide slot_side_from_string(const std::string& s) {
  if (s == "child") return SlotSide::kChild;
  if (s == "ancestor") return SlotSide::kAncestor;
  if (s == "focus") return SlotSide::kFocus;
  throw InputError("unknown slot side '" + s + "'");
}

SlotKey focus_key() { return SlotKey{SlotSide::kFocus, "", 1}; }

std::string to_string(const SlotKey& key) {
  if (key.is_focus()) return "FOCUS";
  std::string s = std::string(to_string(key.side)) + ":" + key.deprel;
  if (key.ordinal > 1) s += "#" + std::to_string(key.ordinal);
  return s;
}

int KeyedClause::index_of(int token_id) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].token_id == token_id) return static_cast<int>(i);
  }
  return -1;
}

KeyedClause key_clause(const ClauseStructure& clause) {
  KeyedClause kc;
  kc.clause = &clause;
  kc.nodes = clause.sequence();
  kc.keys.resize(kc.nodes.size());
  auto in_child = [&](int id) {
    return std::any_of(clause.v_child.begin(), clause.v_child.end(),
                       [id](const ClauseNode& n) { return n.token_id == id; });
  };
  std::map<std::pair<SlotSide, std::string>, std::vector<size_t>> groups;
  for (size_t i = 0; i < kc.nodes.size(); ++i) {
    const ClauseNode& n = kc.nodes[i];
    if (n.token_id == clause.target_id) {
      kc.keys[i] = focus_key();
      kc.focus_index = static_cast<int>(i);
      continue;
    }
    SlotSide side = in_child(n.token_id) ? SlotSide::kChild : SlotSide::kAncestor;
    groups[{side, n.deprel}].push_back(i);
  }
  const int target = clause.target_id;
  for (auto& [group_key, members] : groups) {
    std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      int da = std::abs(kc.nodes[a].token_id - target);
      int db = std::abs(kc.nodes[b].token_id - target);
      if (da != db) return da < db;
      return kc.nodes[a].token_id < kc.nodes[b].token_id;
    });
    for (size_t r = 0; r < members.size(); ++r) {
      kc.keys[members[r]] = SlotKey{group_key.first, group_key.second, static_cast<int>(r + 1)};
    }
  }
  return kc;
}

int AdjacencyGraph::weight(const SlotKey& from, const SlotKey& to) const {
  auto it = edges.find({from, to});
  return it == edges.end() ? 0 : it->second;
}

std::vector<std::pair<SlotKey, int>> AdjacencyGraph::out_edges(const SlotKey& from) const {
  std::vector<std::pair<SlotKey, int>> out;
  for (auto it = edges.lower_bound({from, SlotKey{SlotSide::kChild, "", 0}});
       it != edges.end() && it->first.first == from; ++it) {
    out.emplace_back(it->first.second, it->second);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

AdjacencyGraph build_adjacency_graph(std::span<const KeyedClause> cluster) {
  if (cluster.empty()) throw ArgumentError("build_adjacency_graph: empty cluster");
  const std::string& verb = cluster.front().clause->verb;
  AdjacencyGraph g;
  for (const KeyedClause& kc : cluster) {
    if (kc.clause->verb != verb) {
      throw ArgumentError("build_adjacency_graph: clauses of different verbs ('" + verb +
                          "', '" + kc.clause->verb + "')");
    }
    for (size_t i = 0; i < kc.keys.size(); ++i) {
      g.nodes.insert(kc.keys[i]);
      if (i + 1 < kc.keys.size()) ++g.edges[{kc.keys[i], kc.keys[i + 1]}];
    }
    ++g.start_nodes[kc.keys.front()];
  }
  return g;
}

AdjacencyGraph build_adjacency_graph(std::span<const ClauseStructure> cluster) {
  auto keyed = key_all(cluster);
  return build_adjacency_graph(std::span<const KeyedClause>(keyed));
}

std::vector<Path> enumerate_paths(const AdjacencyGraph& graph, PathMode mode, size_t cap) {
  if (graph.nodes.empty()) throw ArgumentError("enumerate_paths: empty graph");
  std::vector<Path> paths;
  for (const auto& [start, count] : graph.start_nodes) {
    if (mode == PathMode::kGreedy) {
      Path path{start};
      std::set<SlotKey> visited{start};
      while (true) {
        bool advanced = false;
        for (const auto& [next, w] : graph.out_edges(path.back())) {
          if (visited.insert(next).second) {
            path.push_back(next);
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
      paths.push_back(std::move(path));
      continue;
    }
    Path path{start};
    std::set<SlotKey> visited{start};
    std::function<void()> dfs = [&]() {
      if (paths.size() >= cap) return;
      bool extended = false;
      for (const auto& [next, w] : graph.out_edges(path.back())) {
        if (visited.count(next)) continue;
        extended = true;
        visited.insert(next);
        path.push_back(next);
        dfs();
        path.pop_back();
        visited.erase(next);
        if (paths.size() >= cap) return;
      }
      if (!extended) paths.push_back(path);
    };
    dfs();
    if (paths.size() >= cap) break;
  }
  return paths;
}

DependencyPairs dependency_pairs(std::span<const KeyedClause> cluster) {
  DependencyPairs deps;
  for (const KeyedClause& kc : cluster) {
    for (size_t i = 0; i < kc.nodes.size(); ++i) {
      int h = kc.index_of(kc.nodes[i].head_id);
      if (h >= 0) deps.insert(unordered(kc.keys[i], kc.keys[h]));
    }
  }
  return deps;
}

std::vector<Path> filter_paths(std::vector<Path> paths, std::span<const KeyedClause> cluster) {
  // Sides each key has been seen on; bit 1 = left, bit 2 = right.
  std::map<SlotKey, int> observed;
  std::set<SlotKey> governor_keys;
  bool every_clause_has_ancestor = !cluster.empty();
  for (const KeyedClause& kc : cluster) {
    if (kc.clause->v_ancestor.empty()) every_clause_has_ancestor = false;
    for (size_t i = 0; i < kc.nodes.size(); ++i) {
      const int pos = static_cast<int>(i);
      if (pos == kc.focus_index) continue;
      observed[kc.keys[i]] |= pos < kc.focus_index ? 1 : 2;
    }
    int gov = kc.index_of(kc.clause->focus.head_id);
    if (gov >= 0) governor_keys.insert(kc.keys[gov]);
  }

  std::vector<Path> kept;
  const SlotKey focus = focus_key();
  for (Path& path : paths) {
    auto focus_it = std::find(path.begin(), path.end(), focus);
    if (focus_it == path.end()) continue;
    if (every_clause_has_ancestor &&
        std::none_of(path.begin(), path.end(),
                     [&](const SlotKey& k) { return governor_keys.count(k) > 0; })) {
      continue;
    }
    const auto focus_pos = focus_it - path.begin();
    bool side_ok = true;
    for (size_t i = 0; i < path.size() && side_ok; ++i) {
      if (static_cast<long>(i) == focus_pos) continue;
      auto it = observed.find(path[i]);
      if (it == observed.end()) continue;
      int placed = static_cast<long>(i) < focus_pos ? 1 : 2;
      if ((it->second & placed) == 0) side_ok = false;
    }
    if (side_ok) kept.push_back(std::move(path));
  }
  return kept;
}

double score_path(const Path& path, const AdjacencyGraph& graph, const DependencyPairs& deps) {
  if (path.empty()) throw ArgumentError("score_path: empty path");
  const size_t n = path.size();
  std::vector<char> attached(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n && !attached[i]; ++j) {
      if (i != j && deps.count(unordered(path[i], path[j]))) attached[i] = 1;
    }
  }
  const auto non_dangling = std::count(attached.begin(), attached.end(), 1);
  const auto dangling = static_cast<long>(n) - non_dangling;
  double coverage = static_cast<double>(non_dangling) / static_cast<double>(n);
  double weight_sum = 0.0;
  int pairs = 0;
  for (size_t i = 0; i + 1 < n; ++i) {
    if (attached[i] && attached[i + 1]) {
      weight_sum += graph.weight(path[i], path[i + 1]);
      ++pairs;
    }
  }
  double average = pairs > 0 ? weight_sum / pairs : 0.0;
  return (coverage + average) / (1.0 + static_cast<double>(dangling));
}

double collexeme_strength(long count_in_slot, long cluster_size, long word_corpus_freq,
                          StrengthMode mode, long corpus_total) {
  if (cluster_size <= 0) throw ArgumentError("collexeme_strength: cluster_size must be > 0");
  if (count_in_slot < 0 || count_in_slot > cluster_size) {
    throw ArgumentError("collexeme_strength: count outside [0, cluster_size]");
  }
  if (mode == StrengthMode::kConditional) {
    return static_cast<double>(count_in_slot) / static_cast<double>(cluster_size);
  }
  if (corpus_total <= 0) throw ArgumentError("collexeme_strength: literal mode needs corpus_total");
  const double total = static_cast<double>(corpus_total);
  const double joint = count_in_slot / total;
  const double prior = word_corpus_freq / total;
  const double p_col = cluster_size / total;
  return std::clamp(joint * prior / p_col, 0.0, 1.0);
}

int Collostruction::focus_index() const {
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].key.is_focus()) return static_cast<int>(i);
  }
  return -1;
}

int Collostruction::head_edge(int slot) const {
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].dependent == slot) return static_cast<int>(i);
  }
  return -1;
}

namespace {

bool edges_cross(const CollostructionEdge& e1, const CollostructionEdge& e2) {
  int a = std::min(e1.dependent, e1.head), b = std::max(e1.dependent, e1.head);
  int c = std::min(e2.dependent, e2.head), d = std::max(e2.dependent, e2.head);
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

// Heads for each slot, chosen by evidence count (ties by key) while keeping
// the edge set acyclic. Returns head index per slot, -1 for none.
std::vector<int> choose_heads(const std::vector<SlotKey>& slots,
                              const std::map<SlotKey, SlotEvidence>& evidence) {
  const int n = static_cast<int>(slots.size());
  std::map<SlotKey, int> pos;
  for (int i = 0; i < n; ++i) pos[slots[i]] = i;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int oa = evidence.at(slots[a]).occurrences, ob = evidence.at(slots[b]).occurrences;
    if (oa != ob) return oa > ob;
    return slots[a] < slots[b];
  });
  std::vector<int> head(n, -1);
  for (int s : order) {
    std::vector<std::pair<int, SlotKey>> candidates;
    for (const auto& [key, count] : evidence.at(slots[s]).heads) {
      if (pos.count(key) && !(key == slots[s])) candidates.emplace_back(count, key);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [count, key] : candidates) {
      int h = pos[key];
      bool cycle = false;
      for (int cur = h; cur != -1; cur = head[cur]) {
        if (cur == s) {
          cycle = true;
          break;
        }
      }
      if (!cycle) {
        head[s] = h;
        break;
      }
    }
  }
  return head;
}

}  // namespace

std::optional<Collostruction> generate_collostruction(std::span<const ClauseStructure> cluster,
                                                      const std::string& verb,
                                                      long total_verb_instances,
                                                      const GenerationOptions& options) {
  if (cluster.empty()) throw ArgumentError("generate_collostruction: empty cluster");
  const long size = static_cast<long>(cluster.size());
  if (total_verb_instances < size) {
    throw ArgumentError("generate_collostruction: total instances below cluster size");
  }
  if (options.strength == StrengthMode::kLiteral && options.corpus == nullptr) {
    throw ArgumentError("generate_collostruction: literal strength needs corpus counts");
  }
  const auto keyed = key_all(cluster);
  const std::span<const KeyedClause> keyed_span(keyed);
  const AdjacencyGraph graph = build_adjacency_graph(keyed_span);
  auto paths = filter_paths(enumerate_paths(graph, options.path_mode, options.path_cap), keyed_span);
  if (paths.empty()) return std::nullopt;

  const DependencyPairs deps = dependency_pairs(keyed_span);
  const Path* best = nullptr;
  double best_score = 0.0;
  for (const Path& p : paths) {
    double s = score_path(p, graph, deps);
    if (best == nullptr || s > best_score ||
        (s == best_score && (p.size() > best->size() || (p.size() == best->size() && p < *best)))) {
      best = &p;
      best_score = s;
    }
  }

  std::map<SlotKey, SlotEvidence> evidence;
  std::map<std::string, int> focus_deprels;
  std::set<std::string> sent_ids;
  for (const KeyedClause& kc : keyed) {
    sent_ids.insert(kc.clause->sent_id);
    ++focus_deprels[kc.clause->focus.deprel];
    for (size_t i = 0; i < kc.nodes.size(); ++i) {
      SlotEvidence& ev = evidence[kc.keys[i]];
      ++ev.occurrences;
      ++ev.words[kc.nodes[i].dep_form];
      int h = kc.index_of(kc.nodes[i].head_id);
      if (h >= 0) ++ev.heads[kc.keys[h]];
    }
  }

  Collostruction col;
  col.verb = verb;
  col.support = size;
  col.p_col = static_cast<double>(size) / static_cast<double>(total_verb_instances);
  col.focus_deprel = std::max_element(focus_deprels.begin(), focus_deprels.end(),
                                      [](const auto& a, const auto& b) {
                                        return a.second < b.second;
                                      })->first;
  for (const auto& id : sent_ids) {
    if (col.example_sent_ids.size() >= options.max_examples) break;
    col.example_sent_ids.push_back(id);
  }

  // Prune slots until the structure is connected to the focus and projective.
  std::vector<SlotKey> slots = *best;
  std::vector<int> head;
  while (true) {
    head = choose_heads(slots, evidence);
    const int n = static_cast<int>(slots.size());
    const int focus = static_cast<int>(std::find(slots.begin(), slots.end(), focus_key()) -
                                       slots.begin());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
      if (head[i] >= 0) {
        adj[i].push_back(head[i]);
        adj[head[i]].push_back(i);
      }
    }
    std::vector<char> reached(n, 0);
    std::vector<int> stack{focus};
    reached[focus] = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int nb : adj[cur]) {
        if (!reached[nb]) {
          reached[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    if (std::count(reached.begin(), reached.end(), 1) < n) {
      std::vector<SlotKey> next;
      for (int i = 0; i < n; ++i) {
        if (reached[i]) next.push_back(slots[i]);
      }
      slots = std::move(next);
      continue;
    }
    std::vector<CollostructionEdge> edges;
    for (int i = 0; i < n; ++i) {
      if (head[i] >= 0) edges.push_back({i, head[i], "", 0.0});
    }
    std::set<int> offenders;
    for (size_t a = 0; a < edges.size(); ++a) {
      for (size_t b = a + 1; b < edges.size(); ++b) {
        if (edges_cross(edges[a], edges[b])) {
          for (int s : {edges[a].dependent, edges[a].head, edges[b].dependent, edges[b].head}) {
            if (s != focus) offenders.insert(s);
          }
        }
      }
    }
    if (offenders.empty()) break;
    int victim = *std::min_element(offenders.begin(), offenders.end(), [&](int a, int b) {
      int oa = evidence.at(slots[a]).occurrences, ob = evidence.at(slots[b]).occurrences;
      if (oa != ob) return oa < ob;
      return slots[b] < slots[a];
    });
    slots.erase(slots.begin() + victim);
  }

  for (const SlotKey& key : slots) {
    const SlotEvidence& ev = evidence.at(key);
    Slot slot;
    slot.key = key;
    if (key.is_focus()) {
      slot.p_slot = 1.0;
      slot.collexemes.push_back({verb, size, 1.0});
    } else {
      slot.p_slot = static_cast<double>(ev.occurrences) / static_cast<double>(size);
      for (const auto& [word, count] : ev.words) {
        long freq = 0;
        long total = 0;
        if (options.corpus != nullptr) {
          auto it = options.corpus->word_freq.find(word);
          freq = it == options.corpus->word_freq.end() ? 0 : it->second;
          total = options.corpus->total_tokens;
        }
        slot.collexemes.push_back(
            {word, count, collexeme_strength(count, size, freq, options.strength, total)});
      }
      std::stable_sort(slot.collexemes.begin(), slot.collexemes.end(),
                       [](const Collexeme& a, const Collexeme& b) {
                         if (a.p_lex != b.p_lex) return a.p_lex > b.p_lex;
                         return a.count > b.count;
                       });
      // Literal strength can reach zero for words the corpus counts never saw.
      std::erase_if(slot.collexemes, [](const Collexeme& c) { return c.p_lex <= 0.0; });
    }
    col.slots.push_back(std::move(slot));
  }
  for (size_t i = 0; i < slots.size(); ++i) {
    if (head[i] < 0) continue;
    CollostructionEdge e;
    e.dependent = static_cast<int>(i);
    e.head = head[i];
    e.deprel = slots[i].is_focus() ? col.focus_deprel : slots[i].deprel;
    e.p_slot = col.slots[i].p_slot;
    col.edges.push_back(std::move(e));
  }
  return col;
}

std::vector<std::string> validate_collostruction(const Collostruction& c) {
  std::vector<std::string> problems;
  auto bad = [&](const std::string& what) { problems.push_back(what); };
  const int n = static_cast<int>(c.slots.size());
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };

  int focus_count = 0;
  int focus = -1;
  std::set<SlotKey> keys;
  for (int i = 0; i < n; ++i) {
    const Slot& s = c.slots[i];
    if (!keys.insert(s.key).second) bad("duplicate slot key " + to_string(s.key));
    if (s.key.is_focus()) {
      ++focus_count;
      focus = i;
      if (s.collexemes.size() != 1 || s.collexemes[0].word != c.verb ||
          s.collexemes[0].p_lex != 1.0) {
        bad("focus slot must hold exactly the verb with p_lex 1");
      }
    }
    if (!in_unit(s.p_slot)) bad("slot " + to_string(s.key) + " has p_slot outside [0,1]");
    if (s.collexemes.empty()) bad("slot " + to_string(s.key) + " has no collexemes");
    for (const Collexeme& x : s.collexemes) {
      if (x.count < 1) bad("collexeme '" + x.word + "' has count < 1");
      if (!(x.p_lex > 0.0 && x.p_lex <= 1.0)) bad("collexeme '" + x.word + "' has p_lex outside (0,1]");
    }
    for (size_t k = 1; k < s.collexemes.size(); ++k) {
      if (s.collexemes[k].p_lex > s.collexemes[k - 1].p_lex) {
        bad("collexemes of " + to_string(s.key) + " are not sorted by p_lex");
      }
    }
  }
  if (focus_count != 1) bad("expected exactly one focus slot, found " + std::to_string(focus_count));
  if (!in_unit(c.p_col)) bad("p_col outside [0,1]");
  if (c.support < 1) bad("support < 1");

  std::vector<int> head(n, -1);
  bool edges_ok = true;
  for (const auto& e : c.edges) {
    if (e.dependent < 0 || e.dependent >= n || e.head < 0 || e.head >= n || e.dependent == e.head) {
      bad("edge endpoint out of range");
      edges_ok = false;
      continue;
    }
    if (head[e.dependent] != -1) bad("slot " + std::to_string(e.dependent) + " has two heads");
    head[e.dependent] = e.head;
    if (!in_unit(e.p_slot)) bad("edge p_slot outside [0,1]");
    if (e.deprel.empty()) bad("edge without deprel");
  }
  if (!edges_ok || focus < 0) return problems;

  for (int s = 0; s < n; ++s) {
    int steps = 0;
    for (int cur = s; cur != -1 && steps <= n; cur = head[cur]) ++steps;
    if (steps > n) {
      bad("edges form a cycle");
      break;
    }
  }
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : c.edges) {
    adj[e.dependent].push_back(e.head);
    adj[e.head].push_back(e.dependent);
  }
  std::vector<char> reached(n, 0);
  std::vector<int> stack{focus};
  reached[focus] = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int nb : adj[cur]) {
      if (!reached[nb]) {
        reached[nb] = 1;
        stack.push_back(nb);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!reached[i]) bad("slot " + to_string(c.slots[i].key) + " is not connected to the focus");
  }
  for (size_t a = 0; a < c.edges.size(); ++a) {
    for (size_t b = a + 1; b < c.edges.size(); ++b) {
      if (edges_cross(c.edges[a], c.edges[b])) bad("crossing edges (non-projective)");
    }
  }
  return problems;
}

}  // namespace collo
