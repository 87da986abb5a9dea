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

#include "collo/ged.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "collo/error.hpp"

namespace collo {
namespace {

constexpr char kSep = '\x1f';   // between word and deprel
constexpr char kPair = '\x1e';  // between the two halves of a bigram

std::string focus_label(const std::string& deprel) { return deprel + "-focus"; }

std::string slot_relation(const Collostruction& col, int slot) {
  const Slot& s = col.slots[slot];
  return s.key.is_focus() ? col.focus_deprel : s.key.deprel;
}

void add_unit(std::set<PatternUnit>& out, char tag, std::initializer_list<std::string_view> parts) {
  std::string u(1, tag);
  for (auto p : parts) {
    u += kSep;
    u += p;
  }
  out.insert(std::move(u));
}

}  // namespace

std::vector<PatternItem> pattern_items(const Collostruction& c) {
  std::vector<PatternItem> items;
  items.reserve(c.slots.size());
  for (const Slot& s : c.slots) {
    PatternItem it;
    it.deprel = s.key.is_focus() ? focus_label(c.focus_deprel) : s.key.deprel;
    for (const Collexeme& x : s.collexemes) it.words.push_back(x.word);
    items.push_back(std::move(it));
  }
  return items;
}

std::vector<PatternItem> pattern_items(const ClauseStructure& clause) {
  std::vector<PatternItem> items;
  for (const ClauseNode& n : clause.sequence()) {
    PatternItem it;
    it.deprel = n.token_id == clause.target_id ? focus_label(n.deprel) : n.deprel;
    it.words.push_back(n.dep_form);
    items.push_back(std::move(it));
  }
  return items;
}

const char* to_string(PatternCategory c) {
  switch (c) {
    case PatternCategory::kWordDepBigram: return "word-dep-bigram";
    case PatternCategory::kWordBigramUnigram: return "word-bigram-unigram";
    case PatternCategory::kDepBigram: return "dep-bigram";
    case PatternCategory::kWordDepUnigram: return "word-dep-unigram";
  }
  return "?";
}

std::set<PatternUnit> pattern_units(const std::vector<PatternItem>& items, PatternCategory category) {
  std::set<PatternUnit> out;
  const size_t n = items.size();
  switch (category) {
    case PatternCategory::kWordDepBigram:
      for (size_t i = 0; i + 1 < n; ++i)
        for (const auto& a : items[i].words)
          for (const auto& b : items[i + 1].words)
            add_unit(out, 'A', {a, items[i].deprel, std::string(1, kPair), b, items[i + 1].deprel});
      break;
    case PatternCategory::kWordBigramUnigram:
      for (size_t i = 0; i < n; ++i) {
        for (const auto& a : items[i].words) {
          add_unit(out, 'U', {a});
          if (i + 1 < n)
            for (const auto& b : items[i + 1].words) add_unit(out, 'B', {a, b});
        }
      }
      break;
    case PatternCategory::kDepBigram:
      for (size_t i = 0; i + 1 < n; ++i) add_unit(out, 'D', {items[i].deprel, items[i + 1].deprel});
      break;
    case PatternCategory::kWordDepUnigram:
      for (const auto& it : items)
        for (const auto& a : it.words) add_unit(out, 'W', {a, it.deprel});
      break;
  }
  return out;
}

std::string describe_unit(const PatternUnit& unit) {
  std::string out;
  for (size_t i = 2; i < unit.size(); ++i) {
    char ch = unit[i];
    if (ch == kSep) {
      out += '/';
    } else if (ch == kPair) {
      out += "+";
    } else {
      out += ch;
    }
  }
  // "a/d/+/b/e" reads better as "a/d + b/e".
  std::string tidy;
  for (size_t i = 0; i < out.size(); ++i) {
    if (out.compare(i, 3, "/+/") == 0) {
      tidy += " + ";
      i += 2;
    } else {
      tidy += out[i];
    }
  }
  return std::string(1, unit.empty() ? '?' : unit[0]) + ":" + tidy;
}

CollostructionIndex::CollostructionIndex(const Database& db) : refs_(flatten(db)) {
  for (const auto& ref : refs_) {
    by_verb_[ref.col->verb].push_back(ref.id);
    const auto items = pattern_items(*ref.col);
    for (size_t c = 0; c < kPatternCategories; ++c)
      for (const auto& u : pattern_units(items, static_cast<PatternCategory>(c)))
        postings_[c][u].push_back(ref.id);  // ids ascend, so lists stay sorted
  }
}

const std::vector<int>& CollostructionIndex::ids_for_verb(const std::string& verb) const {
  static const std::vector<int> kEmpty;
  auto it = by_verb_.find(verb);
  return it == by_verb_.end() ? kEmpty : it->second;
}

const std::vector<int>& CollostructionIndex::postings(PatternCategory category,
                                                      const PatternUnit& unit) const {
  static const std::vector<int> kEmpty;
  const auto& t = postings_[static_cast<size_t>(category)];
  auto it = t.find(unit);
  return it == t.end() ? kEmpty : it->second;
}

std::vector<int> heuristic_search(const ClauseStructure& clause, const CollostructionIndex& index,
                                  size_t per_pattern) {
  const auto& verb_ids = index.ids_for_verb(clause.verb);
  if (verb_ids.empty()) return {};
  const std::set<int> allowed(verb_ids.begin(), verb_ids.end());
  const auto items = pattern_items(clause);
  std::set<int> chosen;
  for (size_t c = 0; c < kPatternCategories; ++c) {
    const auto cat = static_cast<PatternCategory>(c);
    std::map<int, int> matches;
    for (const auto& u : pattern_units(items, cat))
      for (int id : index.postings(cat, u))
        if (allowed.count(id)) ++matches[id];
    std::vector<std::pair<int, int>> ranked(matches.begin(), matches.end());
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      long sa = index.get(a.first).support, sb = index.get(b.first).support;
      if (sa != sb) return sa > sb;
      return a.first < b.first;
    });
    for (size_t i = 0; i < ranked.size() && i < per_pattern; ++i) chosen.insert(ranked[i].first);
  }
  return {chosen.begin(), chosen.end()};
}

size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double relation_similarity(std::string_view a, std::string_view b) {
  const size_t m = std::max(a.size(), b.size());
  if (m == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(m);
}

double fuzzy_node_sim(const ClauseNode& node, const Collostruction& col, int slot,
                      const SimilarityParams& params, const WordSim& word_sim) {
  if (slot < 0 || slot >= static_cast<int>(col.slots.size()))
    throw ArgumentError("fuzzy_node_sim: slot index out of range");
  const Slot& s = col.slots[slot];
  const double rel = relation_similarity(node.deprel, slot_relation(col, slot));
  if (rel == 0.0 || s.p_slot == 0.0) return 0.0;

  double head = 0.0;
  const int e = col.head_edge(slot);
  if (e < 0) {
    head = word_sim(node.head_form, kRootWord);
  } else {
    for (const Collexeme& x : col.slots[col.edges[e].head].collexemes)
      head = std::max(head, word_sim(node.head_form, x.word));
  }
  double dep = 0.0;
  for (const Collexeme& x : s.collexemes) dep = std::max(dep, word_sim(node.dep_form, x.word));
  return s.p_slot * rel * (params.alpha_w * head + params.beta_w * dep);
}

double Alignment::total() const {
  double t = 0.0;
  for (const auto& p : pairs) t += p.similarity;
  return t;
}

double Alignment::clause_similarity(int clause_index) const {
  for (const auto& p : pairs)
    if (p.clause_index == clause_index) return p.similarity;
  return 0.0;
}

double Alignment::col_similarity(int col_index) const {
  for (const auto& p : pairs)
    if (p.col_index == col_index) return p.similarity;
  return 0.0;
}

Alignment align(const ClauseStructure& clause, const Collostruction& col,
                const SimilarityParams& params, const WordSim& word_sim) {
  const auto seq = clause.sequence();
  const int m = static_cast<int>(seq.size());
  const int n = static_cast<int>(col.slots.size());
  std::vector<double> sim(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) sim[i * n + j] = fuzzy_node_sim(seq[i], col, j, params, word_sim);

  std::vector<double> S(static_cast<size_t>(m + 1) * (n + 1), 0.0);
  auto at = [&](int i, int j) -> double& { return S[static_cast<size_t>(i) * (n + 1) + j]; };
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      at(i, j) = std::max({at(i - 1, j), at(i, j - 1), at(i - 1, j - 1) + sim[(i - 1) * n + j - 1]});

  Alignment out;
  int i = m, j = n;
  while (i > 0 && j > 0) {
    if (at(i, j) == at(i - 1, j)) {
      --i;
    } else if (at(i, j) == at(i, j - 1)) {
      --j;
    } else {
      out.pairs.push_back({i - 1, j - 1, sim[(i - 1) * n + j - 1]});
      --i;
      --j;
    }
  }
  std::reverse(out.pairs.begin(), out.pairs.end());
  return out;
}

AsymmetricSimilarity asym_similarities(double z, int clause_slots, int col_slots) {
  if (clause_slots < 0 || col_slots < 0) throw ArgumentError("asym_similarities: negative length");
  if (clause_slots == 0 && col_slots == 0)
    throw ArgumentError("asym_similarities: both sequences are empty");
  const double M = clause_slots, N = col_slots;
  AsymmetricSimilarity r;
  if (!(z > 0.0)) return r;
  r.sim2col = z / (z + 0.1 * (M - z) + 0.9 * (N - z));
  r.sim2clause = z / (z + 0.9 * (M - z) + 0.1 * (N - z));
  return r;
}

AsymmetricSimilarity asym_similarities(const Alignment& alignment, int clause_slots, int col_slots) {
  double z = 0.0;
  for (const auto& p : alignment.pairs) z += std::clamp(p.similarity, 0.0, 1.0);
  return asym_similarities(z, clause_slots, col_slots);
}

CoverageDensity coverage_density(const Alignment& alignment, int clause_slots, int col_slots) {
  if (clause_slots <= 0) throw ArgumentError("coverage_density: empty clause");
  CoverageDensity r;
  std::set<int> in_clause, in_col;
  for (const auto& p : alignment.pairs) {
    in_clause.insert(p.clause_index);
    in_col.insert(p.col_index);
  }
  auto adjacent = [](const std::set<int>& s) {
    int k = 0;
    for (int i : s)
      if (s.count(i + 1)) ++k;
    return k;
  };
  r.cov_clause = static_cast<double>(in_clause.size()) / clause_slots;
  r.den_clause = static_cast<double>(adjacent(in_clause)) / clause_slots;
  r.den_col = col_slots > 0 ? static_cast<double>(adjacent(in_col)) / col_slots : 0.0;
  return r;
}

void MatchWeights::validate() const {
  for (double w : {a, b, c, d, e})
    if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("match weights must be non-negative");
  if (std::abs(a + b + c + d + e - 1.0) > 1e-9)
    throw ArgumentError("match weights must sum to 1");
}

MatchScore match_score(const ClauseStructure& clause, const Collostruction& col,
                       const Alignment& alignment, const MatchWeights& weights) {
  const int m = static_cast<int>(clause.sequence().size());
  const int n = static_cast<int>(col.slots.size());
  const auto asym = asym_similarities(alignment, m, n);
  const auto cd = coverage_density(alignment, m, n);
  MatchScore s;
  s.sim2clause = asym.sim2clause;
  s.sim2col = asym.sim2col;
  s.cov_clause = cd.cov_clause;
  s.den_clause = cd.den_clause;
  s.den_col = cd.den_col;
  s.combined = weights.a * s.sim2clause + weights.b * s.sim2col + weights.c * s.cov_clause +
               weights.d * s.den_clause + weights.e * s.den_col;
  return s;
}

TopMatch select_top(const ClauseStructure& clause, const std::vector<int>& candidates,
                    const CollostructionIndex& index, const MatchWeights& weights,
                    const SimilarityParams& params, const WordSim& word_sim) {
  weights.validate();
  if (candidates.empty()) throw ArgumentError("select_top: no candidates");
  TopMatch best;
  for (int id : candidates) {
    const Collostruction& col = index.get(id);
    Alignment a = align(clause, col, params, word_sim);
    MatchScore s = match_score(clause, col, a, weights);
    bool better = best.id < 0 || s.combined > best.score.combined;
    if (!better && s.combined == best.score.combined) {
      const long sb = index.get(best.id).support;
      better = col.support > sb || (col.support == sb && id < best.id);
    }
    if (better) {
      best.id = id;
      best.alignment = std::move(a);
      best.score = s;
    }
  }
  return best;
}

FeatureVector extract_features(const ClauseStructure& clause, const Collostruction& col,
                               const Alignment& alignment) {
  FeatureVector f;
  const int focus = col.focus_index();
  if (focus < 0) throw InputError("collostruction has no focus slot");
  f.core_dep_col = col.focus_deprel;
  const int gov_edge = col.head_edge(focus);
  const int governor = gov_edge < 0 ? -1 : col.edges[gov_edge].head;
  for (int s = 0; s < static_cast<int>(col.slots.size()); ++s) {
    if (s == focus) continue;
    const int e = col.head_edge(s);
    const bool child = e >= 0 && col.edges[e].head == focus;
    if (child || s == governor)
      f.deps_col.emplace_back(col.slots[s].key.deprel, alignment.col_similarity(s));
  }

  f.core_dep_cls = clause.focus.deprel;
  const auto seq = clause.sequence();
  for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
    if (seq[i].token_id == clause.target_id) continue;
    const EdgeCategory c = classify_edge(clause, seq[i]);
    if (c == EdgeCategory::kFocusChild || c == EdgeCategory::kHeadFocus)
      f.deps_cls.emplace_back(seq[i].deprel, alignment.clause_similarity(i));
  }
  return f;
}

std::string format_features(const FeatureVector& f) {
  std::ostringstream out;
  auto list = [&](const auto& deps) {
    for (size_t i = 0; i < deps.size(); ++i) {
      if (i) out << ' ';
      out << deps[i].first << ':' << deps[i].second;
    }
  };
  out << "col core=" << f.core_dep_col << " deps=[";
  list(f.deps_col);
  out << "]\tcls core=" << f.core_dep_cls << " deps=[";
  list(f.deps_cls);
  out << "]";
  return out.str();
}

std::vector<GedInstance> parse_ged_dataset(std::istream& in) {
  std::vector<GedInstance> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    try {
      GedInstance g;
      g.text = j.at("text").get<std::string>();
      if (j.contains("correction") && !j["correction"].is_null())
        g.correction = j["correction"].get<std::string>();
      g.verb = j.at("verb").get<std::string>();
      g.begin_offset = j.at("begin-offset").get<int>();
      g.end_offset = j.at("end-offset").get<int>();
      const std::string label = j.at("label").get<std::string>();
      if (label == "error") {
        g.is_error = true;
      } else if (label != "correct") {
        throw ParseError("label must be \"correct\" or \"error\"", lineno);
      }
      if (j.contains("sent_id")) g.sent_id = j["sent_id"].get<std::string>();
      if (g.begin_offset < 0 || g.end_offset < g.begin_offset ||
          g.end_offset > static_cast<int>(utf8_chars(g.text).size()))
        throw ParseError("offsets outside the text", lineno);
      out.push_back(std::move(g));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad record: ") + e.what(), lineno);
    }
  }
  return out;
}

std::vector<GedInstance> read_ged_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_ged_dataset(in);
}

std::string to_jsonl(const GedInstance& inst) {
  nlohmann::ordered_json j;
  j["text"] = inst.text;
  if (inst.correction) j["correction"] = *inst.correction;
  j["verb"] = inst.verb;
  j["begin-offset"] = inst.begin_offset;
  j["end-offset"] = inst.end_offset;
  j["label"] = inst.is_error ? "error" : "correct";
  if (!inst.sent_id.empty()) j["sent_id"] = inst.sent_id;
  return j.dump();
}

int locate_target(const DependencyTree& tree, const GedInstance& inst, const ClauseOptions& options) {
  // Code-point spans of each token over the concatenated forms, skipping
  // whitespace in the text when the forms can be found in order.
  const auto chars = utf8_chars(inst.text);
  size_t cursor = 0;
  for (const Token& t : tree.tokens()) {
    const auto fc = utf8_chars(t.form);
    while (cursor < chars.size() && (chars[cursor] == " " || chars[cursor] == "\t")) ++cursor;
    bool match = cursor + fc.size() <= chars.size() &&
                 std::equal(fc.begin(), fc.end(), chars.begin() + cursor);
    if (!match) break;
    const int begin = static_cast<int>(cursor), end = static_cast<int>(cursor + fc.size());
    if (begin < inst.end_offset && inst.begin_offset < end && is_verb(t, options)) return t.id;
    cursor += fc.size();
  }
  for (const Token& t : tree.tokens())
    if (is_verb(t, options) && tree.word(t.id, options.word_identity) == inst.verb) return t.id;
  for (const Token& t : tree.tokens())
    if (is_verb(t, options) && t.form == inst.verb) return t.id;
  throw InputError("sentence " + tree.sent_id() + ": verb '" + inst.verb + "' not found");
}

}  // namespace collo
