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

#ifndef COLLO_TESTS_HELPERS_HPP_
#define COLLO_TESTS_HELPERS_HPP_

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "collo/classifier.hpp"
#include "collo/clause.hpp"
#include "collo/colgen.hpp"
#include "collo/conllu.hpp"
#include "collo/database.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(COLLO_FIXTURE_DIR) + "/" + name; }

struct Row {
  std::string form;
  std::string tag;  // XPOS; UPOS is derived (VV -> VERB, else X)
  int head;
  std::string deprel;
};

inline collo::DependencyTree make_tree(const std::string& sent_id, const std::vector<Row>& rows) {
  std::vector<collo::Token> toks;
  for (size_t i = 0; i < rows.size(); ++i) {
    collo::Token t;
    t.id = static_cast<int>(i) + 1;
    t.form = rows[i].form;
    t.lemma = rows[i].form;
    t.xpos = rows[i].tag;
    t.upos = rows[i].tag == "VV" ? "VERB" : "X";
    t.head = rows[i].head;
    t.deprel = rows[i].deprel;
    toks.push_back(t);
  }
  std::string text;
  for (const auto& r : rows) text += r.form;
  return collo::DependencyTree(sent_id, text, toks);
}

// A clause built directly: nodes given as (deprel, head_form, dep_form),
// focus at index `focus`, all attached to the focus unless head_index says
// otherwise.
struct NodeSpec {
  std::string deprel;
  std::string dep_form;
  int head_index = -1;  // position in left + [focus] + right; -1 = the focus
};

inline collo::ClauseStructure make_clause(const std::string& verb, const std::vector<NodeSpec>& left,
                                          const std::vector<NodeSpec>& right,
                                          const std::string& focus_deprel = "root") {
  collo::ClauseStructure c;
  c.verb = verb;
  c.strategy = 1;
  const int focus_id = static_cast<int>(left.size()) + 1;
  c.target_id = focus_id;
  c.focus = {focus_id, 0, focus_deprel, collo::kRootWord, verb, collo::Side::kFocus};
  std::vector<NodeSpec> all = left;
  all.push_back({focus_deprel, verb, -2});
  all.insert(all.end(), right.begin(), right.end());
  for (size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (id == focus_id) continue;
    const int head_id = all[i].head_index < 0 ? focus_id : all[i].head_index + 1;
    collo::ClauseNode n{id, head_id, all[i].deprel, all[head_id - 1].dep_form, all[i].dep_form,
                        id < focus_id ? collo::Side::kLeft : collo::Side::kRight};
    c.v_child.push_back(n);
  }
  return c;
}

// A flat collostruction: `left` and `right` slots all headed by the focus.
struct SlotSpec {
  std::string deprel;
  std::vector<std::pair<std::string, long>> words;  // (word, count)
};

inline collo::Collostruction make_collostruction(const std::string& verb, const std::vector<SlotSpec>& left,
                                                 const std::vector<SlotSpec>& right, long support = 10,
                                                 double p_col = 0.5) {
  collo::Collostruction c;
  c.verb = verb;
  c.stage = "synsem";
  c.support = support;
  c.p_col = p_col;
  c.focus_deprel = "root";
  auto add = [&](const SlotSpec& s) {
    collo::Slot slot;
    slot.key = {collo::SlotSide::kChild, s.deprel, 1};
    long filled = 0;
    for (const auto& [w, n] : s.words) {
      slot.collexemes.push_back({w, n, static_cast<double>(n) / static_cast<double>(support)});
      filled += n;
    }
    std::stable_sort(slot.collexemes.begin(), slot.collexemes.end(),
                     [](const auto& a, const auto& b) { return a.p_lex > b.p_lex; });
    slot.p_slot = std::min(1.0, static_cast<double>(filled) / static_cast<double>(support));
    c.slots.push_back(slot);
  };
  for (const auto& s : left) add(s);
  collo::Slot focus;
  focus.key = collo::focus_key();
  focus.p_slot = 1.0;
  focus.collexemes.push_back({verb, support, 1.0});
  c.slots.push_back(focus);
  for (const auto& s : right) add(s);
  const int f = static_cast<int>(left.size());
  for (int i = 0; i < static_cast<int>(c.slots.size()); ++i)
    if (i != f) c.edges.push_back({i, f, c.slots[i].key.deprel, c.slots[i].p_slot});
  return c;
}

// A database of `n` random flat collostructions over a small vocabulary,
// split between two verbs.
inline collo::Database random_database(std::mt19937_64& rng, int n) {
  static const std::vector<std::string> deprels{"nsubj", "dobj", "advmod", "nmod:prep", "aux", "ccomp"};
  static const std::vector<std::string> words{"他", "我", "问题", "办法", "已经", "了", "在", "家"};
  collo::Database db;
  db.verbs = {{"解决", 0, {}}, {"体验", 0, {}}};
  for (int i = 0; i < n; ++i) {
    auto& entry = db.verbs[rng() % 2];
    const long support = 1 + static_cast<long>(rng() % 6);
    auto side = [&] {
      std::vector<SlotSpec> out;
      for (int k = static_cast<int>(rng() % 3); k > 0; --k) {
        SlotSpec s{deprels[rng() % deprels.size()], {}};
        std::set<std::string> used;
        for (int w = 1 + static_cast<int>(rng() % 2); w > 0; --w) {
          const auto& word = words[rng() % words.size()];
          if (used.insert(word).second) s.words.push_back({word, 1});
        }
        out.push_back(s);
      }
      return out;
    };
    auto left = side();
    auto right = side();
    entry.collostructions.push_back(make_collostruction(entry.verb, left, right, support, 0.01));
    entry.total_instances += support;
  }
  return db;
}

// Labelled feature vectors that a linear rule separates: deprels are drawn
// from one pool for both classes, while every similarity is above 0.55 for
// correct usage and below 0.45 for errors.
inline std::vector<collo::TrainingExample> synthetic_examples(std::mt19937_64& rng, int n, double error_share) {
  static const std::vector<std::string> deprels{"nsubj", "dobj", "advmod", "aux", "ccomp", "xcomp", "nmod:prep"};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<collo::TrainingExample> out;
  for (int i = 0; i < n; ++i) {
    collo::TrainingExample ex;
    ex.is_error = u(rng) < error_share;
    auto sim = [&] { return ex.is_error ? 0.45 * u(rng) : 0.55 + 0.45 * u(rng); };
    collo::FeatureVector f;
    f.core_dep_col = deprels[rng() % deprels.size()];
    f.core_dep_cls = deprels[rng() % deprels.size()];
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) f.deps_col.emplace_back(deprels[rng() % deprels.size()], sim());
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) f.deps_cls.emplace_back(deprels[rng() % deprels.size()], sim());
    ex.features = f;
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace testing

#endif  // COLLO_TESTS_HELPERS_HPP_
