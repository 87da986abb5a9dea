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

#ifndef COLLO_CLAUSE_HPP_
#define COLLO_CLAUSE_HPP_

#include <set>
#include <string>
#include <vector>

#include "collo/conllu.hpp"

namespace collo {

// Head word used for nodes attached to the virtual root.
inline constexpr const char* kRootWord = "<root>";

enum class Side { kLeft, kFocus, kRight };

// One dependency r(w_h, w_d): the edge from `head_id` to `token_id`.
struct ClauseNode {
  int token_id = 0;
  int head_id = 0;  // 0 when the node hangs from the virtual root
  std::string deprel;
  std::string head_form;
  std::string dep_form;
  Side side = Side::kLeft;  // linear position relative to the target

  bool operator==(const ClauseNode&) const = default;
};

// The subgraph retrieved around a target verb. Both lists are ordered by
// linear position. The target itself appears in v_child only under
// strategies 3 and 4; `focus` always holds its node.
struct ClauseStructure {
  std::vector<ClauseNode> v_child;
  std::vector<ClauseNode> v_ancestor;
  ClauseNode focus;
  int target_id = 0;
  int strategy = 0;  // 1..4
  std::string sent_id;
  std::string verb;  // the target's word identity

  // Union of v_child, v_ancestor and focus, deduplicated, in linear order.
  std::vector<ClauseNode> sequence() const;
  const ClauseNode* find(int token_id) const;
};

enum class EdgeCategory { kFocusChild, kHeadFocus, kContextHead, kHeadContext, kContextContext };

const char* to_string(EdgeCategory c);

struct ClauseOptions {
  std::set<std::string> verb_tags{"VERB", "VV", "VC", "VE"};
  WordIdentity word_identity = WordIdentity::kLemma;
};

bool is_verb(const Token& t, const ClauseOptions& options);

// Applies retrieval strategies 1..4 in order; the first that matches wins.
// Throws ArgumentError when the target is out of range or not a verb.
ClauseStructure retrieve_clause(const DependencyTree& tree, int target_id,
                                const ClauseOptions& options = {});

// Category of the edge whose dependent is `node`. The focus node's own edge
// counts as HEAD>FOCUS. Throws ArgumentError when the node is not in the
// clause.
EdgeCategory classify_edge(const ClauseStructure& clause, const ClauseNode& node);

// "r(w_h,w_d)" for debugging output.
std::string format_node(const ClauseNode& node);

}  // namespace collo

#endif  // COLLO_CLAUSE_HPP_
