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

#include "collo/clause.hpp"

#include <algorithm>
#include <unordered_set>

#include "collo/error.hpp"

namespace collo {

namespace {

bool is_subject(const std::string& deprel) {
  return deprel == "nsubj" || deprel == "nsubjpass" || deprel == "nsubj:pass";
}

// Subject and object dependents of an ancestor.
bool is_skeleton(const std::string& deprel) {
  return is_subject(deprel) || deprel == "dobj" || deprel == "obj" || deprel == "iobj";
}

class Builder {
 public:
  Builder(const DependencyTree& tree, int target, WordIdentity identity)
      : tree_(tree), target_(target), identity_(identity) {
    used_.insert(target);
  }

  ClauseNode node(int id) const {
    const Token& t = tree_.token(id);
    ClauseNode n;
    n.token_id = id;
    n.head_id = t.head;
    n.deprel = t.deprel;
    n.head_form = t.head == 0 ? kRootWord : tree_.word(t.head, identity_);
    n.dep_form = tree_.word(id, identity_);
    n.side = id < target_ ? Side::kLeft : (id > target_ ? Side::kRight : Side::kFocus);
    return n;
  }

  std::vector<int> children(int id) const {
    std::vector<int> out;
    for (int c : tree_.children(id)) {
      if (tree_.token(c).deprel != "punct") out.push_back(c);
    }
    return out;
  }

  bool has_subject_child(int id) const {
    for (int c : children(id)) {
      if (is_subject(tree_.token(c).deprel)) return true;
    }
    return false;
  }

  // The head's children and, for each, its own children.
  void add_child_block(int head, bool skip_conj, std::vector<ClauseNode>& out) {
    for (int c : children(head)) {
      if (skip_conj && tree_.token(c).deprel == "conj") continue;
      add(c, out, /*allow_target=*/true);
      for (int g : children(c)) add(g, out, true);
    }
  }

  void add(int id, std::vector<ClauseNode>& out, bool allow_target) {
    if (id == target_ && allow_target) {
      if (!target_listed_) {
        target_listed_ = true;
        out.push_back(node(id));
      }
      return;
    }
    if (used_.insert(id).second) out.push_back(node(id));
  }

 private:
  const DependencyTree& tree_;
  int target_;
  WordIdentity identity_;
  std::unordered_set<int> used_;
  bool target_listed_ = false;
};

void sort_by_position(std::vector<ClauseNode>& nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [](const ClauseNode& a, const ClauseNode& b) { return a.token_id < b.token_id; });
}

}  // namespace

const char* to_string(EdgeCategory c) {
  switch (c) {
    case EdgeCategory::kFocusChild: return "FOCUS>CHILD";
    case EdgeCategory::kHeadFocus: return "HEAD>FOCUS";
    case EdgeCategory::kContextHead: return "CONTEXT>HEAD";
    case EdgeCategory::kHeadContext: return "HEAD>CONTEXT";
    case EdgeCategory::kContextContext: return "CONTEXT>CONTEXT";
  }
  return "?";
}

bool is_verb(const Token& t, const ClauseOptions& options) {
  return options.verb_tags.count(t.upos) > 0 || options.verb_tags.count(t.xpos) > 0;
}

std::vector<ClauseNode> ClauseStructure::sequence() const {
  std::vector<ClauseNode> out;
  std::unordered_set<int> seen;
  for (const auto* list : {&v_child, &v_ancestor}) {
    for (const ClauseNode& n : *list) {
      if (seen.insert(n.token_id).second) out.push_back(n);
    }
  }
  if (seen.insert(focus.token_id).second) out.push_back(focus);
  sort_by_position(out);
  return out;
}

const ClauseNode* ClauseStructure::find(int token_id) const {
  if (focus.token_id == token_id) return &focus;
  for (const auto* list : {&v_child, &v_ancestor}) {
    for (const ClauseNode& n : *list) {
      if (n.token_id == token_id) return &n;
    }
  }
  return nullptr;
}

ClauseStructure retrieve_clause(const DependencyTree& tree, int target_id,
                                const ClauseOptions& options) {
  if (target_id < 1 || target_id > tree.size()) {
    throw ArgumentError("target id " + std::to_string(target_id) + " out of range in '" +
                        tree.sent_id() + "'");
  }
  const Token& target = tree.token(target_id);
  if (!is_verb(target, options)) {
    throw ArgumentError("target '" + target.form + "' in '" + tree.sent_id() +
                        "' is not tagged as a verb");
  }
  Builder b(tree, target_id, options.word_identity);
  ClauseStructure clause;
  clause.target_id = target_id;
  clause.sent_id = tree.sent_id();
  clause.verb = tree.word(target_id, options.word_identity);
  clause.focus = b.node(target_id);

  int block_head = target_id;
  if (target.head == 0) {
    clause.strategy = 1;
  } else if (target.deprel == "conj" && b.has_subject_child(target_id)) {
    clause.strategy = 2;
  } else {
    const int ancestor1 = target.head;
    if (b.has_subject_child(ancestor1)) {
      clause.strategy = 3;
      block_head = ancestor1;
    } else {
      clause.strategy = 4;
      const int ancestor2 = tree.token(ancestor1).head;
      // With no second ancestor, keep the target as the block head (the
      // shape of strategy 2).
      block_head = ancestor2 == 0 ? target_id : ancestor2;
    }
  }

  b.add_child_block(block_head, clause.strategy == 1, clause.v_child);
  if (block_head != target_id) b.add(block_head, clause.v_ancestor, false);
  const int ancestor = tree.token(block_head).head;
  if (ancestor != 0) {
    b.add(ancestor, clause.v_ancestor, false);
    for (int c : b.children(ancestor)) {
      if (is_skeleton(tree.token(c).deprel)) b.add(c, clause.v_ancestor, false);
    }
  }
  sort_by_position(clause.v_child);
  sort_by_position(clause.v_ancestor);
  return clause;
}

EdgeCategory classify_edge(const ClauseStructure& clause, const ClauseNode& node) {
  const ClauseNode* member = clause.find(node.token_id);
  if (member == nullptr) {
    throw ArgumentError("node " + std::to_string(node.token_id) + " is not part of the clause");
  }
  const int target = clause.target_id;
  if (member->token_id == target) return EdgeCategory::kHeadFocus;
  for (int cur = member->head_id; cur != 0;) {
    if (cur == target) return EdgeCategory::kFocusChild;
    const ClauseNode* up = clause.find(cur);
    if (up == nullptr) break;
    cur = up->head_id;
  }
  const int governor = clause.focus.head_id;
  if (governor != 0) {
    if (member->token_id == governor) return EdgeCategory::kHeadFocus;
    const ClauseNode* gov = clause.find(governor);
    if (gov != nullptr && gov->head_id != 0 && member->token_id == gov->head_id) {
      return EdgeCategory::kContextHead;
    }
  }
  if (member->head_id == clause.focus.head_id) return EdgeCategory::kHeadContext;
  return EdgeCategory::kContextContext;
}

std::string format_node(const ClauseNode& node) {
  return node.deprel + "(" + node.head_form + "," + node.dep_form + ")";
}

}  // namespace collo
