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

#ifndef COLLO_CONLLU_HPP_
#define COLLO_CONLLU_HPP_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace collo {

struct Token {
  int id = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats = "_";
  int head = 0;  // 0 = root
  std::string deprel;  // lower-cased on ingest
  std::string deps = "_";
  std::string misc = "_";

  // Coarse tag used by predicates: UPOS unless it is "_", else XPOS.
  const std::string& pos() const { return upos != "_" ? upos : xpos; }

  bool operator==(const Token&) const = default;
};

// Which column identifies a word for counting and similarity.
enum class WordIdentity { kLemma, kForm };

// One parsed sentence. Immutable once returned by the parser.
class DependencyTree {
 public:
  DependencyTree() = default;
  // Validates the tree invariants; throws collo::Error (kInput) naming sent_id.
  DependencyTree(std::string sent_id, std::string text,
                 std::vector<Token> tokens);

  const std::string& sent_id() const { return sent_id_; }
  const std::string& text() const { return text_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  int size() const { return static_cast<int>(tokens_.size()); }

  // 1-based access.
  const Token& token(int id) const { return tokens_.at(id - 1); }
  int root() const { return root_; }
  // Children of `id` (0 for the virtual root) in linear order.
  const std::vector<int>& children(int id) const { return children_.at(id); }

  // Lemma when present and not "_", else form (or always form).
  const std::string& word(int id, WordIdentity identity) const;

  bool operator==(const DependencyTree& other) const {
    return sent_id_ == other.sent_id_ && text_ == other.text_ &&
           tokens_ == other.tokens_;
  }

 private:
  std::string sent_id_;
  std::string text_;
  std::vector<Token> tokens_;
  std::vector<std::vector<int>> children_;
  int root_ = 0;
};

// Reads CoNLL-U. Multiword-token ranges ("1-2") and empty nodes ("1.1") are
// skipped. Sentences without a `# sent_id` comment get "s<N>" (1-based
// sentence ordinal within the stream).
std::vector<DependencyTree> parse_conllu(std::istream& in);
std::vector<DependencyTree> parse_conllu_string(std::string_view text);
std::vector<DependencyTree> read_conllu_file(const std::string& path);

void write_conllu(std::ostream& out, const DependencyTree& tree);
std::string to_conllu(const std::vector<DependencyTree>& trees);

std::string to_lower_ascii(std::string_view s);

// Splits UTF-8 into code points (each returned as its byte sequence).
// Invalid bytes are passed through one at a time.
std::vector<std::string> utf8_chars(std::string_view s);

}  // namespace collo

#endif  // COLLO_CONLLU_HPP_
