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

#include "collo/conllu.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "collo/error.hpp"

namespace collo {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool parse_int(std::string_view s, int* out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

struct PendingSentence {
  std::string sent_id;
  std::string text;
  std::vector<Token> tokens;
  long first_line = 0;
  bool active = false;
};

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> utf8_chars(std::string_view s) {
  std::vector<std::string> chars;
  size_t i = 0;
  while (i < s.size()) {
    auto lead = static_cast<unsigned char>(s[i]);
    size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    if (lead >= 0xF8 || i + len > s.size()) len = 1;
    for (size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    chars.emplace_back(s.substr(i, len));
    i += len;
  }
  return chars;
}

DependencyTree::DependencyTree(std::string sent_id, std::string text,
                               std::vector<Token> tokens)
    : sent_id_(std::move(sent_id)),
      text_(std::move(text)),
      tokens_(std::move(tokens)) {
  const int n = size();
  auto fail = [&](const std::string& what) {
    throw InputError("sentence '" + sent_id_ + "': " + what);
  };
  if (n == 0) fail("no tokens");
  children_.assign(n + 1, {});
  for (int i = 0; i < n; ++i) {
    const Token& t = tokens_[i];
    if (t.id != i + 1) fail("token ids are not contiguous at id " + std::to_string(t.id));
    if (t.head < 0 || t.head > n) {
      fail("token " + std::to_string(t.id) + " has head " +
           std::to_string(t.head) + " outside [0, " + std::to_string(n) + "]");
    }
    if (t.deprel.empty()) fail("token " + std::to_string(t.id) + " has an empty deprel");
    if (t.head == 0) {
      if (root_ != 0) fail("multiple roots (tokens " + std::to_string(root_) +
                           " and " + std::to_string(t.id) + ")");
      root_ = t.id;
    }
    children_[t.head].push_back(t.id);
  }
  if (root_ == 0) fail("no root token");
  // Every token must reach the root without revisiting a node.
  std::vector<int> state(n + 1, 0);  // 0 unseen, 1 on stack, 2 reaches root
  state[0] = 2;
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int cur = start;
    while (state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = tokens_[cur - 1].head;
    }
    if (state[cur] == 1) fail("cycle through token " + std::to_string(cur));
    for (int p : path) state[p] = 2;
  }
}

const std::string& DependencyTree::word(int id, WordIdentity identity) const {
  const Token& t = token(id);
  if (identity == WordIdentity::kLemma && !t.lemma.empty() && t.lemma != "_") {
    return t.lemma;
  }
  return t.form;
}

std::vector<DependencyTree> parse_conllu(std::istream& in) {
  std::vector<DependencyTree> trees;
  PendingSentence pending;
  std::string line;
  long line_no = 0;
  int sentence_ordinal = 0;

  auto flush = [&]() {
    if (!pending.active) return;
    ++sentence_ordinal;
    if (pending.tokens.empty()) {
      throw ParseError("sentence block without token lines", pending.first_line);
    }
    if (pending.sent_id.empty()) pending.sent_id = "s" + std::to_string(sentence_ordinal);
    trees.emplace_back(std::move(pending.sent_id), std::move(pending.text),
                       std::move(pending.tokens));
    pending = PendingSentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) {
      flush();
      continue;
    }
    if (!pending.active) {
      pending.active = true;
      pending.first_line = line_no;
    }
    if (view.front() == '#') {
      std::string_view body = trim(view.substr(1));
      auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        std::string_view key = trim(body.substr(0, eq));
        std::string_view value = trim(body.substr(eq + 1));
        if (key == "sent_id") pending.sent_id = std::string(value);
        if (key == "text") pending.text = std::string(value);
      }
      continue;
    }
    auto fields = split_tabs(view);
    if (fields.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::string_view id_field = fields[0];
    if (id_field.find('-') != std::string_view::npos ||
        id_field.find('.') != std::string_view::npos) {
      continue;  // multiword token range or empty node
    }
    Token t;
    if (!parse_int(id_field, &t.id)) {
      throw ParseError("invalid token id '" + std::string(id_field) + "'", line_no);
    }
    if (!parse_int(fields[6], &t.head)) {
      throw ParseError("invalid head '" + std::string(fields[6]) + "'", line_no);
    }
    t.form = fields[1];
    t.lemma = fields[2];
    t.upos = fields[3];
    t.xpos = fields[4];
    t.feats = fields[5];
    t.deprel = to_lower_ascii(fields[7]);
    t.deps = fields[8];
    t.misc = fields[9];
    if (t.deprel.empty() || t.deprel == "_") {
      throw ParseError("missing deprel", line_no);
    }
    pending.tokens.push_back(std::move(t));
  }
  flush();
  return trees;
}

std::vector<DependencyTree> parse_conllu_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in);
}

std::vector<DependencyTree> read_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus file '" + path + "'");
  try {
    return parse_conllu(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

void write_conllu(std::ostream& out, const DependencyTree& tree) {
  out << "# sent_id = " << tree.sent_id() << '\n';
  if (!tree.text().empty()) out << "# text = " << tree.text() << '\n';
  for (const Token& t : tree.tokens()) {
    out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t'
        << t.xpos << '\t' << t.feats << '\t' << t.head << '\t' << t.deprel
        << '\t' << t.deps << '\t' << t.misc << '\n';
  }
  out << '\n';
}

std::string to_conllu(const std::vector<DependencyTree>& trees) {
  std::ostringstream out;
  for (const auto& t : trees) write_conllu(out, t);
  return out.str();
}

}  // namespace collo
