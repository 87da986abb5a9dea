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

#include "collo/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "collo/conllu.hpp"
#include "collo/error.hpp"

namespace collo {

namespace {

constexpr std::uint64_t kFallbackSeed = 0x9e3779b97f4a7c15ULL;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool EmbeddingStore::contains(std::string_view id) const {
  return find(id) != nullptr;
}

const Vector* EmbeddingStore::find(std::string_view id) const {
  auto it = vectors_.find(std::string(id));
  return it == vectors_.end() ? nullptr : &it->second;
}

const Vector& EmbeddingStore::at(std::string_view id) const {
  const Vector* v = find(id);
  if (v == nullptr) throw InputError("no embedding for id '" + std::string(id) + "'");
  return *v;
}

void EmbeddingStore::insert(std::string id, Vector v) {
  if (dim_ <= 0) throw ArgumentError("embedding store has no dimension");
  if (static_cast<int>(v.size()) != dim_) {
    throw InputError("embedding '" + id + "' has " + std::to_string(v.size()) +
                     " values, expected " + std::to_string(dim_));
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw InputError("embedding '" + id + "' has a non-finite value");
  }
  double n = norm(v);
  if (n == 0.0) throw InputError("embedding '" + id + "' is a zero vector");
  for (double& x : v) x /= n;
  auto [it, inserted] = vectors_.emplace(std::move(id), std::move(v));
  if (!inserted) throw InputError("duplicate embedding id '" + it->first + "'");
}

std::vector<std::string> EmbeddingStore::ids() const {
  std::vector<std::string> out;
  out.reserve(vectors_.size());
  for (const auto& [id, v] : vectors_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

EmbeddingStore load_impl(std::istream& in, int expected_dim, bool check_dim) {
  std::string line;
  long line_no = 0;
  int dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream header(line);
    std::string key;
    header >> key >> dim;
    if (key != "dim" || !header || dim <= 0) {
      throw ParseError("expected header 'dim <N>'", line_no);
    }
    break;
  }
  if (dim == 0) throw ParseError("empty embedding file", 0);
  if (check_dim && dim != expected_dim) {
    throw InputError("embedding dim " + std::to_string(dim) + " does not match expected " +
                     std::to_string(expected_dim));
  }
  EmbeddingStore store(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("expected '<id>\\t<values>'", line_no);
    }
    std::string id = line.substr(0, tab);
    Vector values;
    values.reserve(dim);
    const char* p = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      double x = 0.0;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc()) {
        throw ParseError("invalid number in embedding '" + id + "'", line_no);
      }
      values.push_back(x);
      p = next;
    }
    try {
      store.insert(std::move(id), std::move(values));
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return store;
}

}  // namespace

EmbeddingStore load_embeddings(std::istream& in, int expected_dim) {
  if (expected_dim <= 0) throw ArgumentError("expected_dim must be positive");
  return load_impl(in, expected_dim, true);
}

EmbeddingStore read_embeddings_file(const std::string& path, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open embedding file '" + path + "'");
  return load_embeddings(in, expected_dim);
}

EmbeddingStore read_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open embedding file '" + path + "'");
  return load_impl(in, 0, false);
}

void write_embeddings(std::ostream& out, const EmbeddingStore& store) {
  out << "dim " << store.dim() << '\n';
  out << std::setprecision(17);
  for (const auto& id : store.ids()) {
    out << id << '\t';
    const Vector& v = store.at(id);
    for (size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  }
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ArgumentError("cosine of vectors with different lengths");
  double nu = norm(u);
  double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw ArgumentError("cosine of a zero-norm vector");
  double dot = 0.0;
  for (size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

Vector fallback_embed(std::string_view text, int dim) {
  if (text.empty()) throw ArgumentError("fallback_embed of empty text");
  if (dim < 8) throw ArgumentError("fallback_embed needs dim >= 8");
  const auto chars = utf8_chars(text);
  Vector v(dim, 0.0);
  for (size_t n = 1; n <= 3; ++n) {
    for (size_t i = 0; i + n <= chars.size(); ++i) {
      std::string gram;
      for (size_t k = 0; k < n; ++k) gram += chars[i + k];
      std::uint64_t h = fnv1a64(gram, fnv1a64(std::to_string(n), kFallbackSeed));
      v[h % static_cast<std::uint64_t>(dim)] += 1.0;
    }
  }
  double nv = norm(v);
  for (double& x : v) x /= nv;
  return v;
}

double WordSimilarity::operator()(std::string_view a, std::string_view b) const {
  if (a == b) return 1.0;
  if (store_ == nullptr) return 0.0;
  const Vector* va = store_->find(a);
  const Vector* vb = store_->find(b);
  if (va == nullptr || vb == nullptr) return 0.0;
  double dot = 0.0;
  for (size_t i = 0; i < va->size(); ++i) dot += (*va)[i] * (*vb)[i];
  return std::clamp(dot, 0.0, 1.0);
}

}  // namespace collo
