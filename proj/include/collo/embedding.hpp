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

#ifndef COLLO_EMBEDDING_HPP_
#define COLLO_EMBEDDING_HPP_

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace collo {

using Vector = std::vector<double>;

// Id -> unit vector. All vectors share `dim` and are L2-normalized on insert.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }
  bool contains(std::string_view id) const;
  // nullptr when absent.
  const Vector* find(std::string_view id) const;
  const Vector& at(std::string_view id) const;

  // Normalizes and stores. Throws on arity mismatch, duplicate id,
  // non-finite values or a zero vector.
  void insert(std::string id, Vector v);

  // Ids in ascending byte order, for deterministic iteration.
  std::vector<std::string> ids() const;

 private:
  int dim_;
  std::unordered_map<std::string, Vector> vectors_;
};

// Format: first line "dim <N>", then "<id>\t<v1> <v2> ... <vN>" per line.
EmbeddingStore load_embeddings(std::istream& in, int expected_dim);
EmbeddingStore read_embeddings_file(const std::string& path, int expected_dim);
// Reads the dim from the header instead of checking it.
EmbeddingStore read_embeddings_file(const std::string& path);
void write_embeddings(std::ostream& out, const EmbeddingStore& store);

// Cosine of two equal-length nonzero vectors, clamped to [-1, 1].
double cosine(std::span<const double> u, std::span<const double> v);

// Deterministic stand-in for a pretrained encoder: character 1..3-gram counts
// hashed into `dim` buckets (FNV-1a, fixed seed), then L2-normalized.
Vector fallback_embed(std::string_view text, int dim);

inline constexpr int kDefaultFallbackDim = 128;

// Word similarity in [0, 1]: equal strings score 1; otherwise max(0, cosine)
// of the stored embeddings, or 0 when either word has no embedding.
class WordSimilarity {
 public:
  WordSimilarity() = default;
  explicit WordSimilarity(const EmbeddingStore* store) : store_(store) {}
  double operator()(std::string_view a, std::string_view b) const;

 private:
  const EmbeddingStore* store_ = nullptr;
};

// 64-bit FNV-1a; used wherever a stable hash is needed.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace collo

#endif  // COLLO_EMBEDDING_HPP_
