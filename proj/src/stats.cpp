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

#include "collo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "collo/error.hpp"

namespace collo {

namespace {

void check_samples(std::span<const double> samples) {
  for (double x : samples) {
    if (!std::isfinite(x) || x <= 0.0) {
      throw ArgumentError("power-law samples must be positive and finite");
    }
  }
}

std::vector<double> tail_of(std::span<const double> samples, double x_min) {
  std::vector<double> tail;
  for (double x : samples) {
    if (x >= x_min) tail.push_back(x);
  }
  std::sort(tail.begin(), tail.end());
  return tail;
}

// Exponent and KS distance for a sorted tail; nullopt when degenerate.
std::optional<PowerLawFit> fit_tail(const std::vector<double>& tail, double x_min) {
  double log_sum = 0.0;
  for (double x : tail) log_sum += std::log(x / x_min);
  if (!(log_sum > 0.0)) return std::nullopt;
  PowerLawFit fit;
  fit.x_min = x_min;
  fit.n_tail = tail.size();
  fit.exponent = 1.0 + static_cast<double>(tail.size()) / log_sum;
  const double n = static_cast<double>(tail.size());
  double ks = 0.0;
  for (size_t i = 0; i < tail.size(); ++i) {
    double model = 1.0 - std::pow(tail[i] / x_min, 1.0 - fit.exponent);
    ks = std::max({ks, std::abs(static_cast<double>(i + 1) / n - model),
                   std::abs(static_cast<double>(i) / n - model)});
  }
  fit.ks = ks;
  return fit;
}

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> samples, std::optional<double> x_min) {
  check_samples(samples);
  if (samples.size() < kMinPowerLawSamples) {
    throw ArgumentError("power-law fit needs at least " + std::to_string(kMinPowerLawSamples) +
                        " samples");
  }
  if (x_min) {
    if (!(*x_min > 0.0)) throw ArgumentError("x_min must be positive");
    const double max = *std::max_element(samples.begin(), samples.end());
    if (*x_min > max) throw ArgumentError("x_min exceeds the largest sample");
    auto tail = tail_of(samples, *x_min);
    if (tail.size() < kMinPowerLawSamples) {
      throw ArgumentError("fewer than " + std::to_string(kMinPowerLawSamples) +
                          " samples at or above x_min");
    }
    auto fit = fit_tail(tail, *x_min);
    if (!fit) throw ArgumentError("degenerate sample: no spread above x_min");
    return *fit;
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::optional<PowerLawFit> best;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    if (sorted.size() - i < kMinPowerLawSamples) break;
    std::vector<double> tail(sorted.begin() + static_cast<long>(i), sorted.end());
    auto fit = fit_tail(tail, sorted[i]);
    if (fit && (!best || fit->ks < best->ks)) best = fit;
  }
  if (!best) throw ArgumentError("degenerate sample: no candidate x_min gives a finite fit");
  return *best;
}

LikelihoodRatio compare_power_exponential(std::span<const double> samples, double x_min) {
  const PowerLawFit fit = fit_power_law(samples, x_min);
  const auto tail = tail_of(samples, x_min);
  const double n = static_cast<double>(tail.size());
  const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / n;
  if (!(mean > x_min)) throw ArgumentError("degenerate sample: exponential fit undefined");
  const double lambda = 1.0 / (mean - x_min);
  const double alpha = fit.exponent;

  std::vector<double> diff(tail.size());
  for (size_t i = 0; i < tail.size(); ++i) {
    const double x = tail[i];
    const double ll_power = std::log(alpha - 1.0) - std::log(x_min) - alpha * std::log(x / x_min);
    const double ll_exp = std::log(lambda) - lambda * (x - x_min);
    diff[i] = ll_power - ll_exp;
  }
  const double sum = std::accumulate(diff.begin(), diff.end(), 0.0);
  const double mean_diff = sum / n;
  double var = 0.0;
  for (double d : diff) var += (d - mean_diff) * (d - mean_diff);
  var /= n;
  LikelihoodRatio out;
  if (var <= 0.0) {
    out.R = 0.0;
    out.p = 1.0;
    return out;
  }
  out.R = sum / std::sqrt(n * var);
  out.p = std::erfc(std::abs(out.R) / std::sqrt(2.0));
  return out;
}

PowerLawReport analyze_power_law(std::span<const double> samples, std::optional<double> x_min) {
  PowerLawReport report;
  report.fit = fit_power_law(samples, x_min);
  auto lr = compare_power_exponential(samples, report.fit.x_min);
  report.R = lr.R;
  report.p = lr.p;
  return report;
}

std::vector<SlotStat> slot_statistics(const Database& db) {
  std::map<std::string, long> present;
  std::map<std::string, std::pair<double, long>> p_slot_sum;
  long total = 0;
  for (const auto& v : db.verbs) {
    for (const auto& c : v.collostructions) {
      ++total;
      std::set<std::string> seen;
      for (const Slot& s : c.slots) {
        if (s.key.is_focus()) continue;
        seen.insert(s.key.deprel);
        auto& acc = p_slot_sum[s.key.deprel];
        acc.first += s.p_slot;
        ++acc.second;
      }
      for (const auto& d : seen) ++present[d];
    }
  }
  if (total == 0) throw InputError("slot statistics of an empty database");
  std::vector<SlotStat> out;
  for (const auto& [deprel, count] : present) {
    SlotStat s;
    s.deprel = deprel;
    s.collostructions = count;
    s.occurrence_fraction = static_cast<double>(count) / static_cast<double>(total);
    const auto& acc = p_slot_sum[deprel];
    s.mean_p_slot = acc.first / static_cast<double>(acc.second);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const SlotStat& a, const SlotStat& b) {
    return a.occurrence_fraction > b.occurrence_fraction;
  });
  return out;
}

CoherenceResult within_slot_similarity(const Slot& slot, const EmbeddingStore& word_embeddings,
                                       bool literal_denominator) {
  if (slot.collexemes.size() < 2) {
    throw ArgumentError("within-slot similarity needs at least 2 collexemes");
  }
  CoherenceResult result;
  std::vector<const Vector*> vecs;
  for (const Collexeme& x : slot.collexemes) {
    const Vector* v = word_embeddings.find(x.word);
    if (v == nullptr) {
      result.skipped.push_back(x.word);
    } else {
      vecs.push_back(v);
    }
  }
  if (vecs.size() < 2) {
    throw InputError("within-slot similarity: fewer than 2 collexemes have embeddings");
  }
  double sum = 0.0;
  long pairs = 0;
  for (size_t i = 0; i < vecs.size(); ++i) {
    for (size_t j = i + 1; j < vecs.size(); ++j) {
      sum += cosine(*vecs[i], *vecs[j]);
      ++pairs;
    }
  }
  result.used = vecs.size();
  result.similarity = literal_denominator ? sum / static_cast<double>(vecs.size() - 1)
                                          : sum / static_cast<double>(pairs);
  return result;
}

void SememeLexicon::add_word(const std::string& word, std::vector<std::string> sememes) {
  auto& list = words_[word];
  for (auto& s : sememes) {
    if (!s.empty() && std::find(list.begin(), list.end(), s) == list.end()) {
      list.push_back(std::move(s));
    }
  }
}

void SememeLexicon::add_hypernym(const std::string& sememe, const std::string& parent) {
  if (sememe == parent) throw InputError("sememe '" + sememe + "' is its own hypernym");
  for (auto it = parent_.find(parent); it != parent_.end(); it = parent_.find(it->second)) {
    if (it->second == sememe) {
      throw InputError("hypernym cycle through '" + sememe + "'");
    }
  }
  auto [it, inserted] = parent_.emplace(sememe, parent);
  if (!inserted && it->second != parent) {
    throw InputError("sememe '" + sememe + "' has two hypernyms");
  }
}

void SememeLexicon::load_words(std::istream& in) {
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected '<word>\\t<sememes>'", line_no);
    std::vector<std::string> sememes;
    std::stringstream list(line.substr(tab + 1));
    std::string s;
    while (std::getline(list, s, ',')) sememes.push_back(s);
    add_word(line.substr(0, tab), std::move(sememes));
  }
}

void SememeLexicon::load_hypernyms(std::istream& in) {
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected '<sememe>\\t<parent>'", line_no);
    add_hypernym(line.substr(0, tab), line.substr(tab + 1));
  }
}

std::vector<std::string> SememeLexicon::expand(const std::string& word) const {
  std::vector<std::string> out;
  auto it = words_.find(word);
  if (it == words_.end()) return out;
  auto push = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& s : it->second) {
    push(s);
    for (auto p = parent_.find(s); p != parent_.end(); p = parent_.find(p->second)) {
      push(p->second);
    }
  }
  return out;
}

SememeLexicon read_sememe_lexicon(const std::string& words_path,
                                  const std::string& hypernyms_path) {
  SememeLexicon lex;
  std::ifstream words(words_path);
  if (!words) throw Error(ErrorKind::kIo, "cannot open sememe lexicon '" + words_path + "'");
  lex.load_words(words);
  if (!hypernyms_path.empty()) {
    std::ifstream hyper(hypernyms_path);
    if (!hyper) throw Error(ErrorKind::kIo, "cannot open hypernym file '" + hypernyms_path + "'");
    lex.load_hypernyms(hyper);
  }
  return lex;
}

std::vector<ActionSequence> action_sequences(const Database& db, const std::string& verb,
                                             const SememeLexicon& lexicon, size_t top_k) {
  if (lexicon.empty()) throw InputError("action sequences need a sememe lexicon");
  const VerbEntry* entry = db.find(verb);
  if (entry == nullptr) throw InputError("verb '" + verb + "' is not in the database");
  const auto& rels = action_relations();
  auto wanted = [&](const std::string& r) {
    return std::find(rels.begin(), rels.end(), r) != rels.end();
  };

  // (side rank, relation rank) keeps CHILD rows before ANCESTOR rows.
  std::map<std::pair<int, long>, std::map<std::string, long>> counts;
  auto tally = [&](int side, const std::string& rel, const Slot& slot) {
    auto& bucket = counts[{side, std::find(rels.begin(), rels.end(), rel) - rels.begin()}];
    for (const Collexeme& x : slot.collexemes) {
      for (const auto& s : lexicon.expand(x.word)) bucket[s] += x.count;
    }
  };
  for (const auto& c : entry->collostructions) {
    const int focus = c.focus_index();
    for (const auto& e : c.edges) {
      if (e.head == focus && wanted(e.deprel)) tally(0, e.deprel, c.slots[e.dependent]);
      if (e.dependent == focus && wanted(e.deprel)) tally(1, e.deprel, c.slots[e.head]);
    }
  }
  std::vector<ActionSequence> out;
  for (const auto& [key, bucket] : counts) {
    if (bucket.empty()) continue;
    ActionSequence seq;
    seq.relation = std::string(key.first == 0 ? "CHILD: " : "ANCESTOR: ") + upper(rels[key.second]);
    std::vector<std::pair<std::string, long>> ranked(bucket.begin(), bucket.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > top_k) ranked.resize(top_k);
    seq.sememes = std::move(ranked);
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace collo
