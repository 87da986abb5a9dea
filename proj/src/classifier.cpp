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

#include "collo/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "collo/embedding.hpp"
#include "collo/error.hpp"

namespace collo {
namespace {

// Uniform helpers built on raw generator bits so results do not depend on
// the standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

size_t below(std::mt19937_64& rng, size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<size_t>(r % n);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

void fill_uniform(std::vector<double>& w, double limit, std::mt19937_64& rng) {
  for (double& x : w) x = (2.0 * unit(rng) - 1.0) * limit;
}

struct Adam {
  std::vector<double> m, v;
  void step(std::vector<double>& w, const std::vector<double>& g, double lr, long t) {
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    if (m.empty()) {
      m.assign(w.size(), 0.0);
      v.assign(w.size(), 0.0);
    }
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
    for (size_t i = 0; i < w.size(); ++i) {
      m[i] = b1 * m[i] + (1 - b1) * g[i];
      v[i] = b2 * v[i] + (1 - b2) * g[i] * g[i];
      w[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
  }
};

void softmax2(double z0, double z1, double& p0, double& p1) {
  const double m = std::max(z0, z1);
  const double e0 = std::exp(z0 - m), e1 = std::exp(z1 - m);
  p0 = e0 / (e0 + e1);
  p1 = e1 / (e0 + e1);
}

std::vector<double> json_vec(const nlohmann::ordered_json& j, const char* key, size_t n) {
  auto v = j.at(key).get<std::vector<double>>();
  if (v.size() != n) throw InputError(std::string("model: wrong size for ") + key);
  for (double x : v)
    if (!std::isfinite(x)) throw InputError(std::string("model: non-finite value in ") + key);
  return v;
}

}  // namespace

int DeprelVocabulary::add(const std::string& label) {
  auto [it, inserted] = ids_.emplace(label, static_cast<int>(labels_.size()) + 1);
  if (inserted) labels_.push_back(label);
  return it->second;
}

int DeprelVocabulary::id(const std::string& label) const {
  auto it = ids_.find(label);
  return it == ids_.end() ? 0 : it->second;
}

void ClassifierHyper::validate() const {
  if (embed_dim < 1 || hidden1 < 1 || hidden2 < 1) throw ArgumentError("layer sizes must be positive");
  if (batch_size < 1) throw ArgumentError("batch size must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ArgumentError("learning rate must be positive");
  if (epochs < 0) throw ArgumentError("epochs must be non-negative");
  if (resample_period < 1) throw ArgumentError("resample period must be positive");
}

bool decide_error(double c_prob, double e_prob) { return c_prob - e_prob < 0.0; }

struct Classifier::Forward {
  std::vector<int> ids[4];
  std::vector<double> h1, h2;
  double p[2] = {0.5, 0.5};
};

void Classifier::init(const ClassifierHyper& hyper, std::uint64_t seed) {
  hyper_ = hyper;
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  const int D = hyper.embed_dim, I = input_dim(), H1 = hyper.hidden1, H2 = hyper.hidden2;
  emb_.assign(vocab_.size() * D, 0.0);
  fill_uniform(emb_, 0.5, rng);
  w1_.assign(static_cast<size_t>(H1) * I, 0.0);
  fill_uniform(w1_, std::sqrt(6.0 / (I + H1)), rng);
  b1_.assign(H1, 0.0);
  w2_.assign(static_cast<size_t>(H2) * H1, 0.0);
  fill_uniform(w2_, std::sqrt(6.0 / (H1 + H2)), rng);
  b2_.assign(H2, 0.0);
  w3_.assign(2 * static_cast<size_t>(H2), 0.0);
  fill_uniform(w3_, std::sqrt(6.0 / (H2 + 2)), rng);
  b3_.assign(2, 0.0);
}

void Classifier::encode(const FeatureVector& f, std::vector<double>& x, Forward* trace) const {
  const int D = hyper_.embed_dim;
  x.assign(input_dim(), 0.0);
  std::vector<int> ids[4];
  ids[0].push_back(vocab_.id(f.core_dep_col));
  ids[1].push_back(vocab_.id(f.core_dep_cls));
  for (const auto& d : f.deps_col) ids[2].push_back(vocab_.id(d.first));
  for (const auto& d : f.deps_cls) ids[3].push_back(vocab_.id(d.first));
  for (int b = 0; b < 4; ++b) {
    if (ids[b].empty()) continue;
    const double scale = 1.0 / static_cast<double>(ids[b].size());
    for (int id : ids[b])
      for (int k = 0; k < D; ++k) x[b * D + k] += scale * emb_[static_cast<size_t>(id) * D + k];
  }
  auto stats = [&](const std::vector<std::pair<std::string, double>>& deps, int at) {
    double sum = 0.0, mx = 0.0;
    for (const auto& d : deps) {
      sum += d.second;
      mx = std::max(mx, d.second);
    }
    x[at] = deps.empty() ? 0.0 : sum / static_cast<double>(deps.size());
    x[at + 1] = mx;
    x[at + 2] = std::log1p(static_cast<double>(deps.size()));
  };
  stats(f.deps_col, 4 * D);
  stats(f.deps_cls, 4 * D + 3);
  if (trace)
    for (int b = 0; b < 4; ++b) trace->ids[b] = std::move(ids[b]);
}

std::pair<double, double> Classifier::logits(const FeatureVector& features) const {
  std::vector<double> x;
  encode(features, x, nullptr);
  const int I = input_dim(), H1 = hyper_.hidden1, H2 = hyper_.hidden2;
  std::vector<double> h1(H1), h2(H2);
  for (int i = 0; i < H1; ++i) {
    double s = b1_[i];
    for (int k = 0; k < I; ++k) s += w1_[static_cast<size_t>(i) * I + k] * x[k];
    h1[i] = std::max(0.0, s);
  }
  for (int i = 0; i < H2; ++i) {
    double s = b2_[i];
    for (int k = 0; k < H1; ++k) s += w2_[static_cast<size_t>(i) * H1 + k] * h1[k];
    h2[i] = std::max(0.0, s);
  }
  double z[2];
  for (int o = 0; o < 2; ++o) {
    double s = b3_[o];
    for (int k = 0; k < H2; ++k) s += w3_[static_cast<size_t>(o) * H2 + k] * h2[k];
    z[o] = s;
  }
  return {z[0], z[1]};
}

Prediction Classifier::predict(const FeatureVector* features) const {
  Prediction p;
  if (!features || w1_.empty()) {
    p.e_prob = error_prior_;
    p.c_prob = 1.0 - error_prior_;
    p.from_prior = true;
  } else {
    auto [z0, z1] = logits(*features);
    softmax2(z0, z1, p.c_prob, p.e_prob);
  }
  p.is_error = decide_error(p.c_prob, p.e_prob);
  return p;
}

Classifier train_classifier(std::span<const TrainingExample> examples, const ClassifierHyper& hyper,
                            const EpochCallback& on_epoch) {
  hyper.validate();
  std::vector<size_t> correct, errors;
  long n_error_all = 0;
  Classifier model;
  for (size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    if (ex.is_error) ++n_error_all;
    if (!ex.features) continue;
    (ex.is_error ? errors : correct).push_back(i);
    model.vocab_.add(ex.features->core_dep_col);
    model.vocab_.add(ex.features->core_dep_cls);
    for (const auto& d : ex.features->deps_col) model.vocab_.add(d.first);
    for (const auto& d : ex.features->deps_cls) model.vocab_.add(d.first);
  }
  if (correct.size() < 2 || errors.size() < 2)
    throw ArgumentError("training needs at least two featured examples of each class");
  model.error_prior_ = static_cast<double>(n_error_all) / static_cast<double>(examples.size());
  model.init(hyper, hyper.seed);

  const int D = hyper.embed_dim, I = model.input_dim(), H1 = hyper.hidden1, H2 = hyper.hidden2;
  std::mt19937_64 rng(hyper.seed);
  Adam a_emb, a_w1, a_b1, a_w2, a_b2, a_w3, a_b3;
  std::vector<double> g_emb, g_w1, g_b1, g_w2, g_b2, g_w3, g_b3;
  std::vector<size_t> sample;
  std::uint64_t sample_hash = 0;
  long step = 0;
  std::vector<double> x, h1(H1), h2(H2), dh1(H1), dh2(H2), dx(I);

  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    if (epoch % hyper.resample_period == 0) {
      sample = errors;
      if (errors.size() > correct.size()) {
        // Partial Fisher-Yates: the first |correct| positions form the draw.
        for (size_t i = 0; i < correct.size(); ++i)
          std::swap(sample[i], sample[i + below(rng, sample.size() - i)]);
        sample.resize(correct.size());
        std::sort(sample.begin(), sample.end());
      }
      std::string bytes;
      for (size_t s : sample) bytes.append(reinterpret_cast<const char*>(&s), sizeof s);
      sample_hash = fnv1a64(bytes);
    }
    std::vector<size_t> order = correct;
    order.insert(order.end(), sample.begin(), sample.end());
    shuffle(order, rng);

    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size(); start += hyper.batch_size) {
      const size_t end = std::min(order.size(), start + static_cast<size_t>(hyper.batch_size));
      g_emb.assign(model.emb_.size(), 0.0);
      g_w1.assign(model.w1_.size(), 0.0);
      g_b1.assign(H1, 0.0);
      g_w2.assign(model.w2_.size(), 0.0);
      g_b2.assign(H2, 0.0);
      g_w3.assign(model.w3_.size(), 0.0);
      g_b3.assign(2, 0.0);
      const double inv = 1.0 / static_cast<double>(end - start);
      for (size_t bi = start; bi < end; ++bi) {
        const auto& ex = examples[order[bi]];
        Classifier::Forward tr;
        model.encode(*ex.features, x, &tr);
        for (int i = 0; i < H1; ++i) {
          double s = model.b1_[i];
          for (int k = 0; k < I; ++k) s += model.w1_[static_cast<size_t>(i) * I + k] * x[k];
          h1[i] = std::max(0.0, s);
        }
        for (int i = 0; i < H2; ++i) {
          double s = model.b2_[i];
          for (int k = 0; k < H1; ++k) s += model.w2_[static_cast<size_t>(i) * H1 + k] * h1[k];
          h2[i] = std::max(0.0, s);
        }
        double z[2], p[2];
        for (int o = 0; o < 2; ++o) {
          double s = model.b3_[o];
          for (int k = 0; k < H2; ++k) s += model.w3_[static_cast<size_t>(o) * H2 + k] * h2[k];
          z[o] = s;
        }
        softmax2(z[0], z[1], p[0], p[1]);
        const int y = ex.is_error ? 1 : 0;
        loss_sum -= std::log(std::max(p[y], 1e-300));

        double dz[2] = {(p[0] - (y == 0)) * inv, (p[1] - (y == 1)) * inv};
        std::fill(dh2.begin(), dh2.end(), 0.0);
        for (int o = 0; o < 2; ++o) {
          g_b3[o] += dz[o];
          for (int k = 0; k < H2; ++k) {
            g_w3[static_cast<size_t>(o) * H2 + k] += dz[o] * h2[k];
            dh2[k] += model.w3_[static_cast<size_t>(o) * H2 + k] * dz[o];
          }
        }
        std::fill(dh1.begin(), dh1.end(), 0.0);
        for (int i = 0; i < H2; ++i) {
          if (h2[i] <= 0.0) continue;
          g_b2[i] += dh2[i];
          for (int k = 0; k < H1; ++k) {
            g_w2[static_cast<size_t>(i) * H1 + k] += dh2[i] * h1[k];
            dh1[k] += model.w2_[static_cast<size_t>(i) * H1 + k] * dh2[i];
          }
        }
        std::fill(dx.begin(), dx.end(), 0.0);
        for (int i = 0; i < H1; ++i) {
          if (h1[i] <= 0.0) continue;
          g_b1[i] += dh1[i];
          for (int k = 0; k < I; ++k) {
            g_w1[static_cast<size_t>(i) * I + k] += dh1[i] * x[k];
            dx[k] += model.w1_[static_cast<size_t>(i) * I + k] * dh1[i];
          }
        }
        for (int b = 0; b < 4; ++b) {
          if (tr.ids[b].empty()) continue;
          const double scale = 1.0 / static_cast<double>(tr.ids[b].size());
          for (int id : tr.ids[b])
            for (int k = 0; k < D; ++k) g_emb[static_cast<size_t>(id) * D + k] += scale * dx[b * D + k];
        }
      }
      ++step;
      a_emb.step(model.emb_, g_emb, hyper.learning_rate, step);
      a_w1.step(model.w1_, g_w1, hyper.learning_rate, step);
      a_b1.step(model.b1_, g_b1, hyper.learning_rate, step);
      a_w2.step(model.w2_, g_w2, hyper.learning_rate, step);
      a_b2.step(model.b2_, g_b2, hyper.learning_rate, step);
      a_w3.step(model.w3_, g_w3, hyper.learning_rate, step);
      a_b3.step(model.b3_, g_b3, hyper.learning_rate, step);
    }
    if (on_epoch) {
      EpochInfo info;
      info.epoch = epoch;
      info.sample_hash = sample_hash;
      info.sample_size = sample.size();
      info.mean_loss = order.empty() ? 0.0 : loss_sum / static_cast<double>(order.size());
      on_epoch(info);
    }
  }
  return model;
}

nlohmann::ordered_json Classifier::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "collo-classifier";
  j["version"] = 1;
  j["hyper"] = {{"embed_dim", hyper_.embed_dim}, {"hidden1", hyper_.hidden1},
                {"hidden2", hyper_.hidden2},     {"batch_size", hyper_.batch_size},
                {"learning_rate", hyper_.learning_rate}, {"epochs", hyper_.epochs},
                {"resample_period", hyper_.resample_period}, {"seed", hyper_.seed}};
  j["error_prior"] = error_prior_;
  j["vocabulary"] = vocab_.labels();
  j["embedding"] = emb_;
  j["w1"] = w1_;
  j["b1"] = b1_;
  j["w2"] = w2_;
  j["b2"] = b2_;
  j["w3"] = w3_;
  j["b3"] = b3_;
  return j;
}

Classifier Classifier::from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("format").get<std::string>() != "collo-classifier") throw InputError("not a classifier model");
    Classifier c;
    const auto& h = j.at("hyper");
    c.hyper_.embed_dim = h.at("embed_dim").get<int>();
    c.hyper_.hidden1 = h.at("hidden1").get<int>();
    c.hyper_.hidden2 = h.at("hidden2").get<int>();
    c.hyper_.batch_size = h.at("batch_size").get<int>();
    c.hyper_.learning_rate = h.at("learning_rate").get<double>();
    c.hyper_.epochs = h.at("epochs").get<int>();
    c.hyper_.resample_period = h.at("resample_period").get<int>();
    c.hyper_.seed = h.at("seed").get<std::uint64_t>();
    c.hyper_.validate();
    c.error_prior_ = j.at("error_prior").get<double>();
    if (!(c.error_prior_ >= 0.0 && c.error_prior_ <= 1.0)) throw InputError("model: bad error prior");
    for (const auto& l : j.at("vocabulary").get<std::vector<std::string>>()) c.vocab_.add(l);
    const size_t D = c.hyper_.embed_dim, I = c.input_dim(), H1 = c.hyper_.hidden1,
                 H2 = c.hyper_.hidden2;
    c.emb_ = json_vec(j, "embedding", c.vocab_.size() * D);
    c.w1_ = json_vec(j, "w1", H1 * I);
    c.b1_ = json_vec(j, "b1", H1);
    c.w2_ = json_vec(j, "w2", H2 * H1);
    c.b2_ = json_vec(j, "b2", H2);
    c.w3_ = json_vec(j, "w3", 2 * H2);
    c.b3_ = json_vec(j, "b3", 2);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model: ") + e.what());
  }
}

void write_classifier_file(const std::string& path, const Classifier& model) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + path);
    out << model.to_json().dump() << '\n';
    if (!out) throw IoError("cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot rename onto " + path);
}

Classifier read_classifier_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return Classifier::from_json(j);
}

Evaluation evaluate_confusion(long tp, long fp, long fn, long tn) {
  if (tp < 0 || fp < 0 || fn < 0 || tn < 0) throw ArgumentError("negative confusion count");
  Evaluation e;
  e.tp = tp;
  e.fp = fp;
  e.fn = fn;
  e.tn = tn;
  const long total = tp + fp + fn + tn;
  e.accuracy = total ? static_cast<double>(tp + tn) / total : 0.0;
  auto fill = [](ClassMetrics& m, long hit, long false_pos, long miss) {
    m.precision = hit + false_pos ? static_cast<double>(hit) / (hit + false_pos) : 0.0;
    m.recall = hit + miss ? static_cast<double>(hit) / (hit + miss) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    m.support = hit + miss;
  };
  fill(e.error, tp, fp, fn);
  fill(e.correct, tn, fn, fp);
  return e;
}

Evaluation evaluate(const std::vector<bool>& predicted, const std::vector<bool>& gold) {
  if (predicted.size() != gold.size()) throw ArgumentError("evaluate: length mismatch");
  long tp = 0, fp = 0, fn = 0, tn = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i]) {
      (gold[i] ? tp : fp)++;
    } else {
      (gold[i] ? fn : tn)++;
    }
  }
  return evaluate_confusion(tp, fp, fn, tn);
}

std::string format_evaluation(const Evaluation& e, const std::string& system) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "\tOverall\tCorrect Verb Usage\t\t\tVerb Usage Errors\t\t\n";
  out << "\tAccuracy\tPrecision\tRecall\tF-score\tPrecision\tRecall\tF-score\n";
  out << system << '\t' << e.accuracy << '\t' << e.correct.precision << '\t' << e.correct.recall
      << '\t' << e.correct.f1 << '\t' << e.error.precision << '\t' << e.error.recall << '\t'
      << e.error.f1 << '\n';
  return out.str();
}

}  // namespace collo
