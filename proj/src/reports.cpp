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

#include "collo/reports.hpp"

#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "collo/error.hpp"

namespace collo {

std::string report_powerlaw(std::span<const double> samples, std::optional<double> x_min) {
  const PowerLawReport r = analyze_power_law(samples, x_min);
  std::ostringstream o;
  o << "n\tx_min\tn_tail\texponent\tks\tR\tp\n";
  o << samples.size() << '\t' << std::setprecision(6) << r.fit.x_min << '\t' << r.fit.n_tail << '\t'
    << r.fit.exponent << '\t' << r.fit.ks << '\t' << r.R << '\t' << std::scientific
    << std::setprecision(3) << r.p << '\n';
  return o.str();
}

std::vector<double> database_percentages(const Database& db, PercentLevel level) {
  std::vector<double> out;
  for (const auto& v : db.verbs) {
    if (v.total_instances <= 0) continue;
    const double total = static_cast<double>(v.total_instances);
    if (level == PercentLevel::kCollostruction) {
      for (const auto& c : v.collostructions) out.push_back(100.0 * c.p_col);
    } else {
      std::map<int, long> sense;
      for (const auto& c : v.collostructions) sense[c.sense_cluster_id] += c.support;
      for (const auto& [id, n] : sense) out.push_back(100.0 * static_cast<double>(n) / total);
    }
  }
  return out;
}

std::string report_slots(const Database& db) {
  std::ostringstream o;
  o << "deprel\toccurrence\tmean_p_slot\tcollostructions\n" << std::fixed << std::setprecision(4);
  for (const auto& s : slot_statistics(db))
    o << s.deprel << '\t' << s.occurrence_fraction << '\t' << s.mean_p_slot << '\t'
      << s.collostructions << '\n';
  return o.str();
}

std::string report_coherence(const Database& db, const EmbeddingStore* words, int fallback_dim,
                             bool literal_denominator) {
  std::optional<EmbeddingStore> fallback;
  if (!words) {
    fallback.emplace(fallback_dim);
    std::set<std::string> seen;
    for (const auto& v : db.verbs)
      for (const auto& c : v.collostructions)
        for (const auto& s : c.slots)
          for (const auto& x : s.collexemes)
            if (seen.insert(x.word).second) fallback->insert(x.word, fallback_embed(x.word, fallback_dim));
    words = &*fallback;
  }
  std::ostringstream o;
  o << "verb\tcollostruction\tslot\tcollexemes\tused\tsimilarity\n" << std::fixed << std::setprecision(4);
  for (const auto& ref : flatten(db)) {
    const Collostruction& c = *ref.col;
    for (const auto& s : c.slots) {
      if (s.key.is_focus() || s.collexemes.size() < 2) continue;
      size_t with_vec = 0;
      for (const auto& x : s.collexemes) with_vec += words->contains(x.word) ? 1 : 0;
      if (with_vec < 2) continue;
      const auto r = within_slot_similarity(s, *words, literal_denominator);
      o << c.verb << '\t' << ref.id << '\t' << to_string(s.key) << '\t' << s.collexemes.size() << '\t'
        << r.used << '\t' << r.similarity << '\n';
    }
  }
  return o.str();
}

std::string report_actions(const Database& db, const std::string& verb, const SememeLexicon& lexicon,
                           size_t top_k) {
  std::ostringstream o;
  o << "verb\trelation\trank\tsememe\tcount\n";
  std::vector<std::string> verbs;
  if (verb.empty()) {
    for (const auto& v : db.verbs) verbs.push_back(v.verb);
  } else {
    verbs.push_back(verb);
  }
  for (const auto& v : verbs)
    for (const auto& seq : action_sequences(db, v, lexicon, top_k))
      for (size_t i = 0; i < seq.sememes.size(); ++i)
        o << v << '\t' << seq.relation << '\t' << i + 1 << '\t' << seq.sememes[i].first << '\t'
          << seq.sememes[i].second << '\n';
  return o.str();
}

std::string report_index(const CollostructionIndex& index) {
  std::ostringstream o;
  o << "category\tunits\tpostings\n";
  for (size_t c = 0; c < kPatternCategories; ++c) {
    const auto cat = static_cast<PatternCategory>(c);
    size_t postings = 0;
    for (const auto& [u, ids] : index.table(cat)) postings += ids.size();
    o << to_string(cat) << '\t' << index.table(cat).size() << '\t' << postings << '\n';
  }
  o << "collostructions\t" << index.size() << '\n';
  return o.str();
}

GedResources::GedResources(const Database& db, const PipelineConfig& config) : index_(db) {
  config.similarity.validate();
  config.weights.validate();
  if (!config.word_embeddings.empty()) words_ = read_embeddings_file(config.word_embeddings);
  ctx_.index = &index_;
  ctx_.similarity = config.similarity;
  ctx_.weights = config.weights;
  ctx_.clause = clause_options(config);
  ctx_.word_sim = make_word_sim(words_ ? &*words_ : nullptr, config.fallback_dim);
}

std::string report_features(const Corpus& corpus, const std::vector<GedInstance>& instances,
                            const GedResources& res, int jobs) {
  std::vector<std::string> lines(instances.size());
  parallel_for(instances.size(), jobs, [&](size_t i) {
    const auto& inst = instances[i];
    const GedAnalysis a = analyze_instance(instance_tree(corpus, inst), inst, res.context());
    std::ostringstream o;
    o << i << '\t' << (inst.is_error ? "error" : "correct") << '\t' << inst.verb << '\t'
      << a.candidates.size() << '\t' << (a.top ? a.top->id : -1) << '\t';
    if (a.top) {
      o << std::setprecision(6) << a.top->score.combined << '\t' << format_features(*a.features);
    } else {
      o << "-\t-";
    }
    lines[i] = o.str();
  });
  std::string out = "index\tlabel\tverb\tcandidates\ttop\tcombined\tfeatures\n";
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string report_check(const DependencyTree& tree, const std::string& verb, const GedResources& res,
                         const Classifier& model) {
  const ClauseOptions& copts = res.context().clause;
  std::ostringstream o;
  o << "sent_id\ttoken\tverb\tverdict\tc_prob\te_prob\ttop\tmatch\n" << std::fixed << std::setprecision(4);
  bool any = false;
  for (const Token& t : tree.tokens()) {
    if (!is_verb(t, copts)) continue;
    if (!verb.empty() && tree.word(t.id, copts.word_identity) != verb) continue;
    any = true;
    const GedAnalysis a = analyze_target(tree, t.id, res.context());
    const Prediction p = model.predict(a.features ? &*a.features : nullptr);
    o << tree.sent_id() << '\t' << t.id << '\t' << tree.word(t.id, copts.word_identity) << '\t'
      << (p.is_error ? "error" : "correct") << (p.from_prior ? "(prior)" : "") << '\t' << p.c_prob
      << '\t' << p.e_prob << '\t' << (a.top ? a.top->id : -1) << '\t'
      << (a.top ? a.top->score.combined : 0.0) << '\n';
  }
  if (!any) throw InputError("sentence " + tree.sent_id() + " has no matching verb");
  return o.str();
}

EvalOutcome evaluate_dataset(const Corpus& corpus, const std::vector<GedInstance>& instances,
                             const GedResources& res, const Classifier& model, int jobs) {
  const auto examples = build_examples(corpus, instances, res.context(), jobs);
  EvalOutcome out;
  std::vector<bool> predicted, gold;
  for (const auto& ex : examples) {
    out.predictions.push_back(model.predict(ex.features ? &*ex.features : nullptr));
    predicted.push_back(out.predictions.back().is_error);
    gold.push_back(ex.is_error);
  }
  out.evaluation = evaluate(predicted, gold);
  return out;
}

}  // namespace collo
