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

#include "collo/database.hpp"

#include <fstream>
#include <sstream>

#include "collo/error.hpp"

namespace collo {

using nlohmann::ordered_json;

const VerbEntry* Database::find(const std::string& verb) const {
  for (const auto& v : verbs) {
    if (v.verb == verb) return &v;
  }
  return nullptr;
}

size_t Database::collostruction_count() const {
  size_t n = 0;
  for (const auto& v : verbs) n += v.collostructions.size();
  return n;
}

std::vector<CollostructionRef> flatten(const Database& db) {
  std::vector<CollostructionRef> out;
  int id = 0;
  for (const auto& v : db.verbs) {
    for (const auto& c : v.collostructions) out.push_back({id++, &c});
  }
  return out;
}

ordered_json to_json(const Collostruction& c) {
  ordered_json j;
  j["sense_cluster_id"] = c.sense_cluster_id;
  j["stage"] = c.stage;
  j["p_col"] = c.p_col;
  j["support"] = c.support;
  j["focus_deprel"] = c.focus_deprel;
  ordered_json slots = ordered_json::array();
  for (const Slot& s : c.slots) {
    ordered_json js;
    js["side"] = to_string(s.key.side);
    js["deprel"] = s.key.deprel;
    js["ordinal"] = s.key.ordinal;
    js["p_slot"] = s.p_slot;
    ordered_json cx = ordered_json::array();
    for (const Collexeme& x : s.collexemes) {
      cx.push_back({{"word", x.word}, {"count", x.count}, {"p_lex", x.p_lex}});
    }
    js["collexemes"] = std::move(cx);
    slots.push_back(std::move(js));
  }
  j["slots"] = std::move(slots);
  ordered_json edges = ordered_json::array();
  for (const auto& e : c.edges) {
    edges.push_back({{"dependent", e.dependent},
                     {"head", e.head},
                     {"deprel", e.deprel},
                     {"p_slot", e.p_slot}});
  }
  j["edges"] = std::move(edges);
  j["example_sent_ids"] = c.example_sent_ids;
  return j;
}

Collostruction collostruction_from_json(const ordered_json& j) {
  Collostruction c;
  c.sense_cluster_id = j.at("sense_cluster_id").get<int>();
  c.stage = j.value("stage", "");
  c.p_col = j.at("p_col").get<double>();
  c.support = j.at("support").get<long>();
  c.focus_deprel = j.at("focus_deprel").get<std::string>();
  for (const auto& js : j.at("slots")) {
    Slot s;
    s.key.side = slot_side_from_string(js.at("side").get<std::string>());
    s.key.deprel = js.at("deprel").get<std::string>();
    s.key.ordinal = js.at("ordinal").get<int>();
    s.p_slot = js.at("p_slot").get<double>();
    for (const auto& x : js.at("collexemes")) {
      s.collexemes.push_back({x.at("word").get<std::string>(), x.at("count").get<long>(),
                              x.at("p_lex").get<double>()});
    }
    c.slots.push_back(std::move(s));
  }
  for (const auto& e : j.at("edges")) {
    c.edges.push_back({e.at("dependent").get<int>(), e.at("head").get<int>(),
                       e.at("deprel").get<std::string>(), e.at("p_slot").get<double>()});
  }
  c.example_sent_ids = j.value("example_sent_ids", std::vector<std::string>{});
  return c;
}

ordered_json to_json(const Database& db) {
  ordered_json j;
  j["schema_version"] = db.schema_version;
  j["manifest"] = db.manifest;
  ordered_json verbs = ordered_json::array();
  for (const auto& v : db.verbs) {
    ordered_json jv;
    jv["schema_version"] = db.schema_version;
    jv["verb"] = v.verb;
    jv["total_instances"] = v.total_instances;
    ordered_json cols = ordered_json::array();
    for (const auto& c : v.collostructions) cols.push_back(to_json(c));
    jv["collostructions"] = std::move(cols);
    verbs.push_back(std::move(jv));
  }
  j["verbs"] = std::move(verbs);
  return j;
}

Database database_from_json(const ordered_json& j) {
  try {
    Database db;
    db.schema_version = j.at("schema_version").get<int>();
    if (db.schema_version != kSchemaVersion) {
      throw InputError("unsupported database schema_version " +
                       std::to_string(db.schema_version));
    }
    db.manifest = j.value("manifest", ordered_json::object());
    for (const auto& jv : j.at("verbs")) {
      VerbEntry v;
      v.verb = jv.at("verb").get<std::string>();
      v.total_instances = jv.at("total_instances").get<long>();
      for (const auto& jc : jv.at("collostructions")) {
        Collostruction c = collostruction_from_json(jc);
        c.verb = v.verb;
        v.collostructions.push_back(std::move(c));
      }
      db.verbs.push_back(std::move(v));
    }
    return db;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed database: ") + e.what());
  }
}

std::string serialize_database(const Database& db) { return to_json(db).dump(1) + "\n"; }

void write_database_file(const std::string& path, const Database& db) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::kIo, "cannot write '" + tmp + "'");
    out << serialize_database(db);
    if (!out) throw Error(ErrorKind::kIo, "write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorKind::kIo, "cannot rename '" + tmp + "' to '" + path + "'");
  }
}

Database parse_database(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("database is not valid JSON: ") + e.what());
  }
  return database_from_json(j);
}

Database read_database_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open database '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_database(buf.str());
}

std::vector<std::string> validate_database(const Database& db) {
  std::vector<std::string> problems;
  for (const auto& v : db.verbs) {
    double sum = 0.0;
    for (size_t i = 0; i < v.collostructions.size(); ++i) {
      const auto& c = v.collostructions[i];
      sum += c.p_col;
      for (const auto& p : validate_collostruction(c)) {
        problems.push_back(v.verb + "[" + std::to_string(i) + "]: " + p);
      }
    }
    if (sum > 1.0 + 1e-9) problems.push_back(v.verb + ": sum of p_col exceeds 1");
  }
  return problems;
}

}  // namespace collo
