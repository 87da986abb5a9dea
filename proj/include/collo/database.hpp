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

#ifndef COLLO_DATABASE_HPP_
#define COLLO_DATABASE_HPP_

#include <string>
#include <vector>

#include "collo/colgen.hpp"
#include "json.hpp"

namespace collo {

inline constexpr int kSchemaVersion = 1;

struct VerbEntry {
  std::string verb;
  long total_instances = 0;
  std::vector<Collostruction> collostructions;
};

struct Database {
  int schema_version = kSchemaVersion;
  nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
  std::vector<VerbEntry> verbs;

  const VerbEntry* find(const std::string& verb) const;
  size_t collostruction_count() const;
};

// A collostruction together with its database-wide id (position in the
// verb-major flattening).
struct CollostructionRef {
  int id = 0;
  const Collostruction* col = nullptr;
};
std::vector<CollostructionRef> flatten(const Database& db);

nlohmann::ordered_json to_json(const Collostruction& c);
Collostruction collostruction_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const Database& db);
Database database_from_json(const nlohmann::ordered_json& j);

std::string serialize_database(const Database& db);
void write_database_file(const std::string& path, const Database& db);
Database read_database_file(const std::string& path);
Database parse_database(const std::string& text);

// Every collostruction validator problem plus per-verb sum(p_col) <= 1.
std::vector<std::string> validate_database(const Database& db);

}  // namespace collo

#endif  // COLLO_DATABASE_HPP_
