// Copyright 2026 The plmneuron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal JSON helpers shared by the persistence code.

#ifndef PLMNEURON_SRC_JSON_IO_H_
#define PLMNEURON_SRC_JSON_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "plmneuron/descriptors.h"
#include "plmneuron/errors.h"
#include "plmneuron/model.h"

namespace plmneuron::internal {

using Json = nlohmann::ordered_json;

Json FeaturesToJson(const FeatureVector& fv);
FeatureVector FeaturesFromJson(const Json& j);

Json NeuronToJson(const NeuronId& n);

// Splits text into non-empty lines and parses each one. Throws SchemaError
// naming the 1-based line on a parse failure.
std::vector<Json> ParseJsonLines(std::string_view text);

// Checks {"schema": name, "version": version}.
void CheckHeader(const Json& header, std::string_view schema, int version);

std::string ReadFile(const std::filesystem::path& path);
// Writes via a temporary sibling then renames over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

// Typed field access that raises SchemaError instead of json exceptions.
template <typename T>
T Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace plmneuron::internal

#endif  // PLMNEURON_SRC_JSON_IO_H_
