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

#include "json_io.h"

#include <fstream>
#include <iterator>
#include <system_error>

#include "plmneuron/errors.h"

namespace plmneuron::internal {

Json FeaturesToJson(const FeatureVector& fv) {
  Json j = Json::object();
  for (Feature f : AllFeatures()) {
    j[std::string(FeatureName(f))] = GetFeature(fv, f);
  }
  j["annotations"] = fv.annotations;
  return j;
}

FeatureVector FeaturesFromJson(const Json& j) {
  FeatureVector fv;
  for (Feature f : AllFeatures()) {
    SetFeature(fv, f, Field<double>(j, std::string(FeatureName(f)).c_str()));
  }
  fv.annotations = Field<std::vector<std::string>>(j, "annotations");
  return fv;
}

Json NeuronToJson(const NeuronId& n) {
  return Json{{"layer", n.layer}, {"index", n.index}};
}

std::vector<Json> ParseJsonLines(std::string_view text) {
  std::vector<Json> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("line " + std::to_string(line_no) +
                        ": invalid JSON: " + e.what());
    }
  }
  return out;
}

void CheckHeader(const Json& header, std::string_view schema, int version) {
  const auto name = Field<std::string>(header, "schema");
  if (name != schema) {
    throw SchemaError("expected schema '" + std::string(schema) + "', found '" +
                      name + "'");
  }
  const int v = Field<int>(header, "version");
  if (v != version) {
    throw SchemaError("schema '" + name + "' version " + std::to_string(v) +
                      " is not supported (expected " + std::to_string(version) +
                      ")");
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace plmneuron::internal
