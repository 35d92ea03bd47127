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

#include "plmneuron/catalog.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

#include "json_io.h"
#include "plmneuron/errors.h"
#include "plmneuron/random.h"
#include "plmneuron/text.h"
#include "templates.h"

namespace plmneuron {

using internal::Field;
using internal::Json;

namespace {

constexpr std::string_view kCatalogSchema = "plmneuron.labels";

Json HeaderJson() {
  return Json{{"schema", kCatalogSchema}, {"version", kCatalogSchemaVersion}};
}

Json ModelJson(const std::string& id, const ModelInfo& info) {
  return Json{{"type", "model"},
              {"model_id", id},
              {"num_layers", info.num_layers},
              {"ffn_dim", info.ffn_dim}};
}

Json LabelJson(const NeuronLabel& l) {
  Json j;
  j["type"] = "label";
  j["model_id"] = l.model_id;
  j["layer"] = l.neuron.layer;
  j["index"] = l.neuron.index;
  j["description"] = l.description;
  j["score"] = l.score ? Json(*l.score) : Json(nullptr);
  j["n_eval"] = l.n_eval;
  Json p;
  p["explainer"] = l.provenance.explainer;
  p["simulator"] = l.provenance.simulator;
  p["seed"] = l.provenance.seed;
  if (!l.provenance.created_at.empty()) p["created_at"] = l.provenance.created_at;
  j["provenance"] = std::move(p);
  return j;
}

NeuronLabel LabelFromJson(const Json& j) {
  NeuronLabel l;
  l.model_id = Field<std::string>(j, "model_id");
  l.neuron = {Field<int>(j, "layer"), Field<int>(j, "index")};
  l.description = Field<std::string>(j, "description");
  const Json score = Field<Json>(j, "score");
  if (!score.is_null()) {
    if (!score.is_number()) throw SchemaError("score must be a number or null");
    l.score = score.get<double>();
  }
  l.n_eval = Field<int>(j, "n_eval");
  const Json p = Field<Json>(j, "provenance");
  l.provenance.explainer = Field<std::string>(p, "explainer");
  l.provenance.simulator = Field<std::string>(p, "simulator");
  l.provenance.seed = Field<std::uint64_t>(p, "seed");
  if (p.contains("created_at")) {
    l.provenance.created_at = Field<std::string>(p, "created_at");
  }
  return l;
}

void ApplyLines(LabelCatalog& catalog, const std::vector<Json>& lines,
                std::size_t first) {
  for (std::size_t i = first; i < lines.size(); ++i) {
    const Json& j = lines[i];
    const auto type = Field<std::string>(j, "type");
    if (type == "model") {
      catalog.AddModel(Field<std::string>(j, "model_id"),
                       {Field<int>(j, "num_layers"), Field<int>(j, "ffn_dim")});
    } else if (type == "label") {
      catalog.Upsert(LabelFromJson(j));
    } else {
      throw SchemaError("unknown catalog line type '" + type + "'");
    }
  }
}

std::string LabelKey(const NeuronLabel& l) {
  return l.model_id + " " + ToString(l.neuron);
}

}  // namespace

void LabelCatalog::AddModel(const std::string& model_id, ModelInfo info) {
  if (model_id.empty()) throw SchemaError("empty model id");
  if (info.num_layers < 1 || info.ffn_dim < 1) {
    throw SchemaError("model '" + model_id + "' has invalid dimensions");
  }
  const auto [it, inserted] = models_.emplace(model_id, info);
  if (!inserted && !(it->second == info)) {
    throw SchemaError("model '" + model_id +
                      "' registered twice with different dimensions");
  }
}

void LabelCatalog::Upsert(NeuronLabel label) {
  const auto m = models_.find(label.model_id);
  if (m == models_.end()) {
    throw SchemaError("label for unregistered model '" + label.model_id + "'");
  }
  const NeuronId& n = label.neuron;
  if (n.layer < 0 || n.layer >= m->second.num_layers || n.index < 0 ||
      n.index >= m->second.ffn_dim) {
    throw SchemaError("label neuron " + ToString(n) + " outside model '" +
                      label.model_id + "'");
  }
  Key key{label.model_id, n.layer, n.index};
  auto it = labels_.find(key);
  if (it != labels_.end()) {
    conflicts_.push_back("duplicate label for " + LabelKey(label) + ": '" +
                         it->second.description + "' replaced by '" +
                         label.description + "'");
    it->second = std::move(label);
  } else {
    labels_.emplace(std::move(key), std::move(label));
  }
}

std::vector<NeuronLabel> LabelCatalog::labels() const {
  std::vector<NeuronLabel> out;
  out.reserve(labels_.size());
  for (const auto& [key, label] : labels_) out.push_back(label);
  return out;
}

const NeuronLabel* LabelCatalog::Find(const std::string& model_id,
                                      const NeuronId& n) const {
  const auto it = labels_.find(Key{model_id, n.layer, n.index});
  return it == labels_.end() ? nullptr : &it->second;
}

std::string SerializeCatalog(const LabelCatalog& catalog) {
  std::string out = HeaderJson().dump() + "\n";
  for (const auto& [id, info] : catalog.models()) {
    out += ModelJson(id, info).dump() + "\n";
  }
  for (const NeuronLabel& l : catalog.labels()) out += LabelJson(l).dump() + "\n";
  return out;
}

LabelCatalog ParseCatalog(std::string_view text) {
  const std::vector<Json> lines = internal::ParseJsonLines(text);
  if (lines.empty()) throw SchemaError("catalog file is empty");
  internal::CheckHeader(lines[0], kCatalogSchema, kCatalogSchemaVersion);
  LabelCatalog catalog;
  ApplyLines(catalog, lines, 1);
  return catalog;
}

void SaveCatalog(const LabelCatalog& catalog, const std::filesystem::path& path) {
  internal::WriteFileAtomic(path, SerializeCatalog(catalog));
}

LabelCatalog LoadCatalog(const std::filesystem::path& path) {
  return ParseCatalog(internal::ReadFile(path));
}

void AppendToCatalog(const std::filesystem::path& path, const std::string& model_id,
                     ModelInfo info, std::span<const NeuronLabel> labels) {
  const bool exists = std::filesystem::exists(path);
  std::string text;
  if (!exists) text += HeaderJson().dump() + "\n";
  text += ModelJson(model_id, info).dump() + "\n";
  for (const NeuronLabel& l : labels) text += LabelJson(l).dump() + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open " + path.string() + " for appending");
  out << text;
  if (!out) throw IoError("append failed for " + path.string());
}

std::vector<SearchHit> SearchLabels(const LabelCatalog& catalog,
                                    std::string_view query,
                                    std::string_view model_id) {
  const std::string q = ToLower(Trim(query));
  if (q.empty()) throw Error("search query is empty");
  const std::vector<std::string> q_tokens = WordTokens(q);
  const std::vector<Feature> q_features = AllFeatureMentions(q_tokens);
  std::vector<SearchHit> hits;
  for (const NeuronLabel& l : catalog.labels()) {
    if (!model_id.empty() && l.model_id != model_id) continue;
    if (l.description.empty()) continue;
    const std::string d = ToLower(l.description);
    const std::vector<std::string> d_tokens = WordTokens(d);
    std::optional<MatchQuality> quality;
    if (!q_tokens.empty() && !FindPhrase(d_tokens, q_tokens).empty()) {
      quality = MatchQuality::kToken;
    } else if (d.find(q) != std::string::npos) {
      quality = MatchQuality::kSubstring;
    } else if (!q_features.empty()) {
      const std::vector<Feature> d_features = AllFeatureMentions(d_tokens);
      for (Feature f : q_features) {
        if (std::find(d_features.begin(), d_features.end(), f) != d_features.end()) {
          quality = MatchQuality::kSynonym;
          break;
        }
      }
    }
    if (quality) hits.push_back({l.model_id, l.neuron, *quality});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    return std::tie(a.quality, a.neuron.layer, a.neuron.index, a.model_id) <
           std::tie(b.quality, b.neuron.layer, b.neuron.index, b.model_id);
  });
  return hits;
}

std::vector<NeuronId> Search(const LabelCatalog& catalog, std::string_view query,
                             std::string_view model_id) {
  std::vector<NeuronId> out;
  for (const SearchHit& h : SearchLabels(catalog, query, model_id)) {
    out.push_back(h.neuron);
  }
  return out;
}

std::string BuildSelectionPrompt(std::string_view description,
                                 std::string_view characteristic) {
  const std::pair<std::string_view, std::string> values[] = {
      {"{neuron}", "\"" + std::string(description) + "\""},
      {"{characteristic}", "\"" + std::string(characteristic) + "\""}};
  return RenderTemplate(internal::kSelectionTemplate, values);
}

std::optional<bool> ParseTrueFalse(std::string_view response) {
  std::string t = ToLower(Trim(response));
  if (t.rfind("answer:", 0) == 0) t = Trim(std::string_view(t).substr(7));
  while (!t.empty() && (t.back() == '.' || t.back() == '!')) t.pop_back();
  if (t == "true") return true;
  if (t == "false") return false;
  return std::nullopt;
}

SelectionResult SelectNeuronsLlm(CompletionClient& client,
                                 const LabelCatalog& catalog,
                                 std::string_view characteristic,
                                 std::string_view model_id,
                                 const SelectionOptions& options) {
  SelectionResult result;
  for (const NeuronLabel& l : catalog.labels()) {
    if (!model_id.empty() && l.model_id != model_id) continue;
    if (l.description.empty()) continue;
    const CompletionRequest request{"", BuildSelectionPrompt(l.description, characteristic),
                                    options.temperature, options.max_tokens,
                                    options.model};
    std::optional<bool> answer = ParseTrueFalse(client.Complete(request));
    if (!answer) answer = ParseTrueFalse(client.Complete(request));
    if (!answer) {
      result.warnings.push_back("non-conforming selection reply for " + LabelKey(l) +
                                "; treated as False");
      continue;
    }
    if (*answer) result.selected.push_back(l.neuron);
  }
  return result;
}

SelectionResult SelectNeuronsKeyword(const LabelCatalog& catalog,
                                     std::string_view characteristic,
                                     std::string_view model_id) {
  return {Search(catalog, characteristic, model_id), {}};
}

std::vector<NeuronId> RandomControlNeurons(const ModelInfo& model, std::size_t n,
                                           std::uint64_t seed,
                                           std::span<const NeuronId> exclude) {
  if (n < 1) throw Error("control neuron count must be >= 1");
  const std::set<NeuronId> excluded(exclude.begin(), exclude.end());
  std::vector<NeuronId> pool;
  for (int l = 0; l < model.num_layers; ++l) {
    for (int j = 0; j < model.ffn_dim; ++j) {
      if (!excluded.count({l, j})) pool.push_back({l, j});
    }
  }
  if (n > pool.size()) {
    throw Error("requested " + std::to_string(n) + " control neurons but only " +
                std::to_string(pool.size()) + " are available");
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.UniformIndex(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

}  // namespace plmneuron
