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

#ifndef PLMNEURON_CATALOG_H_
#define PLMNEURON_CATALOG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "plmneuron/completion.h"
#include "plmneuron/model.h"

namespace plmneuron {

inline constexpr int kCatalogSchemaVersion = 1;

struct ModelInfo {
  int num_layers = 0;
  int ffn_dim = 0;

  friend bool operator==(const ModelInfo&, const ModelInfo&) = default;
};

struct Provenance {
  std::string explainer;  // "mock" or "remote"
  std::string simulator;  // "baseline" or "remote"
  std::uint64_t seed = 0;
  std::string created_at;  // empty unless requested

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct NeuronLabel {
  std::string model_id;
  NeuronId neuron;
  std::string description;  // winning hypothesis; empty for no-label
  std::optional<double> score;  // nullopt for no-label
  int n_eval = 0;
  Provenance provenance;

  bool has_label() const { return score.has_value(); }

  friend bool operator==(const NeuronLabel&, const NeuronLabel&) = default;
};

// Labels keyed by (model id, neuron). Iteration order is (model id, layer,
// index).
class LabelCatalog {
 public:
  // Throws SchemaError if `model_id` is already registered with different
  // dimensions.
  void AddModel(const std::string& model_id, ModelInfo info);

  // Inserts, or replaces an existing entry and records a conflict line.
  // Throws SchemaError for an unregistered model or out-of-range neuron.
  void Upsert(NeuronLabel label);

  const std::map<std::string, ModelInfo>& models() const { return models_; }
  std::vector<NeuronLabel> labels() const;
  const NeuronLabel* Find(const std::string& model_id, const NeuronId& n) const;
  const std::vector<std::string>& conflicts() const { return conflicts_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  // Compares models and labels; the conflict log is not part of the value.
  friend bool operator==(const LabelCatalog& a, const LabelCatalog& b) {
    return a.models_ == b.models_ && a.labels_ == b.labels_;
  }

 private:
  using Key = std::tuple<std::string, int, int>;
  std::map<std::string, ModelInfo> models_;
  std::map<Key, NeuronLabel> labels_;
  std::vector<std::string> conflicts_;
};

// Line-delimited JSON: a schema header, then "model" and "label" lines.
// Later label lines for the same neuron win, so appending is safe.
std::string SerializeCatalog(const LabelCatalog& catalog);
LabelCatalog ParseCatalog(std::string_view text);
void SaveCatalog(const LabelCatalog& catalog, const std::filesystem::path& path);
LabelCatalog LoadCatalog(const std::filesystem::path& path);
// Appends model and label lines to `path`, writing a header first if the
// file does not exist.
void AppendToCatalog(const std::filesystem::path& path, const std::string& model_id,
                     ModelInfo info, std::span<const NeuronLabel> labels);

enum class MatchQuality { kToken = 0, kSubstring = 1, kSynonym = 2 };

struct SearchHit {
  std::string model_id;
  NeuronId neuron;
  MatchQuality quality;
};

// Case-insensitive match of `query` against label descriptions: the query's
// words as a consecutive whole-word run (kToken), a raw substring
// (kSubstring), or a shared descriptor synonym such as "hydrophobicity" for
// "gravy" (kSynonym). Sorted by (quality, layer, index, model id). Empty
// `model_id` searches every model. Throws Error for a blank query.
std::vector<SearchHit> SearchLabels(const LabelCatalog& catalog,
                                    std::string_view query,
                                    std::string_view model_id = {});
std::vector<NeuronId> Search(const LabelCatalog& catalog, std::string_view query,
                             std::string_view model_id = {});

std::string BuildSelectionPrompt(std::string_view description,
                                 std::string_view characteristic);

// "True"/"False" in any case, optionally prefixed by "Answer:" and followed
// by a period.
std::optional<bool> ParseTrueFalse(std::string_view response);

struct SelectionOptions {
  std::string model;
  double temperature = 0.9;
  int max_tokens = 4;
};

struct SelectionResult {
  std::vector<NeuronId> selected;
  std::vector<std::string> warnings;
};

// One True/False query per labeled neuron. A non-conforming reply is re-asked
// once, then counted as False with a warning.
SelectionResult SelectNeuronsLlm(CompletionClient& client,
                                 const LabelCatalog& catalog,
                                 std::string_view characteristic,
                                 std::string_view model_id = {},
                                 const SelectionOptions& options = {});

// Keyword fallback: exactly the Search result.
SelectionResult SelectNeuronsKeyword(const LabelCatalog& catalog,
                                     std::string_view characteristic,
                                     std::string_view model_id = {});

// n distinct neurons drawn uniformly without replacement (seeded partial
// Fisher-Yates over the non-excluded neurons in (layer, index) order).
// Throws Error if n < 1 or n exceeds the available neurons.
std::vector<NeuronId> RandomControlNeurons(const ModelInfo& model, std::size_t n,
                                           std::uint64_t seed,
                                           std::span<const NeuronId> exclude = {});

}  // namespace plmneuron

#endif  // PLMNEURON_CATALOG_H_
