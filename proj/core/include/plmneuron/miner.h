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

#ifndef PLMNEURON_MINER_H_
#define PLMNEURON_MINER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plmneuron/descriptors.h"
#include "plmneuron/model.h"
#include "plmneuron/sequence.h"
#include "plmneuron/stats.h"

namespace plmneuron {

inline constexpr int kDatasetSchemaVersion = 1;
inline constexpr int kExemplarSchemaVersion = 1;

struct CorpusEntry {
  std::string id;
  ProteinSequence sequence;
  std::vector<std::string> annotations;
};

// Builds a corpus from FASTA text plus an optional annotation table
// ("id<TAB>annotation" lines, '#' comments). Annotation ids may be the full
// FASTA id or its accession ("sp|P1|X" matches "P1"). Throws FastaError on
// the first invalid record.
std::vector<CorpusEntry> LoadCorpus(std::string_view fasta,
                                    std::string_view annotations_tsv = {});
std::vector<CorpusEntry> LoadCorpusFiles(
    const std::filesystem::path& fasta,
    const std::filesystem::path& annotations = {});

enum class Split { kTrain, kValidation };
std::string_view SplitName(Split s);

// Seeded hash split on the sequence id, stable under corpus reordering.
Split AssignSplit(std::string_view id, double val_fraction, std::uint64_t seed);

struct MinedRecord {
  std::string id;
  ProteinSequence sequence;
  FeatureVector features;
  Split split = Split::kTrain;

  friend bool operator==(const MinedRecord&, const MinedRecord&) = default;
};

struct MinedDataset {
  std::string model_id;
  int num_layers = 0;
  int ffn_dim = 0;
  double val_fraction = 0.2;
  std::uint64_t seed = 0;
  Aggregation aggregation = Aggregation::kMean;
  std::vector<MinedRecord> records;
  // raw[neuron][record] with neuron = layer * ffn_dim + index.
  std::vector<std::vector<double>> raw;
  std::vector<NormalizationStats> stats;

  int num_neurons() const { return num_layers * ffn_dim; }
  std::size_t Slot(const NeuronId& n) const {
    return static_cast<std::size_t>(n.layer) * ffn_dim + n.index;
  }
  // Normalized activation of record `r` for `neuron`.
  double Phi(const NeuronId& neuron, std::size_t r) const {
    return stats[Slot(neuron)].Apply(raw[Slot(neuron)][r]);
  }
  // Throws ModelError if the neuron is outside the dataset.
  void CheckNeuron(const NeuronId& neuron) const;

  friend bool operator==(const MinedDataset&, const MinedDataset&) = default;
};

struct Exemplar {
  std::string id;
  ProteinSequence sequence;
  double phi = 0.0;
  FeatureVector features;

  friend bool operator==(const Exemplar&, const Exemplar&) = default;
};

struct NeuronExemplars {
  NeuronId neuron;
  bool dead = false;
  std::vector<Exemplar> top;     // descending phi
  std::vector<Exemplar> bottom;  // ascending phi

  // Top then bottom, without repeating a sequence present in both.
  std::vector<Exemplar> Combined() const;

  friend bool operator==(const NeuronExemplars&, const NeuronExemplars&) = default;
};

struct ExemplarStore {
  std::string model_id;
  int k = 20;
  // Set when the train split holds fewer than 2k sequences.
  bool degraded = false;
  int num_layers = 0;
  int ffn_dim = 0;
  std::vector<NeuronExemplars> neurons;  // (layer, index) order

  const NeuronExemplars& Get(const NeuronId& n) const;

  friend bool operator==(const ExemplarStore&, const ExemplarStore&) = default;
};

struct MineOptions {
  int k = 20;
  double val_fraction = 0.2;
  std::uint64_t seed = 0;
  int workers = 1;
  Aggregation aggregation = Aggregation::kMean;
};

struct MineResult {
  MinedDataset dataset;
  ExemplarStore store;
};

// Runs every corpus sequence through `model` once, min-max normalizes each
// neuron over the whole corpus and keeps top/bottom-k exemplars drawn from
// the train split (ties broken by corpus order). Results do not depend on
// `workers`. Throws Error on an empty corpus or invalid options.
MineResult Mine(const ProteinLanguageModel& model,
                std::span<const CorpusEntry> corpus, const MineOptions& options);

// Validation-split record indices.
std::vector<std::size_t> ValidationIndices(const MinedDataset& dataset);

// Line-delimited JSON with a schema header line. Readers throw SchemaError on
// a wrong schema name or version and on malformed lines.
void WriteDataset(const MinedDataset& dataset, const std::filesystem::path& path);
MinedDataset ReadDataset(const std::filesystem::path& path);
void WriteExemplars(const ExemplarStore& store, const std::filesystem::path& path);
ExemplarStore ReadExemplars(const std::filesystem::path& path);

std::string SerializeDataset(const MinedDataset& dataset);
MinedDataset ParseDataset(std::string_view text);
std::string SerializeExemplars(const ExemplarStore& store);
ExemplarStore ParseExemplars(std::string_view text);

}  // namespace plmneuron

#endif  // PLMNEURON_MINER_H_
