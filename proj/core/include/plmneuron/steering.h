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

#ifndef PLMNEURON_STEERING_H_
#define PLMNEURON_STEERING_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plmneuron/catalog.h"
#include "plmneuron/descriptors.h"
#include "plmneuron/miner.h"
#include "plmneuron/model.h"
#include "plmneuron/sequence.h"
#include "plmneuron/stats.h"
#include "plmneuron/text.h"

namespace plmneuron {

struct SteeringPreset {
  std::string_view name;
  double a;
  double b;
};

// mid-model: a=10, b=3. small-model: a=200, b=10. negative: a=-10, b=-5.
std::span<const SteeringPreset> SteeringPresets();
std::optional<SteeringPreset> FindPreset(std::string_view name);

enum class InitKind { kRandom, kNeutral, kExplicit };

struct SteeringConfig {
  std::vector<NeuronId> neurons;
  double a = 10.0;
  double b = 3.0;
  double mask_fraction = 0.15;
  int steps = 200;
  double temperature = 1.0;
  bool greedy_sampling = false;
  // Accept a candidate only if its objective is not lower than the current
  // sequence's. Off by default (every candidate is accepted).
  bool greedy_accept = false;
  InitKind init = InitKind::kRandom;
  std::size_t init_length = 100;
  std::string init_sequence;  // for kExplicit
  std::uint64_t seed = 0;
  // Per-neuron min-max stats parallel to `neurons`; empty means the
  // objective uses raw activations.
  std::vector<NormalizationStats> stats;

  // Throws Error (or ModelError for neurons outside `model`).
  void Validate(const ModelConfig& model) const;
};

struct SteeringStep {
  int step = 0;  // 1-based
  ProteinSequence candidate{"A"};
  double objective = 0.0;
  double best_objective = 0.0;
  std::vector<double> phi_raw;  // per target neuron
  FeatureVector features;
  bool accepted = true;

  friend bool operator==(const SteeringStep&, const SteeringStep&) = default;
};

struct SteeringTrace {
  ProteinSequence initial{"A"};
  double initial_objective = 0.0;
  std::vector<double> initial_phi_raw;
  FeatureVector initial_features;
  std::vector<SteeringStep> steps;

  friend bool operator==(const SteeringTrace&, const SteeringTrace&) = default;
};

struct SteeringResult {
  // Best candidate over all steps (the initial sequence is not a candidate).
  ProteinSequence best{"A"};
  int best_step = 0;
  double best_objective = 0.0;
  FeatureVector best_features;
  SteeringTrace trace;
};

ProteinSequence InitialSequence(const SteeringConfig& config);

// Number of residues masked per step: ceil(mask_fraction * length), at least
// 1 and at most length.
std::size_t MaskCount(double mask_fraction, std::size_t length);

// Iterative masked inpainting. Each step masks MaskCount residue positions
// of the current sequence, runs the model with a * z + b on every target
// neuron, resamples the masked positions, and scores the candidate on a
// clean pass as the mean (normalized) activation of the targets.
// Deterministic given config.seed.
SteeringResult Steer(const ProteinLanguageModel& model, const SteeringConfig& config);

// Same contract as Steer; intended for a < 0, b < 0.
SteeringResult NegativeSteer(const ProteinLanguageModel& model,
                             const SteeringConfig& config);

// Columns: step, sequence, objective, best_objective, one phi_raw column per
// target neuron ("phi_L_I"), then every descriptor.
std::string TraceCsv(const SteeringResult& result,
                     std::span<const NeuronId> neurons);
// Seed, parameters, initial sequence and best result as JSON.
std::string TraceMetaJson(const SteeringConfig& config, const SteeringResult& result,
                          std::string_view model_id);

enum class Variant { kHigh, kLow, kControl };
std::string_view VariantName(Variant v);
std::optional<Variant> VariantFromName(std::string_view name);

struct ExperimentOptions {
  SteeringConfig steering;  // `neurons` and `stats` are filled in
  std::string model_id;     // empty: model.id()
  std::size_t max_neurons = 0;  // 0: all matches
  double min_score = -1.0;      // labels scoring below this are skipped
  std::uint64_t control_seed = 0;
  const MinedDataset* dataset = nullptr;  // normalization source, optional
};

struct ExperimentResult {
  Variant variant = Variant::kHigh;
  std::vector<NeuronId> neurons;
  SteeringConfig config;
  SteeringResult run;
};

// Chooses neurons for `characteristic` and steers them. kHigh and kLow take
// search hits whose label direction is high or low; kControl draws as many
// random neurons as kHigh would use (at least 1), excluding every hit.
// Throws NoMatchingNeuronsError when the search or direction filter is
// empty.
ExperimentResult RunExperiment(const ProteinLanguageModel& model,
                               const LabelCatalog& catalog,
                               std::string_view characteristic, Variant variant,
                               const ExperimentOptions& options);

// Direction a label expresses for `characteristic` (high when unstated).
Direction LabelDirection(std::string_view description,
                         std::string_view characteristic);

}  // namespace plmneuron

#endif  // PLMNEURON_STEERING_H_
