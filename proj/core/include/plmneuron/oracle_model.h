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

#ifndef PLMNEURON_ORACLE_MODEL_H_
#define PLMNEURON_ORACLE_MODEL_H_

#include <array>
#include <string>
#include <vector>

#include "plmneuron/descriptors.h"
#include "plmneuron/model.h"

namespace plmneuron {

// A neuron wired to track one descriptor. direction is +1 ("high") or -1.
struct PlantedNeuron {
  NeuronId neuron;
  Feature descriptor = Feature::kGravy;
  int direction = 1;
};

// Model with known ground truth, used to verify the labeling and steering
// pipeline end to end.
//
// Activations: at each residue position a planted neuron emits
// direction * c(residue), where c is the residue's additive contribution to
// its descriptor, so the mean over positions equals the descriptor (times
// direction). MASK and special tokens emit 0. Unplanted neurons emit a fixed
// pseudo-random value in [-1, 1] per (neuron, residue) and do not touch the
// logits.
//
// Logits: residue logits at position p are
//   sum over planted neurons of  v_p * direction * w(residue)
// where v_p is the neuron's value after intervention and w is the
// standardized contribution table. A masked position has z = 0, so its
// intervened value is b and steering shifts the sampled residues toward
// higher (b * direction > 0) or lower descriptor values.
class SyntheticOracleModel : public ProteinLanguageModel {
 public:
  // Throws DescriptorError for descriptors with no per-residue decomposition
  // (length, isoelectric_point, hydrophobic_moment) and ModelError for
  // planted neurons outside the config or duplicated.
  SyntheticOracleModel(int num_layers, int ffn_dim,
                       std::vector<PlantedNeuron> planted,
                       std::uint64_t seed = 0);

  const ModelConfig& config() const override { return config_; }
  std::string id() const override;
  ForwardResult Forward(std::span<const int> tokens,
                        const InterventionSpec& interventions = {}) const override;

  const std::vector<PlantedNeuron>& planted() const { return planted_; }

  // Additive per-residue contribution of `descriptor` (kAlphabet order). For
  // the instability index the contribution depends on the next residue and
  // this returns the row mean.
  static std::array<double, kNumResidues> Contribution(Feature descriptor);

 private:
  double Emit(std::size_t slot, std::span<const int> tokens, int position) const;
  double Background(const NeuronId& id, int token) const;

  ModelConfig config_;
  std::vector<PlantedNeuron> planted_;
  std::vector<std::array<double, kNumResidues>> contributions_;
  std::vector<std::array<double, kNumResidues>> logit_weights_;
};

// Parses "layer:index:descriptor:high|low", e.g. "0:3:gravy:high".
PlantedNeuron ParsePlantedNeuron(const std::string& text);

}  // namespace plmneuron

#endif  // PLMNEURON_ORACLE_MODEL_H_
