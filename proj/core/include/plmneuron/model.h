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

#ifndef PLMNEURON_MODEL_H_
#define PLMNEURON_MODEL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plmneuron/random.h"
#include "plmneuron/sequence.h"

namespace plmneuron {

struct ModelConfig {
  int num_layers = 6;
  int hidden_dim = 64;
  int ffn_dim = 128;
  int num_heads = 4;
  int vocab_size = kVocabSize;
  int max_positions = static_cast<int>(kMaxSequenceLength) + 2;
  std::uint64_t seed = 0;

  // Throws ModelError describing the first violated constraint.
  void Validate() const;
  int total_neurons() const { return num_layers * ffn_dim; }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// An FFN hidden unit, addressed as (layer, index), both 0-based.
struct NeuronId {
  int layer = 0;
  int index = 0;

  friend auto operator<=>(const NeuronId&, const NeuronId&) = default;
};

std::string ToString(const NeuronId& id);  // "(layer, index)"

// Replaces a neuron's probed activation z with a * z + b at every position.
struct Intervention {
  NeuronId neuron;
  double a = 1.0;
  double b = 0.0;
};

class InterventionSpec {
 public:
  InterventionSpec() = default;

  // Throws ModelError if `neuron` already has an entry.
  void Add(NeuronId neuron, double a, double b);

  bool empty() const { return entries_.empty(); }
  const std::vector<Intervention>& entries() const { return entries_; }

 private:
  std::vector<Intervention> entries_;
};

// Post-nonlinearity FFN activations, indexed (layer, position, neuron).
class ActivationMap {
 public:
  ActivationMap() = default;
  ActivationMap(int num_layers, int num_positions, int ffn_dim);

  double& at(int layer, int position, int neuron) {
    return values_[Offset(layer, position, neuron)];
  }
  double at(int layer, int position, int neuron) const {
    return values_[Offset(layer, position, neuron)];
  }

  int num_layers() const { return num_layers_; }
  int num_positions() const { return num_positions_; }
  int ffn_dim() const { return ffn_dim_; }

 private:
  std::size_t Offset(int layer, int position, int neuron) const {
    return (static_cast<std::size_t>(layer) * num_positions_ + position) *
               ffn_dim_ +
           neuron;
  }

  int num_layers_ = 0;
  int num_positions_ = 0;
  int ffn_dim_ = 0;
  std::vector<double> values_;
};

// Row-major dense matrix; logits are (positions x vocab).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols,
            static_cast<std::size_t>(cols)};
  }
};

struct ForwardResult {
  Matrix logits;
  // Probe values recorded before any intervention is applied.
  ActivationMap activations;
};

// A masked protein language model with per-neuron probes and affine
// interventions. Implementations are immutable after construction and
// Forward is safe to call concurrently.
class ProteinLanguageModel {
 public:
  virtual ~ProteinLanguageModel() = default;

  virtual const ModelConfig& config() const = 0;
  virtual std::string id() const = 0;

  // Throws ModelError for sequences longer than max_positions, tokens outside
  // the vocabulary, or interventions on neurons the model does not have.
  virtual ForwardResult Forward(
      std::span<const int> tokens,
      const InterventionSpec& interventions = {}) const = 0;
};

// Shared argument checks for Forward implementations.
void ValidateForwardInputs(const ModelConfig& config,
                           std::span<const int> tokens,
                           const InterventionSpec& interventions);

bool IsValidNeuron(const ModelConfig& config, const NeuronId& id);

enum class Aggregation { kMean, kMax };

// Sequence-level activation of `neuron`: aggregate over residue positions,
// i.e. every position except the first (BOS) and last (EOS).
double SequenceActivation(const ActivationMap& activations,
                          const NeuronId& neuron,
                          Aggregation aggregation = Aggregation::kMean);

// Draws a residue token for each masked position from
// softmax(logits[pos] / temperature) restricted to residue tokens. With
// `greedy` set, picks the arg-max residue instead (the temperature -> 0
// limit). An empty position list is a no-op.
std::vector<int> SampleMasked(const Matrix& logits,
                              std::span<const int> masked_positions,
                              double temperature, Rng& rng,
                              bool greedy = false);
std::vector<int> SampleMasked(const Matrix& logits,
                              std::span<const int> masked_positions,
                              double temperature, std::uint64_t seed,
                              bool greedy = false);

// Residue probabilities (20 entries, kAlphabet order) at one position.
std::vector<double> ResidueDistribution(const Matrix& logits, int position,
                                        double temperature);

}  // namespace plmneuron

#endif  // PLMNEURON_MODEL_H_
