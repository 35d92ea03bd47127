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

#include "plmneuron/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plmneuron/errors.h"

namespace plmneuron {

void ModelConfig::Validate() const {
  if (num_layers < 1) throw ModelError("num_layers must be >= 1");
  if (ffn_dim < 1) throw ModelError("ffn_dim must be >= 1");
  if (hidden_dim < 1) throw ModelError("hidden_dim must be >= 1");
  if (num_heads < 1 || hidden_dim % num_heads != 0) {
    throw ModelError("hidden_dim (" + std::to_string(hidden_dim) +
                     ") must be divisible by num_heads (" +
                     std::to_string(num_heads) + ")");
  }
  if (vocab_size != kVocabSize) {
    throw ModelError("vocab_size must be " + std::to_string(kVocabSize));
  }
  if (max_positions < 3) throw ModelError("max_positions must be >= 3");
}

std::string ToString(const NeuronId& id) {
  return "(" + std::to_string(id.layer) + ", " + std::to_string(id.index) + ")";
}

void InterventionSpec::Add(NeuronId neuron, double a, double b) {
  for (const Intervention& e : entries_) {
    if (e.neuron == neuron) {
      throw ModelError("duplicate intervention on neuron " + ToString(neuron));
    }
  }
  entries_.push_back({neuron, a, b});
}

ActivationMap::ActivationMap(int num_layers, int num_positions, int ffn_dim)
    : num_layers_(num_layers),
      num_positions_(num_positions),
      ffn_dim_(ffn_dim),
      values_(static_cast<std::size_t>(num_layers) * num_positions * ffn_dim,
              0.0) {}

bool IsValidNeuron(const ModelConfig& config, const NeuronId& id) {
  return id.layer >= 0 && id.layer < config.num_layers && id.index >= 0 &&
         id.index < config.ffn_dim;
}

void ValidateForwardInputs(const ModelConfig& config,
                           std::span<const int> tokens,
                           const InterventionSpec& interventions) {
  if (tokens.empty()) throw ModelError("empty token sequence");
  if (tokens.size() > static_cast<std::size_t>(config.max_positions)) {
    throw ModelError("token sequence of length " +
                     std::to_string(tokens.size()) + " exceeds max_positions " +
                     std::to_string(config.max_positions));
  }
  for (int t : tokens) {
    if (t < 0 || t >= config.vocab_size) {
      throw ModelError("token id " + std::to_string(t) + " outside vocabulary");
    }
  }
  for (const Intervention& e : interventions.entries()) {
    if (!IsValidNeuron(config, e.neuron)) {
      throw ModelError("unknown neuron " + ToString(e.neuron));
    }
  }
}

double SequenceActivation(const ActivationMap& activations,
                          const NeuronId& neuron, Aggregation aggregation) {
  if (neuron.layer < 0 || neuron.layer >= activations.num_layers() ||
      neuron.index < 0 || neuron.index >= activations.ffn_dim()) {
    throw ModelError("unknown neuron " + ToString(neuron));
  }
  const int first = 1;
  const int last = activations.num_positions() - 1;  // exclusive
  if (last <= first) throw ModelError("no residue positions in activation map");
  if (aggregation == Aggregation::kMax) {
    double best = -std::numeric_limits<double>::infinity();
    for (int p = first; p < last; ++p) {
      best = std::max(best, activations.at(neuron.layer, p, neuron.index));
    }
    return best;
  }
  double sum = 0.0;
  for (int p = first; p < last; ++p) {
    sum += activations.at(neuron.layer, p, neuron.index);
  }
  return sum / (last - first);
}

namespace {

void CheckPosition(const Matrix& logits, int position) {
  if (position < 0 || position >= logits.rows) {
    throw ModelError("masked position " + std::to_string(position) +
                     " outside logits");
  }
  if (logits.cols != kVocabSize) throw ModelError("logits must have 24 columns");
}

int GreedyResidue(const Matrix& logits, int position) {
  int best = kFirstResidueToken;
  for (int t = kFirstResidueToken + 1; t < kVocabSize; ++t) {
    if (logits(position, t) > logits(position, best)) best = t;
  }
  return best;
}

}  // namespace

std::vector<double> ResidueDistribution(const Matrix& logits, int position,
                                        double temperature) {
  if (!(temperature > 0.0)) throw ModelError("temperature must be > 0");
  CheckPosition(logits, position);
  std::vector<double> probs(kNumResidues);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < kNumResidues; ++r) {
    max_logit = std::max(max_logit, logits(position, ResidueToken(r)));
  }
  double total = 0.0;
  for (int r = 0; r < kNumResidues; ++r) {
    probs[r] = std::exp((logits(position, ResidueToken(r)) - max_logit) /
                        temperature);
    total += probs[r];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<int> SampleMasked(const Matrix& logits,
                              std::span<const int> masked_positions,
                              double temperature, Rng& rng, bool greedy) {
  if (!(temperature > 0.0)) throw ModelError("temperature must be > 0");
  std::vector<int> out;
  out.reserve(masked_positions.size());
  for (int pos : masked_positions) {
    CheckPosition(logits, pos);
    if (greedy) {
      out.push_back(GreedyResidue(logits, pos));
      continue;
    }
    const std::vector<double> probs =
        ResidueDistribution(logits, pos, temperature);
    const double u = rng.UniformDouble();
    double cumulative = 0.0;
    int chosen = kNumResidues - 1;
    for (int r = 0; r < kNumResidues; ++r) {
      cumulative += probs[r];
      if (u < cumulative) {
        chosen = r;
        break;
      }
    }
    // Guard against rounding leaving u above the final cumulative sum.
    while (probs[chosen] == 0.0 && chosen > 0) --chosen;
    out.push_back(ResidueToken(chosen));
  }
  return out;
}

std::vector<int> SampleMasked(const Matrix& logits,
                              std::span<const int> masked_positions,
                              double temperature, std::uint64_t seed,
                              bool greedy) {
  Rng rng(seed);
  return SampleMasked(logits, masked_positions, temperature, rng, greedy);
}

}  // namespace plmneuron
