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

#include "plmneuron/oracle_model.h"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "plmneuron/errors.h"
#include "plmneuron/random.h"

namespace plmneuron {

namespace {

constexpr double kSpecialLogit = -30.0;
constexpr double kLogitScale = 1.0;

std::array<double, kNumResidues> Indicator(std::string_view letters) {
  std::array<double, kNumResidues> out{};
  for (int r = 0; r < kNumResidues; ++r) {
    out[r] = letters.find(kAlphabet[r]) != std::string_view::npos ? 1.0 : 0.0;
  }
  return out;
}

std::array<double, kNumResidues> Standardize(std::array<double, kNumResidues> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= kNumResidues;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / kNumResidues);
  for (double& x : v) x = sd > 0.0 ? (x - mean) / sd : 0.0;
  return v;
}

}  // namespace

std::array<double, kNumResidues> SyntheticOracleModel::Contribution(
    Feature descriptor) {
  std::array<double, kNumResidues> out{};
  switch (descriptor) {
    case Feature::kGravy:
      return scales::KyteDoolittle();
    case Feature::kMolecularWeight:
      for (int r = 0; r < kNumResidues; ++r) {
        out[r] = scales::FreeAminoAcidMass()[r] - scales::kWaterMass;
      }
      return out;
    case Feature::kAromaticity:
      return Indicator("FWY");
    case Feature::kInstabilityIndex:
      for (int r = 0; r < kNumResidues; ++r) {
        double sum = 0.0;
        for (int s = 0; s < kNumResidues; ++s) sum += scales::Diwv(r, s);
        out[r] = 10.0 * sum / kNumResidues;
      }
      return out;
    case Feature::kChargePh7:
      for (int r = 0; r < kNumResidues; ++r) {
        out[r] = scales::SideChainCharge(r, 7.0);
      }
      return out;
    case Feature::kBomanIndex:
      for (int r = 0; r < kNumResidues; ++r) out[r] = -scales::Boman()[r];
      return out;
    case Feature::kAliphaticIndex:
      for (int r = 0; r < kNumResidues; ++r) {
        switch (kAlphabet[r]) {
          case 'A': out[r] = 100.0; break;
          case 'V': out[r] = 290.0; break;
          case 'I':
          case 'L': out[r] = 390.0; break;
          default: break;
        }
      }
      return out;
    case Feature::kHelixFraction:
      return Indicator("VIYFWL");
    case Feature::kTurnFraction:
      return Indicator("NPGS");
    case Feature::kSheetFraction:
      return Indicator("EMAL");
    case Feature::kLength:
    case Feature::kIsoelectricPoint:
    case Feature::kHydrophobicMoment:
      break;
  }
  throw DescriptorError("descriptor '" + std::string(FeatureName(descriptor)) +
                        "' has no per-residue decomposition");
}

SyntheticOracleModel::SyntheticOracleModel(int num_layers, int ffn_dim,
                                           std::vector<PlantedNeuron> planted,
                                           std::uint64_t seed)
    : planted_(std::move(planted)) {
  config_.num_layers = num_layers;
  config_.ffn_dim = ffn_dim;
  config_.hidden_dim = 1;
  config_.num_heads = 1;
  config_.seed = seed;
  config_.Validate();
  for (std::size_t i = 0; i < planted_.size(); ++i) {
    const PlantedNeuron& p = planted_[i];
    if (!IsValidNeuron(config_, p.neuron)) {
      throw ModelError("planted neuron " + ToString(p.neuron) +
                       " outside the model");
    }
    if (p.direction != 1 && p.direction != -1) {
      throw ModelError("planted direction must be +1 or -1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (planted_[j].neuron == p.neuron) {
        throw ModelError("neuron " + ToString(p.neuron) + " planted twice");
      }
    }
    contributions_.push_back(Contribution(p.descriptor));
    logit_weights_.push_back(Standardize(contributions_.back()));
  }
}

std::string SyntheticOracleModel::id() const {
  std::string out = "oracle-L" + std::to_string(config_.num_layers) + "-f" +
                    std::to_string(config_.ffn_dim) + "-s" +
                    std::to_string(config_.seed);
  for (const PlantedNeuron& p : planted_) {
    out += "-" + std::to_string(p.neuron.layer) + "." +
           std::to_string(p.neuron.index) + std::string(FeatureName(p.descriptor)) +
           (p.direction > 0 ? "+" : "-");
  }
  return out;
}

double SyntheticOracleModel::Emit(std::size_t slot,
                                  std::span<const int> tokens,
                                  int position) const {
  const PlantedNeuron& p = planted_[slot];
  const int token = tokens[position];
  if (!IsResidueToken(token)) return 0.0;
  const int r = token - kFirstResidueToken;
  double c;
  if (p.descriptor == Feature::kInstabilityIndex) {
    const bool has_next = position + 1 < static_cast<int>(tokens.size()) &&
                          IsResidueToken(tokens[position + 1]);
    c = has_next ? 10.0 * scales::Diwv(r, tokens[position + 1] - kFirstResidueToken)
                 : 0.0;
  } else {
    c = contributions_[slot][r];
  }
  return p.direction * c;
}

double SyntheticOracleModel::Background(const NeuronId& id, int token) const {
  if (!IsResidueToken(token)) return 0.0;
  const std::uint64_t key =
      (static_cast<std::uint64_t>(id.layer) << 40) ^
      (static_cast<std::uint64_t>(id.index) << 8) ^ static_cast<std::uint64_t>(token);
  const std::uint64_t h = Mix64(Mix64(config_.seed) ^ key);
  return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

ForwardResult SyntheticOracleModel::Forward(
    std::span<const int> tokens, const InterventionSpec& interventions) const {
  ValidateForwardInputs(config_, tokens, interventions);
  const int n = static_cast<int>(tokens.size());
  ForwardResult result;
  result.activations = ActivationMap(config_.num_layers, n, config_.ffn_dim);
  for (int l = 0; l < config_.num_layers; ++l) {
    for (int j = 0; j < config_.ffn_dim; ++j) {
      const NeuronId id{l, j};
      for (int p = 0; p < n; ++p) {
        result.activations.at(l, p, j) = Background(id, tokens[p]);
      }
    }
  }
  for (std::size_t i = 0; i < planted_.size(); ++i) {
    const NeuronId& id = planted_[i].neuron;
    for (int p = 0; p < n; ++p) {
      result.activations.at(id.layer, p, id.index) = Emit(i, tokens, p);
    }
  }

  result.logits = Matrix(n, kVocabSize);
  for (int p = 0; p < n; ++p) {
    for (int t = 0; t < kFirstResidueToken; ++t) result.logits(p, t) = kSpecialLogit;
  }
  for (std::size_t i = 0; i < planted_.size(); ++i) {
    const PlantedNeuron& planted = planted_[i];
    double a = 1.0, b = 0.0;
    for (const Intervention& e : interventions.entries()) {
      if (e.neuron == planted.neuron) {
        a = e.a;
        b = e.b;
      }
    }
    for (int p = 0; p < n; ++p) {
      const double z = result.activations.at(planted.neuron.layer, p,
                                              planted.neuron.index);
      const double v = a * z + b;
      for (int r = 0; r < kNumResidues; ++r) {
        result.logits(p, ResidueToken(r)) +=
            kLogitScale * v * planted.direction * logit_weights_[i][r];
      }
    }
  }
  return result;
}

PlantedNeuron ParsePlantedNeuron(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 4) {
    throw ModelError("planted neuron must be layer:index:descriptor:high|low, got '" +
                     text + "'");
  }
  PlantedNeuron p;
  try {
    std::size_t used = 0;
    p.neuron.layer = std::stoi(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    p.neuron.index = std::stoi(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
  } catch (const std::logic_error&) {
    throw ModelError("bad neuron coordinates in '" + text + "'");
  }
  const auto feature = FeatureFromName(parts[2]);
  if (!feature) throw DescriptorError("unknown descriptor '" + parts[2] + "'");
  p.descriptor = *feature;
  if (parts[3] == "high") {
    p.direction = 1;
  } else if (parts[3] == "low") {
    p.direction = -1;
  } else {
    throw ModelError("direction must be 'high' or 'low', got '" + parts[3] + "'");
  }
  return p;
}

}  // namespace plmneuron
