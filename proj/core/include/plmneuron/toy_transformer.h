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

#ifndef PLMNEURON_TOY_TRANSFORMER_H_
#define PLMNEURON_TOY_TRANSFORMER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "plmneuron/model.h"

namespace plmneuron {

// Small bidirectional pre-LayerNorm transformer encoder with a masked-LM
// head. Each block's FFN is W2 * GELU(W1 * x + b1) + b2; the GELU outputs are
// the probed "neurons". Weights are drawn from a seeded normal initializer.
// Nothing is trained.
class ToyTransformer : public ProteinLanguageModel {
 public:
  // Throws ModelError if the config is invalid.
  explicit ToyTransformer(const ModelConfig& config);

  const ModelConfig& config() const override { return config_; }
  std::string id() const override;
  ForwardResult Forward(std::span<const int> tokens,
                        const InterventionSpec& interventions = {}) const override;

  // Little-endian binary weight file; layout in docs/weight_format.md.
  void Save(const std::filesystem::path& path) const;
  // Throws WeightFileError (kIo, kVersionMismatch or kCorrupt).
  static ToyTransformer Load(const std::filesystem::path& path);

  struct Weights;

 private:
  ToyTransformer(const ModelConfig& config, std::shared_ptr<const Weights> w);

  ModelConfig config_;
  std::shared_ptr<const Weights> weights_;
};

inline constexpr char kWeightMagic[4] = {'P', 'L', 'M', 'W'};
inline constexpr std::uint32_t kWeightFormatVersion = 1;

}  // namespace plmneuron

#endif  // PLMNEURON_TOY_TRANSFORMER_H_
