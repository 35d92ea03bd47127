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

#ifndef PLMNEURON_SIMULATOR_H_
#define PLMNEURON_SIMULATOR_H_

#include <array>
#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plmneuron/completion.h"
#include "plmneuron/descriptors.h"
#include "plmneuron/explainer.h"
#include "plmneuron/miner.h"
#include "plmneuron/model.h"

namespace plmneuron {

// Sorted per-feature values of a reference dataset.
class QuantileTable {
 public:
  QuantileTable() = default;
  explicit QuantileTable(std::span<const FeatureVector> dataset);
  static QuantileTable FromDataset(const MinedDataset& dataset);

  // Mid-rank empirical quantile of `value` within the feature's column.
  double Quantile(Feature feature, double value) const;
  std::size_t size() const { return columns_[0].size(); }

 private:
  std::array<std::vector<double>, kNumFeatures> columns_;
};

// A simulator S(h, x, f) -> 0..10.
class PredictionBackend {
 public:
  virtual ~PredictionBackend() = default;
  virtual int Predict(const Hypothesis& hypothesis,
                      const ProteinSequence& sequence,
                      const FeatureVector& features) = 0;
  virtual std::string_view kind() const = 0;
};

// Offline simulator. Finds the first descriptor named in the hypothesis and
// its direction word, then predicts round(10 q) from the sequence's dataset
// quantile q (10 - round(10 q) for "low"). Hypotheses naming no descriptor
// predict 5.
class LexicalBaseline : public PredictionBackend {
 public:
  explicit LexicalBaseline(QuantileTable table) : table_(std::move(table)) {}

  int Predict(const Hypothesis& hypothesis, const ProteinSequence& sequence,
              const FeatureVector& features) override;
  std::string_view kind() const override { return "baseline"; }

  int PredictText(std::string_view hypothesis, const FeatureVector& features) const;

 private:
  QuantileTable table_;
};

struct RemoteSimulatorOptions {
  std::string model;
  double temperature = 0.9;
  int max_tokens = 8;
  int parse_retries = 2;
};

// Sends the simulator prompt and parses a bare integer. Values outside 0..10
// are clamped and counted.
class RemoteSimulator : public PredictionBackend {
 public:
  RemoteSimulator(CompletionClient& client, RemoteSimulatorOptions options = {})
      : client_(client), options_(std::move(options)) {}

  int Predict(const Hypothesis& hypothesis, const ProteinSequence& sequence,
              const FeatureVector& features) override;
  std::string_view kind() const override { return "remote"; }

  int out_of_range_count() const { return out_of_range_; }

 private:
  CompletionClient& client_;
  RemoteSimulatorOptions options_;
  std::atomic<int> out_of_range_{0};
};

std::string BuildSimulatorPrompt(std::string_view hypothesis,
                                 const ProteinSequence& sequence,
                                 const FeatureVector& features,
                                 const NeuronId& neuron);

// Python-dict-like feature map in fixed key order.
std::string RenderFeatureMap(const FeatureVector& fv);

// A bare (optionally signed) integer, allowing surrounding whitespace and a
// trailing period. nullopt otherwise.
std::optional<int> ParsePrediction(std::string_view response);

struct ValidationPoint {
  std::string id;
  ProteinSequence sequence;
  FeatureVector features;
  double phi = 0.0;
};

// Up to `n_val` validation-split records in corpus order, with normalized
// phi for `neuron`.
std::vector<ValidationPoint> ValidationSet(const MinedDataset& dataset,
                                           const NeuronId& neuron,
                                           std::size_t n_val = 50);

struct ScoredHypothesis {
  Hypothesis hypothesis;
  std::optional<double> r;  // nullopt: undefined (zero variance or n_eval < 3)
  int n_eval = 0;

  bool valid() const { return r.has_value(); }
};

inline constexpr int kMinEvalPoints = 3;

// Pearson r between predictions and observed phi. Prediction runs on
// `workers` threads. Throws Error for an empty validation set.
ScoredHypothesis ScoreHypothesis(PredictionBackend& backend,
                                 const Hypothesis& hypothesis,
                                 std::span<const ValidationPoint> validation,
                                 int workers = 1);

// Highest r; ties go to the lower candidate index; undefined scores rank
// last. nullopt when every score is undefined (no label).
std::optional<ScoredHypothesis> RankHypotheses(
    std::span<const ScoredHypothesis> scored);

}  // namespace plmneuron

#endif  // PLMNEURON_SIMULATOR_H_
