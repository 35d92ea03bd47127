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

#include "plmneuron/simulator.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "plmneuron/errors.h"
#include "plmneuron/parallel.h"
#include "plmneuron/stats.h"
#include "plmneuron/text.h"
#include "templates.h"

namespace plmneuron {

namespace {

std::string PythonRepr(std::string_view s) {
  const bool has_single = s.find('\'') != std::string_view::npos;
  const bool has_double = s.find('"') != std::string_view::npos;
  const char quote = has_single && !has_double ? '"' : '\'';
  std::string out(1, quote);
  for (char c : s) {
    if (c == '\\' || c == quote) out += '\\';
    out += c;
  }
  out += quote;
  return out;
}

}  // namespace

QuantileTable::QuantileTable(std::span<const FeatureVector> dataset) {
  for (const FeatureVector& fv : dataset) {
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      columns_[i].push_back(GetFeature(fv, AllFeatures()[i]));
    }
  }
  for (auto& c : columns_) std::sort(c.begin(), c.end());
}

QuantileTable QuantileTable::FromDataset(const MinedDataset& dataset) {
  std::vector<FeatureVector> fvs;
  fvs.reserve(dataset.records.size());
  for (const MinedRecord& r : dataset.records) fvs.push_back(r.features);
  return QuantileTable(fvs);
}

double QuantileTable::Quantile(Feature feature, double value) const {
  return EmpiricalQuantile(columns_[static_cast<std::size_t>(feature)], value);
}

int LexicalBaseline::PredictText(std::string_view hypothesis,
                                 const FeatureVector& features) const {
  const std::vector<std::string> tokens = WordTokens(hypothesis);
  const auto mention = FindFeatureMention(tokens);
  if (!mention) return 5;
  const double q = table_.Quantile(mention->feature, GetFeature(features, mention->feature));
  const int bucket = Bucketize(q);
  return MentionDirection(tokens, *mention) == Direction::kLow ? 10 - bucket : bucket;
}

int LexicalBaseline::Predict(const Hypothesis& hypothesis, const ProteinSequence&,
                             const FeatureVector& features) {
  return PredictText(hypothesis.text, features);
}

std::string RenderFeatureMap(const FeatureVector& fv) {
  std::string out = "{";
  for (Feature f : AllFeatures()) {
    out += "'" + std::string(FeatureName(f)) + "': ";
    if (f == Feature::kLength) {
      out += std::to_string(static_cast<long long>(std::llround(fv.length)));
    } else {
      out += FormatFixed4(GetFeature(fv, f));
    }
    out += ", ";
  }
  out += "'annotations': [";
  for (std::size_t i = 0; i < fv.annotations.size(); ++i) {
    if (i > 0) out += ", ";
    out += PythonRepr(fv.annotations[i]);
  }
  out += "]}";
  return out;
}

std::string BuildSimulatorPrompt(std::string_view hypothesis,
                                 const ProteinSequence& sequence,
                                 const FeatureVector& features,
                                 const NeuronId& neuron) {
  const std::pair<std::string_view, std::string> values[] = {
      {"{row[\"neuron_id\"]}", ToString(neuron)},
      {"{hypo}", std::string(hypothesis)},
      {"{seq}", sequence.str()},
      {"{comp}", RenderFeatureMap(features)}};
  return RenderTemplate(internal::kSimulatorTemplate, values);
}

std::optional<int> ParsePrediction(std::string_view response) {
  std::string text = Trim(response);
  if (!text.empty() && text.back() == '.') text.pop_back();
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i >= text.size() || text.size() - i > 9) return std::nullopt;
  int value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    value = value * 10 + (text[i] - '0');
  }
  return negative ? -value : value;
}

int RemoteSimulator::Predict(const Hypothesis& hypothesis,
                             const ProteinSequence& sequence,
                             const FeatureVector& features) {
  const CompletionRequest request{
      "", BuildSimulatorPrompt(hypothesis.text, sequence, features, hypothesis.neuron),
      options_.temperature, options_.max_tokens, options_.model};
  std::string last;
  for (int attempt = 0; attempt <= options_.parse_retries; ++attempt) {
    last = client_.Complete(request);
    if (const auto v = ParsePrediction(last)) {
      if (*v < 0 || *v > 10) ++out_of_range_;
      return std::clamp(*v, 0, 10);
    }
  }
  throw UnparseableResponseError("simulator reply is not an integer: " +
                                 last.substr(0, 100));
}

std::vector<ValidationPoint> ValidationSet(const MinedDataset& dataset,
                                           const NeuronId& neuron,
                                           std::size_t n_val) {
  dataset.CheckNeuron(neuron);
  std::vector<ValidationPoint> out;
  for (std::size_t i : ValidationIndices(dataset)) {
    if (out.size() >= n_val) break;
    const MinedRecord& r = dataset.records[i];
    out.push_back({r.id, r.sequence, r.features, dataset.Phi(neuron, i)});
  }
  return out;
}

ScoredHypothesis ScoreHypothesis(PredictionBackend& backend,
                                 const Hypothesis& hypothesis,
                                 std::span<const ValidationPoint> validation,
                                 int workers) {
  if (validation.empty()) throw Error("validation set is empty");
  std::vector<double> predicted(validation.size());
  ParallelFor(validation.size(), workers, [&](std::size_t i) {
    predicted[i] = backend.Predict(hypothesis, validation[i].sequence,
                                   validation[i].features);
  });
  std::vector<double> observed;
  for (const ValidationPoint& p : validation) observed.push_back(p.phi);
  ScoredHypothesis out{hypothesis, std::nullopt, static_cast<int>(validation.size())};
  if (out.n_eval < kMinEvalPoints) return out;
  try {
    out.r = Pearson(predicted, observed);
  } catch (const UndefinedCorrelationError&) {
    out.r = std::nullopt;
  }
  return out;
}

std::optional<ScoredHypothesis> RankHypotheses(
    std::span<const ScoredHypothesis> scored) {
  const ScoredHypothesis* best = nullptr;
  for (const ScoredHypothesis& s : scored) {
    if (!s.valid()) continue;
    if (best == nullptr || *s.r > *best->r ||
        (*s.r == *best->r &&
         s.hypothesis.candidate_index < best->hypothesis.candidate_index)) {
      best = &s;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

}  // namespace plmneuron
