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

#ifndef PLMNEURON_EXPLAINER_H_
#define PLMNEURON_EXPLAINER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plmneuron/completion.h"
#include "plmneuron/descriptors.h"
#include "plmneuron/miner.h"
#include "plmneuron/model.h"

namespace plmneuron {

enum class HypothesisSource { kRemote, kMock };
std::string_view SourceName(HypothesisSource s);

struct Hypothesis {
  NeuronId neuron;
  std::string text;
  int candidate_index = 0;
  HypothesisSource source = HypothesisSource::kMock;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

enum class PromptStyle {
  kStructured,  // system + structured user prompt
  kSummary,     // the short summary prompt alone
};

struct ExplainerPrompts {
  std::string system;  // empty for kSummary
  std::string user;
};

// Fills the explainer templates from `exemplars`, listed in descending phi
// (ties keep input order). Throws Error for an empty list.
ExplainerPrompts BuildExplainerPrompts(std::span<const Exemplar> exemplars,
                                       PromptStyle style = PromptStyle::kStructured);

// "length: 10; molecular_weight: 1195.4300; ...; annotations: a | b".
std::string RenderFeatureLine(const FeatureVector& fv);

// Interior of the first <neuron_description> or <summary> element, trimmed
// and with one pair of enclosing double quotes removed. nullopt if no
// element is present, it is empty, or it holds more than one sentence.
std::optional<std::string> ParseDescription(std::string_view response);

// True if `text` has a sentence terminator followed by further text.
bool HasMultipleSentences(std::string_view text);

struct ExplainerOptions {
  int m = 5;
  double temperature = 0.9;
  int max_tokens = 256;
  std::string model;
  // Extra attempts per candidate after an unparseable reply.
  int parse_retries = 2;
  PromptStyle style = PromptStyle::kStructured;
};

// Requests m independent completions. Throws UnparseableResponseError when a
// candidate stays malformed after retries; transport and auth errors
// propagate unchanged.
std::vector<Hypothesis> GenerateHypotheses(CompletionClient& client,
                                           const NeuronId& neuron,
                                           std::span<const Exemplar> exemplars,
                                           const ExplainerOptions& options);

// Offline explainer: correlates every quantitative feature with phi over the
// exemplars and describes the feature with the largest |r| as
// "Strongly activates for proteins with {high|low} {feature}." Ties go to the
// earlier feature in the fixed feature order; constant features count as
// r = 0. Throws Error for fewer than 3 exemplars.
Hypothesis MockExplainer(const NeuronId& neuron,
                         std::span<const Exemplar> exemplars);

// The m (at most 13) best features in that ranking, one hypothesis each.
std::vector<Hypothesis> MockExplainerCandidates(
    const NeuronId& neuron, std::span<const Exemplar> exemplars, int m = 5);

// Mock hypothesis text for a feature and direction.
std::string MockHypothesisText(Feature feature, bool high);

}  // namespace plmneuron

#endif  // PLMNEURON_EXPLAINER_H_
