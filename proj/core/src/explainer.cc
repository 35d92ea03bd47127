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

#include "plmneuron/explainer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <utility>

#include "plmneuron/errors.h"
#include "plmneuron/stats.h"
#include "plmneuron/text.h"
#include "templates.h"

namespace plmneuron {

namespace {

std::vector<const Exemplar*> DescendingPhi(std::span<const Exemplar> exemplars) {
  std::vector<const Exemplar*> order;
  for (const Exemplar& e : exemplars) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](const Exemplar* a, const Exemplar* b) { return a->phi > b->phi; });
  return order;
}

// Canonical order independent of input order: phi desc, then id, sequence.
std::vector<const Exemplar*> CanonicalOrder(std::span<const Exemplar> exemplars) {
  std::vector<const Exemplar*> order;
  for (const Exemplar& e : exemplars) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const Exemplar* a, const Exemplar* b) {
    if (a->phi != b->phi) return a->phi > b->phi;
    if (a->id != b->id) return a->id < b->id;
    return a->sequence.str() < b->sequence.str();
  });
  return order;
}

struct FeatureScore {
  Feature feature;
  double r;
};

std::vector<FeatureScore> RankFeatures(std::span<const Exemplar> exemplars) {
  if (exemplars.size() < 3) {
    throw Error("mock explainer needs at least 3 exemplars, got " +
                std::to_string(exemplars.size()));
  }
  const auto order = CanonicalOrder(exemplars);
  std::vector<double> phi;
  for (const Exemplar* e : order) phi.push_back(e->phi);
  std::vector<FeatureScore> scores;
  for (Feature f : AllFeatures()) {
    std::vector<double> values;
    for (const Exemplar* e : order) values.push_back(GetFeature(e->features, f));
    double r = 0.0;
    try {
      r = Pearson(values, phi);
    } catch (const UndefinedCorrelationError&) {
      r = 0.0;
    }
    scores.push_back({f, r});
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const FeatureScore& a, const FeatureScore& b) {
                     return std::fabs(a.r) > std::fabs(b.r);
                   });
  return scores;
}

}  // namespace

std::string_view SourceName(HypothesisSource s) {
  return s == HypothesisSource::kRemote ? "remote" : "mock";
}

std::string RenderFeatureLine(const FeatureVector& fv) {
  std::string out;
  for (Feature f : AllFeatures()) {
    if (!out.empty()) out += "; ";
    out += FeatureName(f);
    out += ": ";
    if (f == Feature::kLength) {
      out += std::to_string(static_cast<long long>(std::llround(fv.length)));
    } else {
      out += FormatFixed4(GetFeature(fv, f));
    }
  }
  out += "; annotations: ";
  if (fv.annotations.empty()) {
    out += "none";
  } else {
    for (std::size_t i = 0; i < fv.annotations.size(); ++i) {
      if (i > 0) out += " | ";
      out += fv.annotations[i];
    }
  }
  return out;
}

ExplainerPrompts BuildExplainerPrompts(std::span<const Exemplar> exemplars,
                                       PromptStyle style) {
  if (exemplars.empty()) throw Error("explainer prompt needs exemplars");
  const auto order = DescendingPhi(exemplars);
  std::string seqs, feats, acts, combined;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Exemplar& e = *order[i];
    const std::string n = std::to_string(i + 1);
    const std::string line = RenderFeatureLine(e.features);
    const std::string sep = i + 1 < order.size() ? "\n" : "";
    seqs += n + ". " + e.sequence.str() + sep;
    feats += n + ". " + line + sep;
    acts += n + ". " + FormatFixed4(e.phi) + sep;
    if (i > 0) combined += "\n\n";
    combined += "Sequence " + n + ": " + e.sequence.str() + "\nActivation: " +
                FormatFixed4(e.phi) + "\nFeatures: " + line;
  }
  ExplainerPrompts prompts;
  const std::pair<std::string_view, std::string> user_values[] = {
      {"{{SEQUENCES_AND_FEATURES}}", combined}};
  prompts.user = RenderTemplate(internal::kExplainerSummaryTemplate, user_values);
  if (style == PromptStyle::kStructured) {
    const std::pair<std::string_view, std::string> values[] = {
        {"{{PROTEIN_SEQUENCES}}", seqs},
        {"{{BIOLOGICAL_FEATURES}}", feats},
        {"{{ACTIVATION_VALUES}}", acts}};
    prompts.system = RenderTemplate(internal::kExplainerSystemTemplate, values);
  }
  return prompts;
}

bool HasMultipleSentences(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    if (j >= text.size() || !std::isspace(static_cast<unsigned char>(text[j]))) {
      continue;
    }
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j < text.size()) return true;
  }
  return false;
}

std::optional<std::string> ParseDescription(std::string_view response) {
  for (std::string_view tag : {"neuron_description", "summary"}) {
    const std::string open = "<" + std::string(tag) + ">";
    const std::string close = "</" + std::string(tag) + ">";
    const auto b = response.find(open);
    if (b == std::string_view::npos) continue;
    const auto e = response.find(close, b + open.size());
    if (e == std::string_view::npos) continue;
    std::string text = Trim(response.substr(b + open.size(), e - b - open.size()));
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
      text = Trim(std::string_view(text).substr(1, text.size() - 2));
    }
    if (text.empty() || HasMultipleSentences(text)) return std::nullopt;
    return text;
  }
  return std::nullopt;
}

std::vector<Hypothesis> GenerateHypotheses(CompletionClient& client,
                                           const NeuronId& neuron,
                                           std::span<const Exemplar> exemplars,
                                           const ExplainerOptions& options) {
  if (options.m < 1) throw Error("m must be >= 1");
  const ExplainerPrompts prompts = BuildExplainerPrompts(exemplars, options.style);
  CompletionRequest request{prompts.system, prompts.user, options.temperature,
                            options.max_tokens, options.model};
  request.Validate();
  std::vector<Hypothesis> out;
  for (int i = 0; i < options.m; ++i) {
    std::optional<std::string> text;
    std::string last;
    for (int attempt = 0; attempt <= options.parse_retries && !text; ++attempt) {
      last = client.Complete(request);
      text = ParseDescription(last);
    }
    if (!text) {
      throw UnparseableResponseError(
          "no single-sentence description for neuron " + ToString(neuron) +
          " after " + std::to_string(options.parse_retries + 1) +
          " attempts; last reply: " + last.substr(0, 200));
    }
    out.push_back({neuron, *text, i, HypothesisSource::kRemote});
  }
  return out;
}

std::string MockHypothesisText(Feature feature, bool high) {
  return std::string("Strongly activates for proteins with ") +
         (high ? "high " : "low ") + std::string(FeatureDisplayName(feature)) + ".";
}

Hypothesis MockExplainer(const NeuronId& neuron,
                         std::span<const Exemplar> exemplars) {
  return MockExplainerCandidates(neuron, exemplars, 1).front();
}

std::vector<Hypothesis> MockExplainerCandidates(
    const NeuronId& neuron, std::span<const Exemplar> exemplars, int m) {
  if (m < 1) throw Error("m must be >= 1");
  const std::vector<FeatureScore> ranked = RankFeatures(exemplars);
  std::vector<Hypothesis> out;
  for (int i = 0; i < m && i < static_cast<int>(ranked.size()); ++i) {
    out.push_back({neuron, MockHypothesisText(ranked[i].feature, ranked[i].r >= 0.0),
                   i, HypothesisSource::kMock});
  }
  return out;
}

}  // namespace plmneuron
