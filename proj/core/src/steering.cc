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

#include "plmneuron/steering.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json_io.h"
#include "plmneuron/errors.h"
#include "plmneuron/random.h"
#include "plmneuron/text.h"

namespace plmneuron {

namespace {

constexpr SteeringPreset kPresets[] = {
    {"mid-model", 10.0, 3.0},
    {"small-model", 200.0, 10.0},
    {"negative", -10.0, -5.0},
};

constexpr std::uint64_t kInitStream = 0x696e6974ULL;
constexpr std::uint64_t kLoopStream = 0x6c6f6f70ULL;

struct Evaluation {
  double objective = 0.0;
  std::vector<double> phi_raw;
};

Evaluation Evaluate(const ProteinLanguageModel& model, const SteeringConfig& config,
                    const ProteinSequence& seq) {
  const ForwardResult fr = model.Forward(Tokenize(seq));
  Evaluation ev;
  double sum = 0.0;
  for (std::size_t i = 0; i < config.neurons.size(); ++i) {
    const double raw = SequenceActivation(fr.activations, config.neurons[i]);
    ev.phi_raw.push_back(raw);
    if (config.stats.empty()) {
      sum += raw;
    } else {
      const NormalizationStats& s = config.stats[i];
      sum += s.dead() ? 0.0 : (raw - s.min) / (s.max - s.min);
    }
  }
  ev.objective = sum / static_cast<double>(config.neurons.size());
  return ev;
}

std::string Number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::span<const SteeringPreset> SteeringPresets() { return kPresets; }

std::optional<SteeringPreset> FindPreset(std::string_view name) {
  for (const SteeringPreset& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

void SteeringConfig::Validate(const ModelConfig& model) const {
  if (neurons.empty()) throw Error("steering needs at least one target neuron");
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    if (!IsValidNeuron(model, neurons[i])) {
      throw ModelError("unknown neuron " + ToString(neurons[i]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (neurons[j] == neurons[i]) {
        throw Error("neuron " + ToString(neurons[i]) + " listed twice");
      }
    }
  }
  if (!(mask_fraction > 0.0 && mask_fraction < 1.0)) {
    throw Error("mask_fraction must be in (0, 1)");
  }
  if (steps < 1) throw Error("steps must be >= 1");
  if (!(temperature > 0.0)) throw Error("temperature must be > 0");
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error("a and b must be finite");
  if (!stats.empty() && stats.size() != neurons.size()) {
    throw Error("stats must be empty or match the neuron list");
  }
  if (init != InitKind::kExplicit &&
      (init_length < 2 || init_length > kMaxSequenceLength)) {
    throw Error("initial length must be in [2, 1024]");
  }
  if (static_cast<int>(init_length) + 2 > model.max_positions &&
      init != InitKind::kExplicit) {
    throw Error("initial length exceeds the model's max_positions");
  }
}

ProteinSequence InitialSequence(const SteeringConfig& config) {
  switch (config.init) {
    case InitKind::kRandom:
      return RandomSequence(config.init_length, Mix64(config.seed ^ kInitStream));
    case InitKind::kNeutral:
      return NeutralStart(config.init_length);
    case InitKind::kExplicit:
      return ProteinSequence(config.init_sequence);
  }
  throw Error("unknown init kind");
}

std::size_t MaskCount(double mask_fraction, std::size_t length) {
  const double raw = mask_fraction * static_cast<double>(length);
  // Products like 0.15 * 100 land slightly above the integer.
  auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(count, 1, length);
}

SteeringResult Steer(const ProteinLanguageModel& model, const SteeringConfig& config) {
  config.Validate(model.config());
  ProteinSequence current = InitialSequence(config);
  if (current.size() < 2) throw Error("steering needs a sequence of length >= 2");
  if (current.size() + 2 > static_cast<std::size_t>(model.config().max_positions)) {
    throw ModelError("initial sequence longer than the model supports");
  }

  InterventionSpec interventions;
  for (const NeuronId& n : config.neurons) interventions.Add(n, config.a, config.b);

  SteeringResult result;
  SteeringTrace& trace = result.trace;
  Evaluation current_eval = Evaluate(model, config, current);
  trace.initial = current;
  trace.initial_objective = current_eval.objective;
  trace.initial_phi_raw = current_eval.phi_raw;
  trace.initial_features = Featurize(current);

  Rng rng(Mix64(config.seed ^ kLoopStream));
  const std::size_t length = current.size();
  const std::size_t mask_count = MaskCount(config.mask_fraction, length);
  std::vector<int> positions(length);

  for (int step = 1; step <= config.steps; ++step) {
    // Token positions 1..length hold residues; BOS and EOS are never masked.
    std::iota(positions.begin(), positions.end(), 1);
    for (std::size_t i = 0; i < mask_count; ++i) {
      const std::size_t j = i + rng.UniformIndex(length - i);
      std::swap(positions[i], positions[j]);
    }
    std::vector<int> masked(positions.begin(), positions.begin() + mask_count);
    std::sort(masked.begin(), masked.end());

    TokenSequence tokens = Tokenize(current);
    for (int p : masked) tokens[p] = kMaskToken;
    const ForwardResult fr = model.Forward(tokens, interventions);
    const std::vector<int> sampled =
        SampleMasked(fr.logits, masked, config.temperature, rng, config.greedy_sampling);
    for (std::size_t i = 0; i < masked.size(); ++i) tokens[masked[i]] = sampled[i];
    ProteinSequence candidate = Detokenize(tokens);

    const Evaluation ev = Evaluate(model, config, candidate);
    SteeringStep rec;
    rec.step = step;
    rec.candidate = candidate;
    rec.objective = ev.objective;
    rec.phi_raw = ev.phi_raw;
    rec.features = Featurize(candidate);
    if (step == 1 || ev.objective > result.best_objective) {
      result.best = candidate;
      result.best_step = step;
      result.best_objective = ev.objective;
      result.best_features = rec.features;
    }
    rec.best_objective = result.best_objective;
    rec.accepted = !config.greedy_accept || ev.objective >= current_eval.objective;
    if (rec.accepted) {
      current = std::move(candidate);
      current_eval = ev;
    }
    trace.steps.push_back(std::move(rec));
  }
  return result;
}

SteeringResult NegativeSteer(const ProteinLanguageModel& model,
                             const SteeringConfig& config) {
  return Steer(model, config);
}

std::string TraceCsv(const SteeringResult& result, std::span<const NeuronId> neurons) {
  std::string out = "step,sequence,objective,best_objective";
  for (const NeuronId& n : neurons) {
    out += ",phi_" + std::to_string(n.layer) + "_" + std::to_string(n.index);
  }
  for (Feature f : AllFeatures()) {
    out += ",";
    out += FeatureName(f);
  }
  out += "\n";
  for (const SteeringStep& s : result.trace.steps) {
    out += std::to_string(s.step) + "," + s.candidate.str() + "," + Number(s.objective) +
           "," + Number(s.best_objective);
    for (double v : s.phi_raw) out += "," + Number(v);
    for (Feature f : AllFeatures()) out += "," + Number(GetFeature(s.features, f));
    out += "\n";
  }
  return out;
}

std::string TraceMetaJson(const SteeringConfig& config, const SteeringResult& result,
                          std::string_view model_id) {
  internal::Json j;
  j["schema"] = "plmneuron.steering";
  j["version"] = 1;
  j["model_id"] = model_id;
  j["seed"] = config.seed;
  j["a"] = config.a;
  j["b"] = config.b;
  j["mask_fraction"] = config.mask_fraction;
  j["steps"] = config.steps;
  j["temperature"] = config.temperature;
  j["greedy_sampling"] = config.greedy_sampling;
  j["greedy_accept"] = config.greedy_accept;
  j["normalized"] = !config.stats.empty();
  internal::Json neurons = internal::Json::array();
  for (const NeuronId& n : config.neurons) neurons.push_back(internal::NeuronToJson(n));
  j["neurons"] = std::move(neurons);
  j["initial_sequence"] = result.trace.initial.str();
  j["initial_objective"] = result.trace.initial_objective;
  j["initial_features"] = internal::FeaturesToJson(result.trace.initial_features);
  j["best_sequence"] = result.best.str();
  j["best_step"] = result.best_step;
  j["best_objective"] = result.best_objective;
  j["best_features"] = internal::FeaturesToJson(result.best_features);
  return j.dump(2) + "\n";
}

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kHigh: return "high";
    case Variant::kLow: return "low";
    case Variant::kControl: return "control";
  }
  return "?";
}

std::optional<Variant> VariantFromName(std::string_view name) {
  if (name == "high") return Variant::kHigh;
  if (name == "low") return Variant::kLow;
  if (name == "control") return Variant::kControl;
  return std::nullopt;
}

Direction LabelDirection(std::string_view description,
                         std::string_view characteristic) {
  const std::vector<std::string> tokens = WordTokens(description);
  const std::vector<Feature> wanted = AllFeatureMentions(WordTokens(characteristic));
  std::size_t pos = 0;
  std::optional<FeatureMention> first;
  while (pos < tokens.size()) {
    auto m = FindFeatureMention(std::span(tokens).subspan(pos));
    if (!m) break;
    m->begin += pos;
    if (!first) first = m;
    if (std::find(wanted.begin(), wanted.end(), m->feature) != wanted.end()) {
      return MentionDirection(tokens, *m);
    }
    pos = m->begin + m->length;
  }
  if (first) return MentionDirection(tokens, *first);
  return Direction::kHigh;
}

ExperimentResult RunExperiment(const ProteinLanguageModel& model,
                               const LabelCatalog& catalog,
                               std::string_view characteristic, Variant variant,
                               const ExperimentOptions& options) {
  const std::string model_id = options.model_id.empty() ? model.id() : options.model_id;
  const std::vector<SearchHit> hits = SearchLabels(catalog, characteristic, model_id);
  if (hits.empty()) {
    throw NoMatchingNeuronsError("no labeled neurons match '" +
                                 std::string(characteristic) + "'");
  }
  auto by_direction = [&](Direction want) {
    std::vector<NeuronId> out;
    for (const SearchHit& h : hits) {
      const NeuronLabel* l = catalog.Find(h.model_id, h.neuron);
      if (l != nullptr && l->score.value_or(-2.0) >= options.min_score &&
          LabelDirection(l->description, characteristic) == want) {
        out.push_back(h.neuron);
      }
    }
    if (options.max_neurons > 0 && out.size() > options.max_neurons) {
      out.resize(options.max_neurons);
    }
    return out;
  };

  ExperimentResult result;
  result.variant = variant;
  if (variant == Variant::kControl) {
    std::vector<NeuronId> all;
    for (const SearchHit& h : hits) all.push_back(h.neuron);
    const std::size_t n = std::max<std::size_t>(1, by_direction(Direction::kHigh).size());
    const ModelInfo info{model.config().num_layers, model.config().ffn_dim};
    result.neurons = RandomControlNeurons(info, n, options.control_seed, all);
  } else {
    result.neurons =
        by_direction(variant == Variant::kHigh ? Direction::kHigh : Direction::kLow);
    if (result.neurons.empty()) {
      throw NoMatchingNeuronsError("no neurons labeled '" +
                                   std::string(VariantName(variant)) + "' for '" +
                                   std::string(characteristic) + "'");
    }
  }

  result.config = options.steering;
  result.config.neurons = result.neurons;
  result.config.stats.clear();
  if (options.dataset != nullptr) {
    for (const NeuronId& n : result.neurons) {
      options.dataset->CheckNeuron(n);
      result.config.stats.push_back(options.dataset->stats[options.dataset->Slot(n)]);
    }
  }
  result.run = Steer(model, result.config);
  return result;
}

}  // namespace plmneuron
