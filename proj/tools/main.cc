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

// plmneuron: offline-first command-line driver for the labeling and steering
// pipeline. Remote backends read PLMNEURON_ENDPOINT and PLMNEURON_API_KEY.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plmneuron/analysis.h"
#include "plmneuron/catalog.h"
#include "plmneuron/completion.h"
#include "plmneuron/descriptors.h"
#include "plmneuron/errors.h"
#include "plmneuron/explainer.h"
#include "plmneuron/miner.h"
#include "plmneuron/oracle_model.h"
#include "plmneuron/sequence.h"
#include "plmneuron/simulator.h"
#include "plmneuron/steering.h"
#include "plmneuron/toy_transformer.h"

namespace plmneuron {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kMissingInput = 3,
  kInvalid = 4,
  kRemote = 5,
  kNoMatch = 6,
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void RequireFile(const std::string& path, const char* what) {
  if (path.empty()) throw CliError(kUsage, std::string(what) + " path is required");
  if (!fs::exists(path)) {
    throw CliError(kMissingInput, std::string(what) + " not found: " + path);
  }
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kMissingInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw IoError("cannot write " + tmp);
  }
  fs::rename(tmp, path);
  if (Slurp(path) != text) throw Error("output check failed for " + path);
}

NeuronId ParseNeuron(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const int layer = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string rest = text.substr(colon + 1);
    const int index = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {layer, index};
  } catch (const std::logic_error&) {
    throw CliError(kUsage, "neuron must look like LAYER:INDEX, got '" + text + "'");
  }
}

Json FeatureJson(const FeatureVector& fv) {
  Json j = Json::object();
  for (Feature f : AllFeatures()) j[std::string(FeatureName(f))] = GetFeature(fv, f);
  j["annotations"] = fv.annotations;
  return j;
}

std::string Dump(const Json& j) { return j.dump() + "\n"; }

std::vector<Json> ReadJsonLines(const std::string& path, std::string_view schema) {
  std::vector<Json> out;
  std::istringstream in(Slurp(path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw SchemaError(path + ":" + std::to_string(n) + ": not JSON");
    }
    out.push_back(std::move(j));
  }
  if (out.empty() || !out[0].is_object() || out[0].value("schema", "") != schema ||
      out[0].value("version", 0) != 1) {
    throw SchemaError(path + ": expected schema " + std::string(schema) + " v1");
  }
  return out;
}

// Model selection shared by mine and steer.
struct ModelFlags {
  std::string kind = "oracle";
  std::string weights;
  int layers = 6;
  int ffn = 32;
  int hidden = 64;
  int heads = 4;
  std::uint64_t seed = 0;
  std::vector<std::string> plants{"1:5:gravy:high", "3:17:gravy:low"};

  void Register(CLI::App* app) {
    app->add_option("--model", kind, "oracle or toy")
        ->check(CLI::IsMember({"oracle", "toy"}))
        ->capture_default_str();
    app->add_option("--weights", weights, "Toy transformer weight file");
    app->add_option("--layers", layers, "Number of layers")->capture_default_str();
    app->add_option("--ffn", ffn, "FFN width")->capture_default_str();
    app->add_option("--hidden", hidden, "Toy hidden size")->capture_default_str();
    app->add_option("--heads", heads, "Toy attention heads")->capture_default_str();
    app->add_option("--model-seed", seed, "Model seed")->capture_default_str();
    app->add_option("--plant", plants,
                    "Oracle planted neuron LAYER:INDEX:DESCRIPTOR:high|low")
        ->capture_default_str();
  }

  std::unique_ptr<ProteinLanguageModel> Build() const {
    if (kind == "toy") {
      if (!weights.empty()) {
        RequireFile(weights, "weight file");
        return std::make_unique<ToyTransformer>(ToyTransformer::Load(weights));
      }
      ModelConfig config;
      config.num_layers = layers;
      config.hidden_dim = hidden;
      config.ffn_dim = ffn;
      config.num_heads = heads;
      config.seed = seed;
      return std::make_unique<ToyTransformer>(config);
    }
    if (!weights.empty()) throw CliError(kUsage, "--weights needs --model toy");
    std::vector<PlantedNeuron> planted;
    for (const std::string& p : plants) {
      try {
        planted.push_back(ParsePlantedNeuron(p));
      } catch (const Error& e) {
        throw CliError(kUsage, e.what());
      }
    }
    return std::make_unique<SyntheticOracleModel>(layers, ffn, std::move(planted), seed);
  }
};

std::unique_ptr<CompletionClient> RemoteClient(const std::string& audit_log) {
  HttpClientConfig config = HttpClientConfig::FromEnvironment();
  if (config.endpoint.empty()) {
    throw CliError(kUsage, "remote backend needs PLMNEURON_ENDPOINT");
  }
  config.audit_log = audit_log;
  return std::make_unique<HttpCompletionClient>(std::move(config));
}

std::vector<NeuronId> SelectNeurons(const std::vector<std::string>& flags,
                                    const ExemplarStore& store) {
  std::vector<NeuronId> out;
  if (flags.empty()) {
    for (const NeuronExemplars& n : store.neurons) out.push_back(n.neuron);
    return out;
  }
  for (const std::string& f : flags) out.push_back(ParseNeuron(f));
  return out;
}

Json HypothesisJson(const Hypothesis& h) {
  Json j = Json::object();
  j["neuron"] = {h.neuron.layer, h.neuron.index};
  j["candidate"] = h.candidate_index;
  j["source"] = std::string(SourceName(h.source));
  j["text"] = h.text;
  return j;
}

Hypothesis HypothesisFromJson(const Json& j) {
  try {
    Hypothesis h;
    h.neuron = {j.at("neuron").at(0).get<int>(), j.at("neuron").at(1).get<int>()};
    h.candidate_index = j.at("candidate").get<int>();
    h.source = j.at("source").get<std::string>() == "remote" ? HypothesisSource::kRemote
                                                            : HypothesisSource::kMock;
    h.text = j.at("text").get<std::string>();
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad hypothesis record: ") + e.what());
  }
}

std::vector<Hypothesis> Explain(const NeuronId& n, const ExemplarStore& store,
                                const std::string& backend, int m,
                                CompletionClient* client) {
  const std::vector<Exemplar> exemplars = store.Get(n).Combined();
  if (backend == "mock") return MockExplainerCandidates(n, exemplars, m);
  ExplainerOptions options;
  options.m = m;
  return GenerateHypotheses(*client, n, exemplars, options);
}

std::unique_ptr<PredictionBackend> MakeSimulator(const std::string& kind,
                                                 const MinedDataset& dataset,
                                                 CompletionClient* client) {
  if (kind == "baseline") {
    return std::make_unique<LexicalBaseline>(QuantileTable::FromDataset(dataset));
  }
  return std::make_unique<RemoteSimulator>(*client);
}

Json ScoreJson(const ScoredHypothesis& s) {
  Json j = HypothesisJson(s.hypothesis);
  j["r"] = s.r ? Json(*s.r) : Json(nullptr);
  j["n_eval"] = s.n_eval;
  return j;
}

// Subcommand handlers. Each returns an exit code.

struct FeaturizeArgs {
  std::string fasta, annotations, out;
};

int RunFeaturize(const FeaturizeArgs& a) {
  RequireFile(a.fasta, "FASTA");
  if (!a.annotations.empty()) RequireFile(a.annotations, "annotation table");
  const std::vector<CorpusEntry> corpus = LoadCorpusFiles(a.fasta, a.annotations);
  std::string text = Dump({{"schema", "plmneuron.features"}, {"version", 1}});
  for (const CorpusEntry& e : corpus) {
    Json j = Json::object();
    j["id"] = e.id;
    j["sequence"] = e.sequence.str();
    j["features"] = FeatureJson(Featurize(e.sequence, e.annotations));
    text += Dump(j);
  }
  WriteText(a.out, text);
  if (!a.out.empty() && a.out != "-") {
    if (ReadJsonLines(a.out, "plmneuron.features").size() != corpus.size() + 1) {
      throw Error("record count check failed for " + a.out);
    }
  }
  std::cerr << "featurized " << corpus.size() << " sequences\n";
  return kOk;
}

struct MineArgs {
  std::string fasta, annotations, dataset_out, exemplars_out, aggregation = "mean";
  int k = 20, workers = 1;
  double val_fraction = 0.2;
  std::uint64_t seed = 0;
  ModelFlags model;
};

int RunMine(const MineArgs& a) {
  RequireFile(a.fasta, "FASTA");
  if (!a.annotations.empty()) RequireFile(a.annotations, "annotation table");
  if (a.dataset_out.empty() || a.exemplars_out.empty()) {
    throw CliError(kUsage, "--dataset-out and --exemplars-out are required");
  }
  const auto model = a.model.Build();
  const std::vector<CorpusEntry> corpus = LoadCorpusFiles(a.fasta, a.annotations);
  MineOptions options;
  options.k = a.k;
  options.val_fraction = a.val_fraction;
  options.seed = a.seed;
  options.workers = a.workers;
  options.aggregation = a.aggregation == "max" ? Aggregation::kMax : Aggregation::kMean;
  const MineResult result = Mine(*model, corpus, options);
  WriteDataset(result.dataset, a.dataset_out);
  WriteExemplars(result.store, a.exemplars_out);
  if (!(ReadDataset(a.dataset_out) == result.dataset) ||
      !(ReadExemplars(a.exemplars_out) == result.store)) {
    throw Error("mined outputs failed the read-back check");
  }
  if (result.store.degraded) {
    std::cerr << "warning: train split smaller than 2k; exemplars overlap\n";
  }
  std::cerr << "mined " << result.dataset.records.size() << " sequences x "
            << result.dataset.num_neurons() << " neurons for " << result.dataset.model_id
            << "\n";
  return kOk;
}

struct ExplainArgs {
  std::string exemplars, out, backend = "mock", audit_log;
  std::vector<std::string> neurons;
  int m = 5;
};

int RunExplain(const ExplainArgs& a) {
  RequireFile(a.exemplars, "exemplar store");
  const ExemplarStore store = ReadExemplars(a.exemplars);
  std::unique_ptr<CompletionClient> client;
  if (a.backend == "remote") client = RemoteClient(a.audit_log);
  std::string text = Dump({{"schema", "plmneuron.hypotheses"},
                           {"version", 1},
                           {"model_id", store.model_id}});
  std::size_t count = 0;
  for (const NeuronId& n : SelectNeurons(a.neurons, store)) {
    for (const Hypothesis& h : Explain(n, store, a.backend, a.m, client.get())) {
      text += Dump(HypothesisJson(h));
      ++count;
    }
  }
  WriteText(a.out, text);
  std::cerr << "wrote " << count << " hypotheses\n";
  return kOk;
}

struct ScoreArgs {
  std::string dataset, hypotheses, out, backend = "baseline", audit_log;
  int n_val = 50, workers = 1;
};

int RunScore(const ScoreArgs& a) {
  RequireFile(a.dataset, "dataset");
  RequireFile(a.hypotheses, "hypothesis file");
  const MinedDataset dataset = ReadDataset(a.dataset);
  const std::vector<Json> lines = ReadJsonLines(a.hypotheses, "plmneuron.hypotheses");
  std::unique_ptr<CompletionClient> client;
  if (a.backend == "remote") client = RemoteClient(a.audit_log);
  auto backend = MakeSimulator(a.backend, dataset, client.get());
  std::string text = Dump({{"schema", "plmneuron.scores"},
                           {"version", 1},
                           {"model_id", dataset.model_id},
                           {"simulator", a.backend}});
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Hypothesis h = HypothesisFromJson(lines[i]);
    dataset.CheckNeuron(h.neuron);
    const auto validation = ValidationSet(dataset, h.neuron, a.n_val);
    text += Dump(ScoreJson(ScoreHypothesis(*backend, h, validation, a.workers)));
  }
  WriteText(a.out, text);
  return kOk;
}

struct LabelArgs {
  std::string dataset, exemplars, catalog, explainer = "mock", simulator = "baseline",
                                           audit_log, created_at;
  std::vector<std::string> neurons;
  int m = 5, n_val = 50, workers = 1;
  std::uint64_t seed = 0;
  bool append = false;
};

int RunLabel(const LabelArgs& a) {
  RequireFile(a.dataset, "dataset");
  RequireFile(a.exemplars, "exemplar store");
  if (a.catalog.empty()) throw CliError(kUsage, "--catalog is required");
  const MinedDataset dataset = ReadDataset(a.dataset);
  const ExemplarStore store = ReadExemplars(a.exemplars);
  if (store.model_id != dataset.model_id) {
    throw CliError(kUsage, "dataset and exemplars come from different models");
  }
  std::unique_ptr<CompletionClient> client;
  if (a.explainer == "remote" || a.simulator == "remote") client = RemoteClient(a.audit_log);
  auto backend = MakeSimulator(a.simulator, dataset, client.get());

  std::vector<NeuronLabel> labels;
  int labeled = 0;
  for (const NeuronId& n : SelectNeurons(a.neurons, store)) {
    dataset.CheckNeuron(n);
    NeuronLabel label;
    label.model_id = dataset.model_id;
    label.neuron = n;
    label.provenance = {a.explainer, a.simulator, a.seed, a.created_at};
    if (!store.Get(n).dead) {
      const auto validation = ValidationSet(dataset, n, a.n_val);
      std::vector<ScoredHypothesis> scored;
      for (const Hypothesis& h : Explain(n, store, a.explainer, a.m, client.get())) {
        scored.push_back(ScoreHypothesis(*backend, h, validation, a.workers));
      }
      if (auto best = RankHypotheses(scored)) {
        label.description = best->hypothesis.text;
        label.score = best->r;
        label.n_eval = best->n_eval;
        ++labeled;
      }
    }
    labels.push_back(std::move(label));
  }
  const ModelInfo info{dataset.num_layers, dataset.ffn_dim};
  if (a.append && fs::exists(a.catalog)) {
    AppendToCatalog(a.catalog, dataset.model_id, info, labels);
  } else {
    LabelCatalog catalog;
    catalog.AddModel(dataset.model_id, info);
    for (NeuronLabel& l : labels) catalog.Upsert(std::move(l));
    SaveCatalog(catalog, a.catalog);
    if (!(LoadCatalog(a.catalog) == catalog)) {
      throw Error("catalog failed the read-back check");
    }
  }
  std::cerr << "labeled " << labeled << " of " << labels.size() << " neurons\n";
  if (labeled == 0) return kNoMatch;
  return kOk;
}

struct SearchArgs {
  std::string catalog, query, model_id, selector = "keyword", audit_log;
};

int RunSearch(const SearchArgs& a) {
  RequireFile(a.catalog, "catalog");
  const LabelCatalog catalog = LoadCatalog(a.catalog);
  std::vector<NeuronId> selected;
  if (a.selector == "llm") {
    auto client = RemoteClient(a.audit_log);
    SelectionResult r = SelectNeuronsLlm(*client, catalog, a.query, a.model_id);
    for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
    selected = std::move(r.selected);
  } else {
    selected = Search(catalog, a.query, a.model_id);
  }
  for (const auto& [model_id, info] : catalog.models()) {
    if (!a.model_id.empty() && model_id != a.model_id) continue;
    for (const NeuronId& n : selected) {
      if (const NeuronLabel* l = catalog.Find(model_id, n)) {
        std::cout << model_id << "\t" << n.layer << "\t" << n.index << "\t"
                  << l->description << "\n";
      }
    }
  }
  if (selected.empty()) {
    std::cerr << "no labeled neurons match '" << a.query << "'\n";
    return kNoMatch;
  }
  return kOk;
}

struct SteerArgs {
  std::string catalog, characteristic, variant = "high", preset, dataset, out, meta,
      init = "random", init_sequence;
  std::vector<std::string> neurons;
  std::optional<double> a, b;
  double mask = 0.15, temperature = 1.0, min_score = -1.0;
  int steps = 200, max_neurons = 0;
  std::size_t init_length = 100;
  std::uint64_t seed = 0, control_seed = 0;
  bool greedy_sampling = false, greedy_accept = false;
  ModelFlags model;
};

int RunSteer(const SteerArgs& a) {
  if (a.out.empty()) throw CliError(kUsage, "--out is required");
  if (!a.preset.empty() && (a.a || a.b)) {
    throw CliError(kUsage, "--preset conflicts with --a/--b");
  }
  if (a.neurons.empty() == a.catalog.empty()) {
    throw CliError(kUsage, "give either --neuron or --catalog with --characteristic");
  }
  const auto model = a.model.Build();

  SteeringConfig config;
  if (!a.preset.empty()) {
    const auto preset = FindPreset(a.preset);
    if (!preset) throw CliError(kUsage, "unknown preset '" + a.preset + "'");
    config.a = preset->a;
    config.b = preset->b;
  }
  if (a.a) config.a = *a.a;
  if (a.b) config.b = *a.b;
  config.mask_fraction = a.mask;
  config.steps = a.steps;
  config.temperature = a.temperature;
  config.greedy_sampling = a.greedy_sampling;
  config.greedy_accept = a.greedy_accept;
  config.init = a.init == "neutral"    ? InitKind::kNeutral
                : a.init == "explicit" ? InitKind::kExplicit
                                       : InitKind::kRandom;
  if (config.init == InitKind::kExplicit && a.init_sequence.empty()) {
    throw CliError(kUsage, "--init explicit needs --init-sequence");
  }
  config.init_length = a.init_length;
  config.init_sequence = a.init_sequence;
  config.seed = a.seed;

  std::optional<MinedDataset> dataset;
  if (!a.dataset.empty()) {
    RequireFile(a.dataset, "dataset");
    dataset = ReadDataset(a.dataset);
    if (dataset->model_id != model->id()) {
      throw CliError(kUsage, "dataset was mined from " + dataset->model_id +
                                 ", not " + model->id());
    }
  }

  SteeringResult run;
  if (!a.neurons.empty()) {
    for (const std::string& f : a.neurons) config.neurons.push_back(ParseNeuron(f));
    if (dataset) {
      for (const NeuronId& n : config.neurons) {
        dataset->CheckNeuron(n);
        config.stats.push_back(dataset->stats[dataset->Slot(n)]);
      }
    }
    run = Steer(*model, config);
  } else {
    RequireFile(a.catalog, "catalog");
    if (a.characteristic.empty()) throw CliError(kUsage, "--characteristic is required");
    const auto variant = VariantFromName(a.variant);
    if (!variant) throw CliError(kUsage, "unknown variant '" + a.variant + "'");
    const LabelCatalog catalog = LoadCatalog(a.catalog);
    if (!catalog.models().contains(model->id())) {
      throw CliError(kUsage, "catalog has no labels for model " + model->id());
    }
    ExperimentOptions options;
    options.steering = config;
    options.max_neurons = static_cast<std::size_t>(a.max_neurons);
    options.min_score = a.min_score;
    options.control_seed = a.control_seed;
    options.dataset = dataset ? &*dataset : nullptr;
    ExperimentResult result = RunExperiment(*model, catalog, a.characteristic, *variant, options);
    config = result.config;
    run = std::move(result.run);
  }
  WriteText(a.out, TraceCsv(run, config.neurons));
  if (!a.meta.empty()) WriteText(a.meta, TraceMetaJson(config, run, model->id()));
  std::cerr << "best objective " << run.best_objective << " at step " << run.best_step
            << ": " << run.best.str() << "\n";
  return kOk;
}

struct AnalyzeArgs {
  std::string catalog, model_id, motif, fasta, dataset, sequence, out;
  bool sextiles = false, distribution = false;
};

int RunAnalyze(const AnalyzeArgs& a) {
  const int modes = int{a.sextiles} + int{!a.motif.empty()} + int{a.distribution};
  if (modes != 1) {
    throw CliError(kUsage, "choose exactly one of --sextiles, --motif, --distribution");
  }
  if (a.sextiles) {
    RequireFile(a.catalog, "catalog");
    const auto hist = CategoryDistribution(LoadCatalog(a.catalog), DefaultCategories(),
                                           a.model_id);
    WriteText(a.out, SextileCsv(hist));
    return kOk;
  }
  if (!a.motif.empty()) {
    const MotifPattern pattern = ParseMotif(a.motif);
    RequireFile(a.fasta, "FASTA");
    std::string text = "id,start,end,match\n";
    for (const FastaRecord& r : ParseFastaStrict(Slurp(a.fasta))) {
      for (const MotifMatch& m : MotifScan(r.sequence, pattern)) {
        text += r.id + "," + std::to_string(m.start) + "," + std::to_string(m.end) + "," +
                r.sequence.str().substr(m.start, m.end - m.start) + "\n";
      }
    }
    WriteText(a.out, text);
    return kOk;
  }
  RequireFile(a.dataset, "dataset");
  if (a.sequence.empty()) throw CliError(kUsage, "--distribution needs --sequence");
  const MinedDataset dataset = ReadDataset(a.dataset);
  std::vector<FeatureVector> features;
  for (const MinedRecord& r : dataset.records) features.push_back(r.features);
  const FeatureVector generated = Featurize(ProteinSequence(a.sequence));
  WriteText(a.out, DistributionCsv(DistributionReport(features, generated)));
  return kOk;
}

struct WeightsArgs {
  std::string out;
  ModelFlags model;
};

int RunWeights(WeightsArgs a) {
  if (a.out.empty()) throw CliError(kUsage, "--out is required");
  a.model.kind = "toy";
  a.model.weights.clear();
  const auto model = a.model.Build();
  const auto& toy = static_cast<const ToyTransformer&>(*model);
  toy.Save(a.out);
  const ToyTransformer back = ToyTransformer::Load(a.out);
  if (back.id() != toy.id()) throw Error("weight file failed the read-back check");
  std::cerr << "wrote " << toy.id() << " to " << a.out << "\n";
  return kOk;
}

int Dispatch(int argc, char** argv) {
  CLI::App app{"Label and steer neurons of protein language models"};
  app.require_subcommand(1);
  int code = kOk;

  FeaturizeArgs fa;
  auto* featurize = app.add_subcommand("featurize", "Compute descriptors for a FASTA file");
  featurize->add_option("--fasta", fa.fasta, "Input FASTA")->required();
  featurize->add_option("--annotations", fa.annotations, "TSV of id<TAB>annotation");
  featurize->add_option("--out", fa.out, "Output JSONL (default stdout)");
  featurize->callback([&] { code = RunFeaturize(fa); });

  MineArgs ma;
  auto* mine = app.add_subcommand("mine", "Record activations and exemplars");
  mine->add_option("--fasta", ma.fasta, "Corpus FASTA")->required();
  mine->add_option("--annotations", ma.annotations, "TSV of id<TAB>annotation");
  mine->add_option("--dataset-out", ma.dataset_out, "Dataset JSONL")->required();
  mine->add_option("--exemplars-out", ma.exemplars_out, "Exemplar JSONL")->required();
  mine->add_option("--k", ma.k, "Exemplars per side")->capture_default_str();
  mine->add_option("--val-fraction", ma.val_fraction, "Validation fraction")
      ->capture_default_str();
  mine->add_option("--seed", ma.seed, "Split seed")->capture_default_str();
  mine->add_option("--workers", ma.workers, "Threads")->capture_default_str();
  mine->add_option("--aggregation", ma.aggregation, "mean or max")
      ->check(CLI::IsMember({"mean", "max"}))
      ->capture_default_str();
  ma.model.Register(mine);
  mine->callback([&] { code = RunMine(ma); });

  ExplainArgs ea;
  auto* explain = app.add_subcommand("explain", "Generate candidate hypotheses");
  explain->add_option("--exemplars", ea.exemplars, "Exemplar JSONL")->required();
  explain->add_option("--out", ea.out, "Hypotheses JSONL (default stdout)");
  explain->add_option("--backend", ea.backend, "mock or remote")
      ->check(CLI::IsMember({"mock", "remote"}))
      ->capture_default_str();
  explain->add_option("--neuron", ea.neurons, "LAYER:INDEX (default all)");
  explain->add_option("--m", ea.m, "Candidates per neuron")->capture_default_str();
  explain->add_option("--audit-log", ea.audit_log, "JSONL log of remote calls");
  explain->callback([&] { code = RunExplain(ea); });

  ScoreArgs sa;
  auto* score = app.add_subcommand("score", "Score hypotheses against held-out activations");
  score->add_option("--dataset", sa.dataset, "Dataset JSONL")->required();
  score->add_option("--hypotheses", sa.hypotheses, "Hypotheses JSONL")->required();
  score->add_option("--out", sa.out, "Scores JSONL (default stdout)");
  score->add_option("--backend", sa.backend, "baseline or remote")
      ->check(CLI::IsMember({"baseline", "remote"}))
      ->capture_default_str();
  score->add_option("--n-val", sa.n_val, "Validation sequences")->capture_default_str();
  score->add_option("--workers", sa.workers, "Threads")->capture_default_str();
  score->add_option("--audit-log", sa.audit_log, "JSONL log of remote calls");
  score->callback([&] { code = RunScore(sa); });

  LabelArgs la;
  auto* label = app.add_subcommand("label", "Explain, score and write the label catalog");
  label->add_option("--dataset", la.dataset, "Dataset JSONL")->required();
  label->add_option("--exemplars", la.exemplars, "Exemplar JSONL")->required();
  label->add_option("--catalog", la.catalog, "Catalog JSONL")->required();
  label->add_flag("--append", la.append, "Merge into an existing catalog");
  label->add_option("--explainer", la.explainer, "mock or remote")
      ->check(CLI::IsMember({"mock", "remote"}))
      ->capture_default_str();
  label->add_option("--simulator", la.simulator, "baseline or remote")
      ->check(CLI::IsMember({"baseline", "remote"}))
      ->capture_default_str();
  label->add_option("--neuron", la.neurons, "LAYER:INDEX (default all)");
  label->add_option("--m", la.m, "Candidates per neuron")->capture_default_str();
  label->add_option("--n-val", la.n_val, "Validation sequences")->capture_default_str();
  label->add_option("--workers", la.workers, "Threads")->capture_default_str();
  label->add_option("--seed", la.seed, "Seed recorded in provenance")->capture_default_str();
  label->add_option("--created-at", la.created_at, "Timestamp recorded in provenance");
  label->add_option("--audit-log", la.audit_log, "JSONL log of remote calls");
  label->callback([&] { code = RunLabel(la); });

  SearchArgs qa;
  auto* search = app.add_subcommand("search", "Find labeled neurons for a characteristic");
  search->add_option("--catalog", qa.catalog, "Catalog JSONL")->required();
  search->add_option("--query", qa.query, "Characteristic")->required();
  search->add_option("--model-id", qa.model_id, "Restrict to one model");
  search->add_option("--selector", qa.selector, "keyword or llm")
      ->check(CLI::IsMember({"keyword", "llm"}))
      ->capture_default_str();
  search->add_option("--audit-log", qa.audit_log, "JSONL log of remote calls");
  search->callback([&] { code = RunSearch(qa); });

  SteerArgs ta;
  auto* steer = app.add_subcommand("steer", "Masked-inpainting steering run");
  steer->add_option("--out", ta.out, "Trace CSV")->required();
  steer->add_option("--meta", ta.meta, "Run metadata JSON");
  steer->add_option("--catalog", ta.catalog, "Catalog JSONL");
  steer->add_option("--characteristic", ta.characteristic, "Label query, e.g. gravy");
  steer->add_option("--variant", ta.variant, "high, low or control")->capture_default_str();
  steer->add_option("--neuron", ta.neurons, "Explicit target LAYER:INDEX");
  steer->add_option("--dataset", ta.dataset, "Dataset JSONL for normalization");
  steer->add_option("--preset", ta.preset, "mid-model, small-model or negative");
  steer->add_option("--a", ta.a, "Intervention scale");
  steer->add_option("--b", ta.b, "Intervention offset");
  steer->add_option("--mask", ta.mask, "Masked fraction")->capture_default_str();
  steer->add_option("--steps", ta.steps, "Iterations")->capture_default_str();
  steer->add_option("--temperature", ta.temperature, "Sampling temperature")
      ->capture_default_str();
  steer->add_flag("--greedy-sampling", ta.greedy_sampling, "Argmax instead of sampling");
  steer->add_flag("--greedy-accept", ta.greedy_accept, "Reject objective decreases");
  steer->add_option("--init", ta.init, "random, neutral or explicit")
      ->check(CLI::IsMember({"random", "neutral", "explicit"}))
      ->capture_default_str();
  steer->add_option("--init-length", ta.init_length, "Initial length")->capture_default_str();
  steer->add_option("--init-sequence", ta.init_sequence, "Initial sequence");
  steer->add_option("--seed", ta.seed, "Run seed")->capture_default_str();
  steer->add_option("--control-seed", ta.control_seed, "Control neuron seed")
      ->capture_default_str();
  steer->add_option("--max-neurons", ta.max_neurons, "Cap on target neurons (0: all)")
      ->capture_default_str();
  steer->add_option("--min-score", ta.min_score, "Skip labels scoring below this")
      ->capture_default_str();
  ta.model.Register(steer);
  steer->callback([&] { code = RunSteer(ta); });

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Sextile, motif and distribution reports");
  analyze->add_flag("--sextiles", aa.sextiles, "Category counts by layer sextile");
  analyze->add_option("--catalog", aa.catalog, "Catalog JSONL");
  analyze->add_option("--model-id", aa.model_id, "Model in the catalog");
  analyze->add_option("--motif", aa.motif, "Pattern such as C-x(2,4)-C-x(12)-H-x(3,5)-H");
  analyze->add_option("--fasta", aa.fasta, "FASTA to scan");
  analyze->add_flag("--distribution", aa.distribution, "Place a sequence in the dataset");
  analyze->add_option("--dataset", aa.dataset, "Dataset JSONL");
  analyze->add_option("--sequence", aa.sequence, "Generated sequence");
  analyze->add_option("--out", aa.out, "CSV (default stdout)");
  analyze->callback([&] { code = RunAnalyze(aa); });

  WeightsArgs wa;
  auto* weights = app.add_subcommand("weights", "Initialize and save toy transformer weights");
  weights->add_option("--out", wa.out, "Weight file")->required();
  wa.model.Register(weights);
  weights->callback([&] { code = RunWeights(wa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  return code;
}

int Main(int argc, char** argv) {
  try {
    return Dispatch(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const NoMatchingNeuronsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoMatch;
  } catch (const TransportError& e) {
    std::cerr << "remote error: " << e.what() << "\n";
    return kRemote;
  } catch (const AuthError& e) {
    std::cerr << "remote error: " << e.what() << "\n";
    return kRemote;
  } catch (const UnparseableResponseError& e) {
    std::cerr << "remote error: " << e.what() << "\n";
    return kRemote;
  } catch (const FastaError& e) {
    std::cerr << "error: record '" << e.record_id() << "' line " << e.line() << ": "
              << e.what() << "\n";
    return kInvalid;
  } catch (const WeightFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == WeightFileError::Kind::kIo ? kMissingInput : kInvalid;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMissingInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace
}  // namespace plmneuron

int main(int argc, char** argv) { return plmneuron::Main(argc, argv); }
