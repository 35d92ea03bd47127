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

#include "plmneuron/miner.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "json_io.h"
#include "plmneuron/errors.h"
#include "plmneuron/parallel.h"
#include "plmneuron/random.h"

namespace plmneuron {

using internal::Field;
using internal::Json;

namespace {

constexpr std::string_view kDatasetSchema = "plmneuron.dataset";
constexpr std::string_view kExemplarSchema = "plmneuron.exemplars";

std::string Accession(const std::string& id) {
  const auto first = id.find('|');
  if (first == std::string::npos) return id;
  const auto second = id.find('|', first + 1);
  if (second == std::string::npos) return id.substr(first + 1);
  return id.substr(first + 1, second - first - 1);
}

std::string_view AggregationName(Aggregation a) {
  return a == Aggregation::kMax ? "max" : "mean";
}

Aggregation AggregationFromName(const std::string& name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "max") return Aggregation::kMax;
  throw SchemaError("unknown aggregation '" + name + "'");
}

Split SplitFromName(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation") return Split::kValidation;
  throw SchemaError("unknown split '" + name + "'");
}

Json ExemplarToJson(const Exemplar& e) {
  Json j;
  j["id"] = e.id;
  j["sequence"] = e.sequence.str();
  j["phi"] = e.phi;
  j["features"] = internal::FeaturesToJson(e.features);
  return j;
}

Exemplar ExemplarFromJson(const Json& j) {
  try {
    return Exemplar{Field<std::string>(j, "id"),
                    ProteinSequence(Field<std::string>(j, "sequence")),
                    Field<double>(j, "phi"),
                    internal::FeaturesFromJson(Field<Json>(j, "features"))};
  } catch (const SequenceError& e) {
    throw SchemaError(std::string("invalid exemplar sequence: ") + e.what());
  }
}

std::string DumpLines(const std::vector<Json>& lines) {
  std::string out;
  for (const Json& j : lines) {
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace

std::vector<CorpusEntry> LoadCorpus(std::string_view fasta,
                                    std::string_view annotations_tsv) {
  std::vector<CorpusEntry> corpus;
  std::map<std::string, std::size_t> by_id;
  std::map<std::string, std::size_t> by_accession;
  for (FastaRecord& r : ParseFastaStrict(fasta)) {
    if (!by_id.emplace(r.id, corpus.size()).second) {
      throw Error("duplicate sequence id '" + r.id + "'");
    }
    by_accession.emplace(Accession(r.id), corpus.size());
    corpus.push_back({r.id, std::move(r.sequence), {}});
  }
  std::size_t pos = 0;
  while (pos < annotations_tsv.size()) {
    std::size_t end = annotations_tsv.find('\n', pos);
    if (end == std::string_view::npos) end = annotations_tsv.size();
    std::string_view line = annotations_tsv.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    const std::string id(line.substr(0, tab));
    const std::string text(line.substr(tab + 1));
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      it = by_accession.find(id);
      if (it == by_accession.end()) continue;
    }
    corpus[it->second].annotations.push_back(text);
  }
  return corpus;
}

std::vector<CorpusEntry> LoadCorpusFiles(const std::filesystem::path& fasta,
                                         const std::filesystem::path& annotations) {
  const std::string fasta_text = internal::ReadFile(fasta);
  const std::string tsv =
      annotations.empty() ? std::string() : internal::ReadFile(annotations);
  return LoadCorpus(fasta_text, tsv);
}

std::string_view SplitName(Split s) {
  return s == Split::kTrain ? "train" : "validation";
}

Split AssignSplit(std::string_view id, double val_fraction, std::uint64_t seed) {
  const std::uint64_t h = StableHash(id, seed);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < val_fraction ? Split::kValidation : Split::kTrain;
}

void MinedDataset::CheckNeuron(const NeuronId& neuron) const {
  if (neuron.layer < 0 || neuron.layer >= num_layers || neuron.index < 0 ||
      neuron.index >= ffn_dim) {
    throw ModelError("neuron " + ToString(neuron) + " not in dataset");
  }
}

std::vector<Exemplar> NeuronExemplars::Combined() const {
  std::vector<Exemplar> out = top;
  std::set<std::string> seen;
  for (const Exemplar& e : top) seen.insert(e.id);
  for (const Exemplar& e : bottom) {
    if (seen.insert(e.id).second) out.push_back(e);
  }
  return out;
}

const NeuronExemplars& ExemplarStore::Get(const NeuronId& n) const {
  if (n.layer < 0 || n.layer >= num_layers || n.index < 0 || n.index >= ffn_dim) {
    throw ModelError("neuron " + ToString(n) + " not in exemplar store");
  }
  return neurons[static_cast<std::size_t>(n.layer) * ffn_dim + n.index];
}

MineResult Mine(const ProteinLanguageModel& model,
                std::span<const CorpusEntry> corpus, const MineOptions& options) {
  if (corpus.empty()) throw Error("mine: corpus is empty");
  if (options.k < 1) throw Error("mine: k must be >= 1");
  if (!(options.val_fraction > 0.0 && options.val_fraction < 1.0)) {
    throw Error("mine: val_fraction must be in (0, 1)");
  }
  if (options.workers < 1) throw Error("mine: workers must be >= 1");

  const ModelConfig& config = model.config();
  const int num_neurons = config.total_neurons();
  const std::size_t n = corpus.size();

  std::vector<std::vector<double>> per_record(n);
  std::vector<FeatureVector> features(n);
  ParallelFor(n, options.workers, [&](std::size_t i) {
    features[i] = Featurize(corpus[i].sequence, corpus[i].annotations);
    const ForwardResult fr = model.Forward(Tokenize(corpus[i].sequence));
    std::vector<double>& row = per_record[i];
    row.resize(num_neurons);
    for (int l = 0; l < config.num_layers; ++l) {
      for (int j = 0; j < config.ffn_dim; ++j) {
        row[static_cast<std::size_t>(l) * config.ffn_dim + j] =
            SequenceActivation(fr.activations, {l, j}, options.aggregation);
      }
    }
  });

  MineResult result;
  MinedDataset& ds = result.dataset;
  ds.model_id = model.id();
  ds.num_layers = config.num_layers;
  ds.ffn_dim = config.ffn_dim;
  ds.val_fraction = options.val_fraction;
  ds.seed = options.seed;
  ds.aggregation = options.aggregation;
  for (std::size_t i = 0; i < n; ++i) {
    ds.records.push_back({corpus[i].id, corpus[i].sequence, std::move(features[i]),
                          AssignSplit(corpus[i].id, options.val_fraction, options.seed)});
  }
  ds.raw.assign(num_neurons, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int s = 0; s < num_neurons; ++s) ds.raw[s][i] = per_record[i][s];
  }
  for (int s = 0; s < num_neurons; ++s) ds.stats.push_back(ComputeStats(ds.raw[s]));

  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < n; ++i) {
    if (ds.records[i].split == Split::kTrain) train.push_back(i);
  }
  const std::size_t k = static_cast<std::size_t>(options.k);
  ExemplarStore& store = result.store;
  store.model_id = ds.model_id;
  store.k = options.k;
  store.degraded = train.size() < 2 * k;
  store.num_layers = ds.num_layers;
  store.ffn_dim = ds.ffn_dim;
  for (int l = 0; l < ds.num_layers; ++l) {
    for (int j = 0; j < ds.ffn_dim; ++j) {
      const NeuronId id{l, j};
      const std::size_t slot = ds.Slot(id);
      std::vector<double> phi(n);
      for (std::size_t i : train) phi[i] = ds.Phi(id, i);
      auto make = [&](std::vector<std::size_t> order, bool descending) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return descending ? phi[a] > phi[b] : phi[a] < phi[b];
                         });
        order.resize(std::min(k, order.size()));
        std::vector<Exemplar> out;
        for (std::size_t i : order) {
          out.push_back({ds.records[i].id, ds.records[i].sequence, phi[i],
                         ds.records[i].features});
        }
        return out;
      };
      store.neurons.push_back(
          {id, ds.stats[slot].dead(), make(train, true), make(train, false)});
    }
  }
  return result;
}

std::vector<std::size_t> ValidationIndices(const MinedDataset& dataset) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    if (dataset.records[i].split == Split::kValidation) out.push_back(i);
  }
  return out;
}

std::string SerializeDataset(const MinedDataset& ds) {
  std::vector<Json> lines;
  Json header;
  header["schema"] = kDatasetSchema;
  header["version"] = kDatasetSchemaVersion;
  header["model_id"] = ds.model_id;
  header["num_layers"] = ds.num_layers;
  header["ffn_dim"] = ds.ffn_dim;
  header["val_fraction"] = ds.val_fraction;
  header["seed"] = ds.seed;
  header["aggregation"] = AggregationName(ds.aggregation);
  header["num_records"] = ds.records.size();
  lines.push_back(std::move(header));
  for (int l = 0; l < ds.num_layers; ++l) {
    for (int j = 0; j < ds.ffn_dim; ++j) {
      const NormalizationStats& s = ds.stats[ds.Slot({l, j})];
      lines.push_back(Json{{"type", "stats"}, {"layer", l}, {"index", j},
                           {"min", s.min}, {"max", s.max}, {"dead", s.dead()}});
    }
  }
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const MinedRecord& r = ds.records[i];
    Json j;
    j["type"] = "record";
    j["id"] = r.id;
    j["sequence"] = r.sequence.str();
    j["split"] = SplitName(r.split);
    j["features"] = internal::FeaturesToJson(r.features);
    std::vector<double> raw(ds.raw.size());
    for (std::size_t s = 0; s < ds.raw.size(); ++s) raw[s] = ds.raw[s][i];
    j["phi_raw"] = std::move(raw);
    lines.push_back(std::move(j));
  }
  return DumpLines(lines);
}

MinedDataset ParseDataset(std::string_view text) {
  const std::vector<Json> lines = internal::ParseJsonLines(text);
  if (lines.empty()) throw SchemaError("dataset file is empty");
  internal::CheckHeader(lines[0], kDatasetSchema, kDatasetSchemaVersion);
  MinedDataset ds;
  const Json& h = lines[0];
  ds.model_id = Field<std::string>(h, "model_id");
  ds.num_layers = Field<int>(h, "num_layers");
  ds.ffn_dim = Field<int>(h, "ffn_dim");
  ds.val_fraction = Field<double>(h, "val_fraction");
  ds.seed = Field<std::uint64_t>(h, "seed");
  ds.aggregation = AggregationFromName(Field<std::string>(h, "aggregation"));
  const auto num_records = Field<std::size_t>(h, "num_records");
  if (ds.num_layers < 1 || ds.ffn_dim < 1) throw SchemaError("bad dimensions");
  const std::size_t neurons = static_cast<std::size_t>(ds.num_neurons());
  ds.stats.resize(neurons);
  ds.raw.assign(neurons, {});
  std::vector<bool> have_stats(neurons, false);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Json& j = lines[li];
    const auto type = Field<std::string>(j, "type");
    if (type == "stats") {
      const NeuronId id{Field<int>(j, "layer"), Field<int>(j, "index")};
      try {
        ds.CheckNeuron(id);
      } catch (const ModelError& e) {
        throw SchemaError(e.what());
      }
      ds.stats[ds.Slot(id)] = {Field<double>(j, "min"), Field<double>(j, "max")};
      have_stats[ds.Slot(id)] = true;
    } else if (type == "record") {
      MinedRecord r{Field<std::string>(j, "id"), ProteinSequence("A"),
                    internal::FeaturesFromJson(Field<Json>(j, "features")),
                    SplitFromName(Field<std::string>(j, "split"))};
      try {
        r.sequence = ProteinSequence(Field<std::string>(j, "sequence"));
      } catch (const SequenceError& e) {
        throw SchemaError("record '" + r.id + "': " + e.what());
      }
      const auto raw = Field<std::vector<double>>(j, "phi_raw");
      if (raw.size() != neurons) {
        throw SchemaError("record '" + r.id + "' has " + std::to_string(raw.size()) +
                          " activations, expected " + std::to_string(neurons));
      }
      for (std::size_t s = 0; s < neurons; ++s) ds.raw[s].push_back(raw[s]);
      ds.records.push_back(std::move(r));
    } else {
      throw SchemaError("unknown line type '" + type + "'");
    }
  }
  if (ds.records.size() != num_records) {
    throw SchemaError("dataset declares " + std::to_string(num_records) +
                      " records but holds " + std::to_string(ds.records.size()));
  }
  if (std::find(have_stats.begin(), have_stats.end(), false) != have_stats.end()) {
    throw SchemaError("dataset is missing normalization stats");
  }
  return ds;
}

std::string SerializeExemplars(const ExemplarStore& store) {
  std::vector<Json> lines;
  Json header;
  header["schema"] = kExemplarSchema;
  header["version"] = kExemplarSchemaVersion;
  header["model_id"] = store.model_id;
  header["k"] = store.k;
  header["degraded"] = store.degraded;
  header["num_layers"] = store.num_layers;
  header["ffn_dim"] = store.ffn_dim;
  lines.push_back(std::move(header));
  for (const NeuronExemplars& ne : store.neurons) {
    Json j;
    j["layer"] = ne.neuron.layer;
    j["index"] = ne.neuron.index;
    j["dead"] = ne.dead;
    j["top"] = Json::array();
    for (const Exemplar& e : ne.top) j["top"].push_back(ExemplarToJson(e));
    j["bottom"] = Json::array();
    for (const Exemplar& e : ne.bottom) j["bottom"].push_back(ExemplarToJson(e));
    lines.push_back(std::move(j));
  }
  return DumpLines(lines);
}

ExemplarStore ParseExemplars(std::string_view text) {
  const std::vector<Json> lines = internal::ParseJsonLines(text);
  if (lines.empty()) throw SchemaError("exemplar file is empty");
  internal::CheckHeader(lines[0], kExemplarSchema, kExemplarSchemaVersion);
  ExemplarStore store;
  const Json& h = lines[0];
  store.model_id = Field<std::string>(h, "model_id");
  store.k = Field<int>(h, "k");
  store.degraded = Field<bool>(h, "degraded");
  store.num_layers = Field<int>(h, "num_layers");
  store.ffn_dim = Field<int>(h, "ffn_dim");
  const std::size_t expected =
      static_cast<std::size_t>(store.num_layers) * store.ffn_dim;
  if (lines.size() - 1 != expected) {
    throw SchemaError("exemplar file holds " + std::to_string(lines.size() - 1) +
                      " neurons, expected " + std::to_string(expected));
  }
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Json& j = lines[li];
    NeuronExemplars ne;
    ne.neuron = {Field<int>(j, "layer"), Field<int>(j, "index")};
    const std::size_t want = li - 1;
    if (static_cast<std::size_t>(ne.neuron.layer) * store.ffn_dim +
            ne.neuron.index != want) {
      throw SchemaError("exemplar lines out of (layer, index) order");
    }
    ne.dead = Field<bool>(j, "dead");
    for (const Json& e : Field<Json>(j, "top")) ne.top.push_back(ExemplarFromJson(e));
    for (const Json& e : Field<Json>(j, "bottom")) {
      ne.bottom.push_back(ExemplarFromJson(e));
    }
    store.neurons.push_back(std::move(ne));
  }
  return store;
}

void WriteDataset(const MinedDataset& dataset, const std::filesystem::path& path) {
  internal::WriteFileAtomic(path, SerializeDataset(dataset));
}

MinedDataset ReadDataset(const std::filesystem::path& path) {
  return ParseDataset(internal::ReadFile(path));
}

void WriteExemplars(const ExemplarStore& store, const std::filesystem::path& path) {
  internal::WriteFileAtomic(path, SerializeExemplars(store));
}

ExemplarStore ReadExemplars(const std::filesystem::path& path) {
  return ParseExemplars(internal::ReadFile(path));
}

}  // namespace plmneuron
