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

#include "plmneuron/analysis.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "plmneuron/errors.h"
#include "plmneuron/stats.h"

namespace plmneuron {

int SextileOf(int layer, int total_layers) {
  if (total_layers < 6) {
    throw Error("sextiles need at least 6 layers, got " + std::to_string(total_layers));
  }
  if (layer < 0 || layer >= total_layers) {
    throw Error("layer " + std::to_string(layer) + " outside [0, " +
                std::to_string(total_layers) + ")");
  }
  return 6 * layer / total_layers + 1;
}

const CategoryMap& DefaultCategories() {
  static const CategoryMap kDefault = {
      {"functional", {"repair", "recombination", "replication"}},
      {"structural", {"sheet", "alpha", "beta"}},
      {"sequence-derived", {"charge", "hydrophobicity", "instability"}},
  };
  return kDefault;
}

std::vector<SextileHistogram> CategoryDistribution(const LabelCatalog& catalog,
                                                   const CategoryMap& categories,
                                                   std::string_view model_id) {
  if (catalog.empty()) throw Error("catalog has no labels");
  std::string id(model_id);
  if (id.empty()) {
    if (catalog.models().size() != 1) {
      throw SchemaError("catalog holds several models; pass a model id");
    }
    id = catalog.models().begin()->first;
  }
  const auto m = catalog.models().find(id);
  if (m == catalog.models().end()) throw SchemaError("unknown model id '" + id + "'");
  const int layers = m->second.num_layers;

  std::vector<SextileHistogram> out;
  for (const auto& [name, keywords] : categories) {
    std::set<NeuronId> matched;
    for (const std::string& kw : keywords) {
      for (const NeuronId& n : Search(catalog, kw, id)) matched.insert(n);
    }
    SextileHistogram h;
    h.category = name;
    for (const NeuronId& n : matched) ++h.counts[SextileOf(n.layer, layers) - 1];
    const int total = static_cast<int>(matched.size());
    h.empty = total == 0;
    for (int s = 0; s < 6 && total > 0; ++s) {
      h.frequencies[s] = static_cast<double>(h.counts[s]) / total;
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::string SextileCsv(std::span<const SextileHistogram> histograms) {
  std::string out = "category,s1,s2,s3,s4,s5,s6,f1,f2,f3,f4,f5,f6\n";
  char buf[32];
  for (const SextileHistogram& h : histograms) {
    out += h.category;
    for (int c : h.counts) out += "," + std::to_string(c);
    for (double f : h.frequencies) {
      std::snprintf(buf, sizeof buf, "%.6f", f);
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

namespace {

int ParseCount(std::string_view s, std::string_view whole) {
  if (s.empty() || s.size() > 6) throw MotifSyntaxError("bad gap in '" + std::string(whole) + "'");
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw MotifSyntaxError("bad gap length '" + std::string(s) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

std::string ResidueSet(std::string_view letters, std::string_view token) {
  std::string out;
  for (char c : letters) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (!ResidueIndex(u)) {
      throw MotifSyntaxError("'" + std::string(1, c) + "' in '" + std::string(token) +
                             "' is not a residue");
    }
    if (out.find(u) == std::string::npos) out += u;
  }
  if (out.empty()) throw MotifSyntaxError("empty residue set '" + std::string(token) + "'");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

MotifPattern ParseMotif(std::string_view text) {
  MotifPattern pattern;
  bool pending_gap = false;
  std::size_t pos = 0;
  while (true) {
    std::size_t dash = text.find('-', pos);
    const std::string_view tok =
        text.substr(pos, dash == std::string_view::npos ? std::string_view::npos : dash - pos);
    if (tok.empty()) throw MotifSyntaxError("empty element in '" + std::string(text) + "'");
    if (tok[0] == 'x' || tok[0] == 'X') {
      int lo = 1, hi = 1;
      if (tok.size() > 1) {
        if (tok[1] != '(' || tok.back() != ')') {
          throw MotifSyntaxError("bad gap '" + std::string(tok) + "'");
        }
        const std::string_view inner = tok.substr(2, tok.size() - 3);
        const auto comma = inner.find(',');
        if (comma == std::string_view::npos) {
          lo = hi = ParseCount(inner, tok);
        } else {
          lo = ParseCount(inner.substr(0, comma), tok);
          hi = ParseCount(inner.substr(comma + 1), tok);
        }
        if (lo > hi) {
          throw MotifSyntaxError("gap '" + std::string(tok) + "' has min > max");
        }
      }
      if (pattern.elements.empty()) {
        throw MotifSyntaxError("pattern cannot start with a gap");
      }
      pattern.elements.back().gap_min += lo;
      pattern.elements.back().gap_max += hi;
      pending_gap = true;
    } else if (tok[0] == '[') {
      if (tok.size() < 3 || tok.back() != ']') {
        throw MotifSyntaxError("bad residue set '" + std::string(tok) + "'");
      }
      pattern.elements.push_back({ResidueSet(tok.substr(1, tok.size() - 2), tok), 0, 0});
      pending_gap = false;
    } else {
      if (tok.size() != 1) throw MotifSyntaxError("bad element '" + std::string(tok) + "'");
      pattern.elements.push_back({ResidueSet(tok, tok), 0, 0});
      pending_gap = false;
    }
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  if (pending_gap) throw MotifSyntaxError("pattern cannot end with a gap");
  return pattern;
}

std::vector<MotifMatch> MotifScan(const ProteinSequence& seq,
                                  const MotifPattern& pattern) {
  std::vector<MotifMatch> out;
  if (pattern.elements.empty()) return out;
  const std::string& s = seq.str();
  const std::size_t n = s.size();
  std::vector<char> reach(n + 1), next(n + 1);
  std::size_t start = 0;
  while (start < n) {
    // reach[p]: element k can be placed at position p.
    std::fill(reach.begin(), reach.end(), 0);
    reach[start] = 1;
    std::size_t best_end = 0;
    bool found = false;
    for (std::size_t k = 0; k < pattern.elements.size(); ++k) {
      const MotifElement& e = pattern.elements[k];
      std::fill(next.begin(), next.end(), 0);
      bool any = false;
      for (std::size_t p = start; p < n; ++p) {
        if (!reach[p] || e.residues.find(s[p]) == std::string::npos) continue;
        if (k + 1 == pattern.elements.size()) {
          if (!found || p + 1 < best_end) best_end = p + 1;
          found = true;
          continue;
        }
        for (int g = e.gap_min; g <= e.gap_max; ++g) {
          const std::size_t q = p + 1 + g;
          if (q < n) {
            next[q] = 1;
            any = true;
          }
        }
      }
      if (k + 1 < pattern.elements.size()) {
        if (!any) break;
        reach.swap(next);
      }
    }
    if (found) {
      out.push_back({start, best_end});
      start = best_end;
    } else {
      ++start;
    }
  }
  return out;
}

std::vector<FeatureDistribution> DistributionReport(
    std::span<const FeatureVector> dataset, const FeatureVector& generated, int bins) {
  if (dataset.empty()) throw Error("distribution report needs a dataset");
  if (bins < 1) throw Error("bins must be >= 1");
  std::vector<FeatureDistribution> out;
  for (Feature f : AllFeatures()) {
    std::vector<double> values;
    for (const FeatureVector& fv : dataset) values.push_back(GetFeature(fv, f));
    std::sort(values.begin(), values.end());
    FeatureDistribution d;
    d.feature = f;
    d.min = values.front();
    d.max = values.back();
    d.counts.assign(bins, 0);
    const double width = (d.max - d.min) / bins;
    for (double v : values) {
      int b = width > 0.0 ? static_cast<int>(std::floor((v - d.min) / width)) : 0;
      ++d.counts[std::clamp(b, 0, bins - 1)];
    }
    d.generated = GetFeature(generated, f);
    d.percentile = EmpiricalQuantile(values, d.generated);
    out.push_back(std::move(d));
  }
  return out;
}

std::string DistributionCsv(std::span<const FeatureDistribution> report) {
  std::string out = "feature,bin,lower,upper,count\n";
  char buf[128];
  for (const FeatureDistribution& d : report) {
    const int bins = static_cast<int>(d.counts.size());
    const double width = (d.max - d.min) / bins;
    for (int b = 0; b < bins; ++b) {
      std::snprintf(buf, sizeof buf, ",%d,%.6g,%.6g,%d\n", b, d.min + b * width,
                    d.min + (b + 1) * width, d.counts[b]);
      out += std::string(FeatureName(d.feature)) + buf;
    }
  }
  out += "\nfeature,generated,percentile\n";
  for (const FeatureDistribution& d : report) {
    std::snprintf(buf, sizeof buf, ",%.6g,%.6f\n", d.generated, d.percentile);
    out += std::string(FeatureName(d.feature)) + buf;
  }
  return out;
}

}  // namespace plmneuron
