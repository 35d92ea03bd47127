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

#ifndef PLMNEURON_ANALYSIS_H_
#define PLMNEURON_ANALYSIS_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plmneuron/catalog.h"
#include "plmneuron/descriptors.h"
#include "plmneuron/sequence.h"

namespace plmneuron {

// floor(6 * layer / total_layers) + 1. Throws Error if total_layers < 6 or
// layer is out of range.
int SextileOf(int layer, int total_layers);

struct SextileHistogram {
  std::string category;
  std::array<int, 6> counts{};
  std::array<double, 6> frequencies{};  // all zero when nothing matched
  bool empty = true;
};

using CategoryMap = std::vector<std::pair<std::string, std::vector<std::string>>>;

// functional: repair, recombination, replication; structural: sheet, alpha,
// beta; sequence-derived: charge, hydrophobicity, instability.
const CategoryMap& DefaultCategories();

// Counts labels of `model_id` matching any keyword of each category (search
// semantics; a label counts once per category), binned by layer sextile.
// Empty `model_id` is allowed when the catalog holds exactly one model.
// Throws SchemaError for an unknown model id and Error for an empty catalog.
std::vector<SextileHistogram> CategoryDistribution(
    const LabelCatalog& catalog, const CategoryMap& categories = DefaultCategories(),
    std::string_view model_id = {});

// Rows: category, s1..s6 counts, then f1..f6 frequencies.
std::string SextileCsv(std::span<const SextileHistogram> histograms);

// One anchor position followed by a gap before the next anchor. The last
// element's gap is (0, 0).
struct MotifElement {
  std::string residues;  // allowed residues, sorted, non-empty
  int gap_min = 0;
  int gap_max = 0;

  friend bool operator==(const MotifElement&, const MotifElement&) = default;
};

struct MotifPattern {
  std::vector<MotifElement> elements;
  std::size_t anchors() const { return elements.size(); }
  std::size_t gaps() const { return elements.empty() ? 0 : elements.size() - 1; }

  friend bool operator==(const MotifPattern&, const MotifPattern&) = default;
};

// Grammar: tokens joined by '-'. A token is a residue letter, a set such as
// [ST], or a gap x(n) / x(min,max). Adjacent gaps are summed. Throws
// MotifSyntaxError for empty tokens, unknown residues, leading or trailing
// gaps, or min > max.
MotifPattern ParseMotif(std::string_view text);

struct MotifMatch {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  friend bool operator==(const MotifMatch&, const MotifMatch&) = default;
};

// Leftmost, non-overlapping matches; at each start the shortest match is
// taken and scanning resumes at its end.
std::vector<MotifMatch> MotifScan(const ProteinSequence& seq,
                                  const MotifPattern& pattern);

struct FeatureDistribution {
  Feature feature;
  double min = 0.0;
  double max = 0.0;
  std::vector<int> counts;  // equal-width bins over [min, max]
  double generated = 0.0;
  double percentile = 0.0;  // mid-rank empirical quantile
};

// Per-feature histogram of `dataset` and the position of `generated` in it.
// Throws Error for an empty dataset or bins < 1.
std::vector<FeatureDistribution> DistributionReport(
    std::span<const FeatureVector> dataset, const FeatureVector& generated,
    int bins = 20);

// Rows: feature, bin, lower, upper, count; then a percentile table.
std::string DistributionCsv(std::span<const FeatureDistribution> report);

}  // namespace plmneuron

#endif  // PLMNEURON_ANALYSIS_H_
