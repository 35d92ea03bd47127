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

#ifndef PLMNEURON_DESCRIPTORS_H_
#define PLMNEURON_DESCRIPTORS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plmneuron/sequence.h"

namespace plmneuron {

// Quantitative descriptors plus opaque qualitative annotations for one
// sequence.
struct FeatureVector {
  double length = 0;
  double molecular_weight = 0;
  double isoelectric_point = 0;
  double aromaticity = 0;
  double instability_index = 0;
  double gravy = 0;
  double helix_fraction = 0;
  double turn_fraction = 0;
  double sheet_fraction = 0;
  double charge_ph7 = 0;
  double boman_index = 0;
  double aliphatic_index = 0;
  double hydrophobic_moment = 0;
  std::vector<std::string> annotations;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Quantitative fields in their fixed serialization and tie-break order.
enum class Feature {
  kLength,
  kMolecularWeight,
  kIsoelectricPoint,
  kAromaticity,
  kInstabilityIndex,
  kGravy,
  kHelixFraction,
  kTurnFraction,
  kSheetFraction,
  kChargePh7,
  kBomanIndex,
  kAliphaticIndex,
  kHydrophobicMoment,
};
inline constexpr std::size_t kNumFeatures = 13;

const std::array<Feature, kNumFeatures>& AllFeatures();

// snake_case field name, e.g. "molecular_weight".
std::string_view FeatureName(Feature f);
// Human phrase used in hypotheses, e.g. "molecular weight".
std::string_view FeatureDisplayName(Feature f);
std::optional<Feature> FeatureFromName(std::string_view name);

double GetFeature(const FeatureVector& fv, Feature f);
void SetFeature(FeatureVector& fv, Feature f, double value);

// Average mass in Daltons: sum of free amino-acid masses minus one water
// (18.0153) per peptide bond.
double MolecularWeight(const ProteinSequence& seq);

// Mean Kyte-Doolittle hydropathy.
double Gravy(const ProteinSequence& seq);

// Fraction of F, W and Y.
double Aromaticity(const ProteinSequence& seq);

// Guruprasad instability index, (10 / L) * sum of dipeptide weights.
// Throws DescriptorError for sequences shorter than 2.
double InstabilityIndex(const ProteinSequence& seq);

// Henderson-Hasselbalch net charge. Throws DescriptorError unless
// 0 < ph < 14.
double NetCharge(const ProteinSequence& seq, double ph);

// Bisection on [0, 14] until the bracket is narrower than `tolerance`.
// Returns the bracket midpoint.
double IsoelectricPoint(const ProteinSequence& seq, double tolerance = 0.01);

struct SecondaryFractions {
  double helix = 0;
  double turn = 0;
  double sheet = 0;
};

// Propensity-set fractions: helix {V,I,Y,F,W,L}, turn {N,P,G,S},
// sheet {E,M,A,L}. L counts toward both helix and sheet.
SecondaryFractions SecondaryStructureFractions(const ProteinSequence& seq);

// Negative mean of the Boman solubility scale (kcal/mol).
double BomanIndex(const ProteinSequence& seq);

// Ikai aliphatic index: X_A + 2.9 X_V + 3.9 (X_I + X_L), mole percents.
double AliphaticIndex(const ProteinSequence& seq);

// Maximum Eisenberg hydrophobic moment over sliding windows, each divided by
// the window length. Sequences shorter than `window` use a single window of
// the full length.
double HydrophobicMoment(const ProteinSequence& seq, std::size_t window = 11,
                         double angle_degrees = 100.0);

// All descriptors at pH 7 with default moment parameters.
FeatureVector Featurize(const ProteinSequence& seq,
                        std::vector<std::string> annotations = {});

// Published per-residue scales, indexed by residue index (kAlphabet order).
namespace scales {
const std::array<double, kNumResidues>& KyteDoolittle();
const std::array<double, kNumResidues>& FreeAminoAcidMass();
const std::array<double, kNumResidues>& Boman();
const std::array<double, kNumResidues>& Eisenberg();
// Dipeptide instability weight for the ordered pair (first, second).
double Diwv(int first, int second);
// Partial charge of one residue's side chain (0 for non-ionizable residues).
double SideChainCharge(int residue, double ph);
inline constexpr double kWaterMass = 18.0153;
}  // namespace scales

}  // namespace plmneuron

#endif  // PLMNEURON_DESCRIPTORS_H_
