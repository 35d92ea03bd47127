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

#include "plmneuron/descriptors.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plmneuron/errors.h"

namespace plmneuron {
namespace scales {

// All tables below are in kAlphabet order: A C D E F G H I K L M N P Q R S T
// V W Y.

// Kyte & Doolittle (1982) hydropathy.
const std::array<double, kNumResidues>& KyteDoolittle() {
  static constexpr std::array<double, kNumResidues> kTable = {
      1.8, 2.5, -3.5, -3.5, 2.8, -0.4, -3.2, 4.5,  -3.9, 3.8,
      1.9, -3.5, -1.6, -3.5, -4.5, -0.8, -0.7, 4.2, -0.9, -1.3};
  return kTable;
}

// Average masses of the free amino acids (IUPAC; same values as Biopython's
// protein_weights).
const std::array<double, kNumResidues>& FreeAminoAcidMass() {
  static constexpr std::array<double, kNumResidues> kTable = {
      89.0932,  121.1582, 133.1027, 147.1293, 165.1891,
      75.0666,  155.1546, 131.1729, 146.1876, 131.1729,
      149.2113, 132.1179, 115.1305, 146.1445, 174.201,
      105.0926, 119.1192, 117.1463, 204.2252, 181.1885};
  return kTable;
}

// Boman (2003) solubility scale, cyclohexane-to-water transfer free
// energies after Radzicka & Wolfenden (1988). Proline has no published value
// and is 0, as in modlAMP.
const std::array<double, kNumResidues>& Boman() {
  static constexpr std::array<double, kNumResidues> kTable = {
      1.81, 1.28,  -8.72, -6.81, 2.98,  0.94,  -4.66, 4.92, -5.55, 4.92,
      2.35, -6.64, 0.0,   -5.54, -14.92, -3.40, -2.57, 4.04, 2.33,  -0.14};
  return kTable;
}

// Eisenberg consensus hydrophobicity, as tabulated by modlAMP.
const std::array<double, kNumResidues>& Eisenberg() {
  static constexpr std::array<double, kNumResidues> kTable = {
      0.62, 0.29,  -0.9, -0.74, 1.2,   0.48,  -0.4,  1.4, -1.5, 1.1,
      0.64, -0.78, 0.12, -0.85, -2.5, -0.18, -0.05, 1.1, 0.81, 0.26};
  return kTable;
}

// Guruprasad, Reddy & Pandit (1990) dipeptide instability weight values.
// Row = first residue, column = second residue.
double Diwv(int first, int second) {
  static constexpr double kTable[kNumResidues][kNumResidues] = {
    /* A */ {1, 44.94, -7.49, 1, 1, 1, -7.49, 1, 1, 1, 1, 1, 20.26, 1, 1, 1, 1, 1, 1, 1},
    /* C */ {1, 1, 20.26, 1, 1, 1, 33.6, 1, 1, 20.26, 33.6, 1, 20.26, -6.54, 1, 1, 33.6, -6.54, 24.68, 1},
    /* D */ {1, 1, 1, 1, -6.54, 1, 1, 1, -7.49, 1, 1, 1, 1, 1, -6.54, 20.26, -14.03, 1, 1, 1},
    /* E */ {1, 44.94, 20.26, 33.6, 1, 1, -6.54, 20.26, 1, 1, 1, 1, 20.26, 20.26, 1, 20.26, 1, 1, -14.03, 1},
    /* F */ {1, 1, 13.34, 1, 1, 1, 1, 1, -14.03, 1, 1, 1, 20.26, 1, 1, 1, 1, 1, 1, 33.601},
    /* G */ {-7.49, 1, 1, -6.54, 1, 13.34, 1, -7.49, -7.49, 1, 1, -7.49, 1, 1, 1, 1, -7.49, 1, 13.34, -7.49},
    /* H */ {1, 1, 1, 1, -9.37, -9.37, 1, 44.94, 24.68, 1, 1, 24.68, -1.88, 1, 1, 1, -6.54, 1, -1.88, 44.94},
    /* I */ {1, 1, 1, 44.94, 1, 1, 13.34, 1, -7.49, 20.26, 1, 1, -1.88, 1, 1, 1, 1, -7.49, 1, 1},
    /* K */ {1, 1, 1, 1, 1, -7.49, 1, -7.49, 1, -7.49, 33.6, 1, -6.54, 24.64, 33.6, 1, 1, -7.49, 1, 1},
    /* L */ {1, 1, 1, 1, 1, 1, 1, 1, -7.49, 1, 1, 1, 20.26, 33.6, 20.26, 1, 1, 1, 24.68, 1},
    /* M */ {13.34, 1, 1, 1, 1, 1, 58.28, 1, 1, 1, -1.88, 1, 44.94, -6.54, -6.54, 44.94, -1.88, 1, 1, 24.68},
    /* N */ {1, -1.88, 1, 1, -14.03, -14.03, 1, 44.94, 24.68, 1, 1, 1, -1.88, -6.54, 1, 1, -7.49, 1, -9.37, 1},
    /* P */ {20.26, -6.54, -6.54, 18.38, 20.26, 1, 1, 1, 1, 1, -6.54, 1, 20.26, 20.26, -6.54, 20.26, 1, 20.26, -1.88, 1},
    /* Q */ {1, -6.54, 20.26, 20.26, -6.54, 1, 1, 1, 1, 1, 1, 1, 20.26, 20.26, 1, 44.94, 1, -6.54, 1, -6.54},
    /* R */ {1, 1, 1, 1, 1, -7.49, 20.26, 1, 1, 1, 1, 13.34, 20.26, 20.26, 58.28, 44.94, 1, 1, 58.28, -6.54},
    /* S */ {1, 33.6, 1, 20.26, 1, 1, 1, 1, 1, 1, 1, 1, 44.94, 20.26, 20.26, 20.26, 1, 1, 1, 1},
    /* T */ {1, 1, 1, 20.26, 13.34, -7.49, 1, 1, 1, 1, 1, -14.03, 1, -6.54, 1, 1, 1, 1, -14.03, 1},
    /* V */ {1, 1, -14.03, 1, 1, -7.49, 1, 1, -1.88, 1, 1, 1, 20.26, 1, 1, 1, -7.49, 1, 1, -6.54},
    /* W */ {-14.03, 1, 1, 1, 1, -9.37, 24.68, 1, 1, 13.34, 24.68, 13.34, 1, 1, 1, 1, -14.03, -7.49, 1, 1},
    /* Y */ {24.68, 1, 24.68, -6.54, 1, -7.49, 13.34, 1, 1, 1, 44.94, 1, 13.34, 1, -15.91, 1, -7.49, 1, -9.37, 13.34},
  };
  return kTable[first][second];
}

}  // namespace scales

namespace {

constexpr std::array<Feature, kNumFeatures> kAllFeatures = {
    Feature::kLength,          Feature::kMolecularWeight,
    Feature::kIsoelectricPoint, Feature::kAromaticity,
    Feature::kInstabilityIndex, Feature::kGravy,
    Feature::kHelixFraction,   Feature::kTurnFraction,
    Feature::kSheetFraction,   Feature::kChargePh7,
    Feature::kBomanIndex,      Feature::kAliphaticIndex,
    Feature::kHydrophobicMoment};

struct FeatureInfo {
  std::string_view name;
  std::string_view display;
  double FeatureVector::*field;
};

constexpr FeatureInfo kFeatureInfo[kNumFeatures] = {
    {"length", "sequence length", &FeatureVector::length},
    {"molecular_weight", "molecular weight", &FeatureVector::molecular_weight},
    {"isoelectric_point", "isoelectric point",
     &FeatureVector::isoelectric_point},
    {"aromaticity", "aromaticity", &FeatureVector::aromaticity},
    {"instability_index", "instability index",
     &FeatureVector::instability_index},
    {"gravy", "gravy", &FeatureVector::gravy},
    {"helix_fraction", "helix fraction", &FeatureVector::helix_fraction},
    {"turn_fraction", "turn fraction", &FeatureVector::turn_fraction},
    {"sheet_fraction", "sheet fraction", &FeatureVector::sheet_fraction},
    {"charge_ph7", "charge at pH 7", &FeatureVector::charge_ph7},
    {"boman_index", "boman index", &FeatureVector::boman_index},
    {"aliphatic_index", "aliphatic index", &FeatureVector::aliphatic_index},
    {"hydrophobic_moment", "hydrophobic moment",
     &FeatureVector::hydrophobic_moment},
};

int Index(char residue) { return *ResidueIndex(residue); }

// pKa values from the CRC Handbook (96th ed.), as used by modlAMP. One value
// per ionizable group; termini are not residue-specific.
constexpr double kPkNTerm = 9.38;
constexpr double kPkCTerm = 2.15;
constexpr double kPkLys = 10.67;
constexpr double kPkArg = 12.10;
constexpr double kPkHis = 6.04;
constexpr double kPkAsp = 3.71;
constexpr double kPkGlu = 4.15;
constexpr double kPkCys = 8.14;
constexpr double kPkTyr = 10.10;

struct ChargeCounts {
  double k = 0, r = 0, h = 0, d = 0, e = 0, c = 0, y = 0;
};

ChargeCounts CountCharged(const ProteinSequence& seq) {
  ChargeCounts n;
  for (char a : seq.str()) {
    switch (a) {
      case 'K': n.k += 1; break;
      case 'R': n.r += 1; break;
      case 'H': n.h += 1; break;
      case 'D': n.d += 1; break;
      case 'E': n.e += 1; break;
      case 'C': n.c += 1; break;
      case 'Y': n.y += 1; break;
      default: break;
    }
  }
  return n;
}

double Positive(double pk, double ph) {
  const double ratio = std::pow(10.0, pk - ph);
  return ratio / (ratio + 1.0);
}

double Negative(double pk, double ph) {
  const double ratio = std::pow(10.0, ph - pk);
  return ratio / (ratio + 1.0);
}

double ChargeFromCounts(const ChargeCounts& n, double ph) {
  const double pos = Positive(kPkNTerm, ph) + n.k * Positive(kPkLys, ph) +
                     n.r * Positive(kPkArg, ph) + n.h * Positive(kPkHis, ph);
  const double neg = Negative(kPkCTerm, ph) + n.d * Negative(kPkAsp, ph) +
                     n.e * Negative(kPkGlu, ph) + n.c * Negative(kPkCys, ph) +
                     n.y * Negative(kPkTyr, ph);
  return pos - neg;
}

double Fraction(const ProteinSequence& seq, std::string_view letters) {
  std::size_t count = 0;
  for (char a : seq.str()) {
    if (letters.find(a) != std::string_view::npos) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(seq.size());
}

}  // namespace

const std::array<Feature, kNumFeatures>& AllFeatures() { return kAllFeatures; }

std::string_view FeatureName(Feature f) {
  return kFeatureInfo[static_cast<int>(f)].name;
}

std::string_view FeatureDisplayName(Feature f) {
  return kFeatureInfo[static_cast<int>(f)].display;
}

std::optional<Feature> FeatureFromName(std::string_view name) {
  for (Feature f : kAllFeatures) {
    if (FeatureName(f) == name) return f;
  }
  return std::nullopt;
}

double GetFeature(const FeatureVector& fv, Feature f) {
  return fv.*(kFeatureInfo[static_cast<int>(f)].field);
}

void SetFeature(FeatureVector& fv, Feature f, double value) {
  fv.*(kFeatureInfo[static_cast<int>(f)].field) = value;
}

double MolecularWeight(const ProteinSequence& seq) {
  const auto& mass = scales::FreeAminoAcidMass();
  double total = 0.0;
  for (char a : seq.str()) total += mass[Index(a)];
  return total - static_cast<double>(seq.size() - 1) * scales::kWaterMass;
}

double Gravy(const ProteinSequence& seq) {
  const auto& kd = scales::KyteDoolittle();
  double total = 0.0;
  for (char a : seq.str()) total += kd[Index(a)];
  return total / static_cast<double>(seq.size());
}

double Aromaticity(const ProteinSequence& seq) { return Fraction(seq, "FWY"); }

double InstabilityIndex(const ProteinSequence& seq) {
  if (seq.size() < 2) {
    throw DescriptorError("instability index needs at least 2 residues");
  }
  double score = 0.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    score += scales::Diwv(Index(seq[i]), Index(seq[i + 1]));
  }
  return (10.0 / static_cast<double>(seq.size())) * score;
}

double NetCharge(const ProteinSequence& seq, double ph) {
  if (!(ph > 0.0 && ph < 14.0)) {
    throw DescriptorError("pH must lie in (0, 14), got " + std::to_string(ph));
  }
  return ChargeFromCounts(CountCharged(seq), ph);
}

double IsoelectricPoint(const ProteinSequence& seq, double tolerance) {
  const ChargeCounts counts = CountCharged(seq);
  double lo = 0.0;
  double hi = 14.0;
  // Charge is strictly decreasing in pH: positive below the root.
  for (int iter = 0; iter < 50 && hi - lo > tolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ChargeFromCounts(counts, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SecondaryFractions SecondaryStructureFractions(const ProteinSequence& seq) {
  return {Fraction(seq, "VIYFWL"), Fraction(seq, "NPGS"),
          Fraction(seq, "EMAL")};
}

double BomanIndex(const ProteinSequence& seq) {
  const auto& scale = scales::Boman();
  double total = 0.0;
  for (char a : seq.str()) total += scale[Index(a)];
  return -(total / static_cast<double>(seq.size()));
}

double AliphaticIndex(const ProteinSequence& seq) {
  const double n = static_cast<double>(seq.size());
  auto percent = [&](char residue) {
    std::size_t count = 0;
    for (char a : seq.str()) count += (a == residue);
    return (static_cast<double>(count) / n) * 100.0;
  };
  return percent('A') + 2.9 * percent('V') +
         3.9 * (percent('I') + percent('L'));
}

double HydrophobicMoment(const ProteinSequence& seq, std::size_t window,
                         double angle_degrees) {
  const auto& scale = scales::Eisenberg();
  const std::size_t w = std::min(window, seq.size());
  const double step = angle_degrees * (std::numbers::pi / 180.0);
  double best = 0.0;
  for (std::size_t start = 0; start + w <= seq.size(); ++start) {
    double vcos = 0.0;
    double vsin = 0.0;
    for (std::size_t k = 0; k < w; ++k) {
      const double h = scale[Index(seq[start + k])];
      const double rad = step * static_cast<double>(k);
      vcos += h * std::cos(rad);
      vsin += h * std::sin(rad);
    }
    const double moment =
        std::sqrt(vsin * vsin + vcos * vcos) / static_cast<double>(w);
    best = std::max(best, moment);
  }
  return best;
}

FeatureVector Featurize(const ProteinSequence& seq,
                        std::vector<std::string> annotations) {
  FeatureVector fv;
  fv.length = static_cast<double>(seq.size());
  fv.molecular_weight = MolecularWeight(seq);
  fv.isoelectric_point = IsoelectricPoint(seq);
  fv.aromaticity = Aromaticity(seq);
  fv.instability_index = InstabilityIndex(seq);
  fv.gravy = Gravy(seq);
  const SecondaryFractions ss = SecondaryStructureFractions(seq);
  fv.helix_fraction = ss.helix;
  fv.turn_fraction = ss.turn;
  fv.sheet_fraction = ss.sheet;
  fv.charge_ph7 = NetCharge(seq, 7.0);
  fv.boman_index = BomanIndex(seq);
  fv.aliphatic_index = AliphaticIndex(seq);
  fv.hydrophobic_moment = HydrophobicMoment(seq);
  fv.annotations = std::move(annotations);
  return fv;
}

namespace scales {

double SideChainCharge(int residue, double ph) {
  switch (kAlphabet[residue]) {
    case 'K': return Positive(kPkLys, ph);
    case 'R': return Positive(kPkArg, ph);
    case 'H': return Positive(kPkHis, ph);
    case 'D': return -Negative(kPkAsp, ph);
    case 'E': return -Negative(kPkGlu, ph);
    case 'C': return -Negative(kPkCys, ph);
    case 'Y': return -Negative(kPkTyr, ph);
    default: return 0.0;
  }
}

}  // namespace scales

}  // namespace plmneuron
