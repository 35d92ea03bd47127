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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "plmneuron/errors.h"
#include "plmneuron/random.h"
#include "test_util.h"

namespace plmneuron {
namespace {

ProteinSequence P(const char* s) { return ProteinSequence(s); }

TEST(MolecularWeightTest, Examples) {
  EXPECT_NEAR(MolecularWeight(P("G")), 75.07, 0.01);
  EXPECT_NEAR(MolecularWeight(P("GG")), 132.12, 0.01);
}

TEST(MolecularWeightTest, CondensationAdditivity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::string a = RandomSequence(1 + seed % 40, seed).str();
    const std::string b = RandomSequence(1 + seed % 23, seed + 1000).str();
    EXPECT_NEAR(MolecularWeight(ProteinSequence(a + b)),
                MolecularWeight(ProteinSequence(a)) + MolecularWeight(ProteinSequence(b)) -
                    scales::kWaterMass,
                1e-9);
  }
}

TEST(GravyTest, Examples) {
  EXPECT_DOUBLE_EQ(Gravy(P("AAAA")), 1.8);
  EXPECT_DOUBLE_EQ(Gravy(P("AR")), -1.35);
  EXPECT_DOUBLE_EQ(Gravy(P("I")), 4.5);
  EXPECT_DOUBLE_EQ(Gravy(P("R")), -4.5);
}

TEST(AromaticityTest, Examples) {
  EXPECT_DOUBLE_EQ(Aromaticity(P("FWY")), 1.0);
  EXPECT_DOUBLE_EQ(Aromaticity(P("AAA")), 0.0);
  EXPECT_DOUBLE_EQ(Aromaticity(P("FWYA")), 0.75);
}

TEST(InstabilityTest, Examples) {
  EXPECT_NEAR(InstabilityIndex(P("GG")), 66.7, 1e-9);
  EXPECT_THROW(InstabilityIndex(P("G")), DescriptorError);
  for (int r = 0; r < kNumResidues; ++r) {
    const std::string s(2, kAlphabet[r]);
    EXPECT_NEAR(InstabilityIndex(ProteinSequence(s)), 5.0 * scales::Diwv(r, r), 1e-12);
  }
}

TEST(ChargeTest, SignsAndMonotonicity) {
  EXPECT_GT(NetCharge(P("KKKKK"), 7.0), 0.0);
  EXPECT_LT(NetCharge(P("DDDDD"), 7.0), 0.0);
  EXPECT_THROW(NetCharge(P("A"), 0.0), DescriptorError);
  EXPECT_THROW(NetCharge(P("A"), 14.0), DescriptorError);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ProteinSequence s = RandomSequence(1 + seed * 3, seed);
    double prev = NetCharge(s, 0.05);
    for (double ph = 0.1; ph < 14.0; ph += 0.05) {
      const double q = NetCharge(s, ph);
      EXPECT_LE(q, prev + 1e-12);
      prev = q;
    }
  }
}

TEST(IsoelectricPointTest, RootAndOrdering) {
  EXPECT_GT(IsoelectricPoint(P("KKKKK")), IsoelectricPoint(P("DDDDD")));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ProteinSequence s = RandomSequence(5 + seed * 5, seed);
    const double pi = IsoelectricPoint(s);
    EXPECT_LE(std::abs(NetCharge(s, pi)), std::abs(NetCharge(s, pi + 0.1)));
    EXPECT_LE(std::abs(NetCharge(s, pi)), std::abs(NetCharge(s, pi - 0.1)));
    EXPECT_GE(NetCharge(s, pi - 0.01), 0.0);
    EXPECT_LE(NetCharge(s, pi + 0.01), 0.0);
  }
}

TEST(SecondaryFractionsTest, Examples) {
  const auto v = SecondaryStructureFractions(P("VVVV"));
  EXPECT_DOUBLE_EQ(v.helix, 1.0);
  EXPECT_DOUBLE_EQ(v.turn, 0.0);
  EXPECT_DOUBLE_EQ(v.sheet, 0.0);
  const auto t = SecondaryStructureFractions(P("NPGS"));
  EXPECT_DOUBLE_EQ(t.helix, 0.0);
  EXPECT_DOUBLE_EQ(t.turn, 1.0);
  EXPECT_DOUBLE_EQ(t.sheet, 0.0);
  const auto l = SecondaryStructureFractions(P("LLL"));
  EXPECT_DOUBLE_EQ(l.helix, 1.0);
  EXPECT_DOUBLE_EQ(l.sheet, 1.0);
}

TEST(BomanTest, HomopolymerIsNegatedScale) {
  for (int r = 0; r < kNumResidues; ++r) {
    EXPECT_DOUBLE_EQ(BomanIndex(ProteinSequence(std::string(3, kAlphabet[r]))),
                     -scales::Boman()[r]);
  }
}

TEST(AliphaticTest, Examples) {
  EXPECT_DOUBLE_EQ(AliphaticIndex(P("AAAA")), 100.0);
  EXPECT_NEAR(AliphaticIndex(P("VVVV")), 290.0, 1e-9);
  EXPECT_NEAR(AliphaticIndex(P("IL")), 390.0, 1e-9);
}

TEST(HydrophobicMomentTest, HomopolymerClosedForm) {
  for (std::size_t n : {3u, 11u, 25u}) {
    for (int r = 0; r < kNumResidues; ++r) {
      const std::size_t w = std::min<std::size_t>(11, n);
      std::complex<double> sum = 0.0;
      for (std::size_t k = 0; k < w; ++k) {
        sum += std::polar(1.0, static_cast<double>(k) * 100.0 * std::numbers::pi / 180.0);
      }
      const double expected = std::abs(scales::Eisenberg()[r]) * std::abs(sum) / w;
      EXPECT_NEAR(HydrophobicMoment(ProteinSequence(std::string(n, kAlphabet[r]))),
                  expected, 1e-12);
    }
  }
}

TEST(HydrophobicMomentTest, NonNegative) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_GE(HydrophobicMoment(RandomSequence(1 + seed * 4, seed)), 0.0);
  }
}

TEST(FeaturizeTest, InvariantsAndAnnotations) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FeatureVector fv = Featurize(RandomSequence(2 + seed * 7, seed), {"x", "y"});
    EXPECT_EQ(fv.annotations, (std::vector<std::string>{"x", "y"}));
    EXPECT_GE(fv.length, 1.0);
    EXPECT_GT(fv.molecular_weight, 0.0);
    EXPECT_GE(fv.gravy, -4.5);
    EXPECT_LE(fv.gravy, 4.5);
    for (double f : {fv.aromaticity, fv.helix_fraction, fv.turn_fraction,
                     fv.sheet_fraction}) {
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
}

TEST(FeaturizeTest, LengthOneSequencePropagatesError) {
  EXPECT_THROW(Featurize(P("A")), DescriptorError);
}

TEST(FeaturizeTest, PermutationInvariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::string s = RandomSequence(30 + seed, seed).str();
    const FeatureVector a = Featurize(ProteinSequence(s));
    std::reverse(s.begin(), s.end());
    const FeatureVector b = Featurize(ProteinSequence(s));
    for (Feature f : AllFeatures()) {
      if (f == Feature::kInstabilityIndex || f == Feature::kHydrophobicMoment) continue;
      EXPECT_NEAR(GetFeature(a, f), GetFeature(b, f), 1e-9) << FeatureName(f);
    }
  }
  // Order-sensitive descriptors do change.
  EXPECT_NE(InstabilityIndex(P("WCAG")), InstabilityIndex(P("GACW")));
  EXPECT_NE(HydrophobicMoment(P("LLKKLLKKLLKK")), HydrophobicMoment(P("LLLLLLKKKKKK")));
}

TEST(FeatureNamesTest, RoundTrip) {
  for (Feature f : AllFeatures()) {
    EXPECT_EQ(FeatureFromName(FeatureName(f)), f);
  }
  EXPECT_FALSE(FeatureFromName("bogus"));
}

TEST(DescriptorParityTest, MatchesFrozenOracle) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = testing::ReadTsv(testing::DataPath("descriptor_oracle.tsv"));
  ASSERT_EQ(rows.size(), 51u);
  const auto& header = rows[0];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const FeatureVector fv = Featurize(ProteinSequence(rows[i][0]));
    for (std::size_t c = 1; c < header.size(); ++c) {
      const auto f = FeatureFromName(header[c]);
      ASSERT_TRUE(f) << header[c];
      const double want = std::stod(rows[i][c]);
      const double got = GetFeature(fv, *f);
      if (*f == Feature::kIsoelectricPoint) {
        EXPECT_NEAR(got, want, 0.05) << rows[i][0];
      } else {
        EXPECT_LE(std::abs(got - want), 1e-6 * std::abs(want) + 1e-12)
            << header[c] << " " << rows[i][0];
      }
    }
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(),
            5.0);
}

}  // namespace
}  // namespace plmneuron
