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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "plmneuron/errors.h"
#include "plmneuron/random.h"

namespace plmneuron {
namespace {

TEST(SextileTest, Formula) {
  EXPECT_EQ(SextileOf(0, 12), 1);
  EXPECT_EQ(SextileOf(11, 12), 6);
  EXPECT_EQ(SextileOf(5, 6), 6);
  EXPECT_EQ(SextileOf(35, 36), 6);
  EXPECT_EQ(SextileOf(6, 36), 2);
  EXPECT_THROW(SextileOf(0, 5), Error);
  EXPECT_THROW(SextileOf(6, 6), Error);
  EXPECT_THROW(SextileOf(-1, 6), Error);
}

TEST(SextileTest, MonotoneAndSurjective) {
  for (int total : {6, 12, 18, 36, 48}) {
    std::array<int, 6> seen{};
    int prev = 1;
    for (int l = 0; l < total; ++l) {
      const int s = SextileOf(l, total);
      EXPECT_GE(s, prev);
      prev = s;
      ++seen[s - 1];
    }
    for (int c : seen) EXPECT_EQ(c, total / 6);
  }
}

NeuronLabel L(int layer, int index, std::string text) {
  return {"m", {layer, index}, std::move(text), 0.5, 10, {"mock", "baseline", 0, ""}};
}

std::vector<NeuronLabel> Fixture() {
  return {L(0, 0, "High net charge."), L(0, 1, "Negative charge patches."),
          L(2, 0, "Alpha helices."), L(5, 3, "Beta sheet strands."),
          L(4, 2, "Binds zinc.")};
}

LabelCatalog Build(std::vector<NeuronLabel> labels) {
  LabelCatalog c;
  c.AddModel("m", {6, 4});
  for (auto& l : labels) c.Upsert(std::move(l));
  return c;
}

TEST(CategoryDistributionTest, Examples) {
  const auto hist = CategoryDistribution(Build(Fixture()));
  ASSERT_EQ(hist.size(), 3u);
  EXPECT_EQ(hist[0].category, "functional");
  EXPECT_TRUE(hist[0].empty);
  EXPECT_EQ(hist[0].counts, (std::array<int, 6>{}));
  EXPECT_EQ(hist[1].counts, (std::array<int, 6>{0, 0, 1, 0, 0, 1}));
  EXPECT_DOUBLE_EQ(hist[1].frequencies[2], 0.5);
  EXPECT_EQ(hist[2].counts, (std::array<int, 6>{2, 0, 0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(hist[2].frequencies[0], 1.0);
  for (const auto& h : hist) {
    if (h.empty) continue;
    EXPECT_NEAR(std::accumulate(h.frequencies.begin(), h.frequencies.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(CategoryDistributionTest, OrderInvariant) {
  auto labels = Fixture();
  const std::string base = SextileCsv(CategoryDistribution(Build(labels)));
  std::reverse(labels.begin(), labels.end());
  EXPECT_EQ(SextileCsv(CategoryDistribution(Build(labels))), base);
  EXPECT_EQ(base.substr(0, base.find('\n')), "category,s1,s2,s3,s4,s5,s6,f1,f2,f3,f4,f5,f6");
}

TEST(CategoryDistributionTest, Errors) {
  EXPECT_THROW(CategoryDistribution(LabelCatalog{}), Error);
  EXPECT_THROW(CategoryDistribution(Build(Fixture()), DefaultCategories(), "other"),
               SchemaError);
  LabelCatalog two = Build(Fixture());
  two.AddModel("n", {6, 4});
  EXPECT_THROW(CategoryDistribution(two), Error);
  EXPECT_NO_THROW(CategoryDistribution(two, DefaultCategories(), "m"));
}

TEST(ParseMotifTest, Patterns) {
  const MotifPattern c2h2 = ParseMotif("C-x(2,4)-C-x(12)-H-x(3,5)-H");
  EXPECT_EQ(c2h2.anchors(), 4u);
  EXPECT_EQ(c2h2.gaps(), 3u);
  EXPECT_EQ(c2h2.elements[0], (MotifElement{"C", 2, 4}));
  EXPECT_EQ(c2h2.elements[1], (MotifElement{"C", 12, 12}));
  EXPECT_EQ(c2h2.elements[3], (MotifElement{"H", 0, 0}));

  const MotifPattern c4 = ParseMotif("C-x(3)-C-x(20)-C-x(4)-C");
  EXPECT_EQ(c4.anchors(), 4u);
  EXPECT_EQ(c4.elements[1].gap_min, 20);

  EXPECT_EQ(ParseMotif("[HC]-x-c"), ParseMotif("[CH]-x(1)-C"));
  EXPECT_EQ(ParseMotif("C-x(2)-x(1,3)-C").elements[0], (MotifElement{"C", 3, 5}));
}

TEST(ParseMotifTest, Errors) {
  for (const char* bad : {"C-x(4,2)-C", "x(2)-C", "C-x(2)", "", "C--C", "C-x(a)-C",
                          "C-[]-C", "C-Z-C", "C-x(2,-1)-C"}) {
    EXPECT_THROW(ParseMotif(bad), MotifSyntaxError) << bad;
  }
}

TEST(MotifScanTest, Examples) {
  const MotifPattern c2h2 = ParseMotif("C-x(2,4)-C-x(12)-H-x(3,5)-H");
  const std::string s = "C" + std::string(2, 'A') + "C" + std::string(12, 'A') + "H" +
                        std::string(3, 'A') + "H";
  EXPECT_EQ(MotifScan(ProteinSequence(s), c2h2),
            (std::vector<MotifMatch>{{0, s.size()}}));
  EXPECT_TRUE(MotifScan(ProteinSequence(std::string(100, 'A')), c2h2).empty());
  EXPECT_EQ(MotifScan(ProteinSequence("ACACCA"), ParseMotif("C-x(0,2)-C")),
            (std::vector<MotifMatch>{{1, 4}}));
}

// Does the whole window match elements [e..] exactly?
bool FullMatch(std::string_view w, const MotifPattern& p, std::size_t e) {
  if (w.empty()) return false;
  const MotifElement& el = p.elements[e];
  if (el.residues.find(w[0]) == std::string::npos) return false;
  if (e + 1 == p.elements.size()) return w.size() == 1;
  for (int g = el.gap_min; g <= el.gap_max; ++g) {
    if (1 + static_cast<std::size_t>(g) < w.size() &&
        FullMatch(w.substr(1 + g), p, e + 1)) {
      return true;
    }
  }
  return false;
}

std::vector<MotifMatch> BruteForce(const std::string& s, const MotifPattern& p) {
  std::vector<MotifMatch> out;
  std::size_t start = 0;
  while (start < s.size()) {
    bool found = false;
    for (std::size_t end = start + 1; end <= s.size(); ++end) {
      if (FullMatch(std::string_view(s).substr(start, end - start), p, 0)) {
        out.push_back({start, end});
        start = end;
        found = true;
        break;
      }
    }
    if (!found) ++start;
  }
  return out;
}

TEST(MotifScanTest, AgreesWithBruteForce) {
  const MotifPattern patterns[] = {ParseMotif("C-x(0,2)-C-x(1,3)-H"),
                                   ParseMotif("[CH]-x(1,4)-[CH]"),
                                   ParseMotif("C-x(2,4)-C-x(3)-H-x(0,2)-H")};
  Rng rng(2024);
  const std::string alphabet = "CHAG";
  int total = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = 1 + rng.UniformIndex(40);
    std::string s(len, 'A');
    for (char& c : s) c = alphabet[rng.UniformIndex(alphabet.size())];
    for (const MotifPattern& p : patterns) {
      const auto got = MotifScan(ProteinSequence(s), p);
      EXPECT_EQ(got, BruteForce(s, p)) << s;
      total += static_cast<int>(got.size());
    }
  }
  EXPECT_GT(total, 100);
}

TEST(DistributionReportTest, PercentilesAndCounts) {
  std::vector<FeatureVector> data(11);
  for (int i = 0; i < 11; ++i) data[i].gravy = i;
  FeatureVector median;
  median.gravy = 5;
  const auto report = DistributionReport(data, median);
  const auto& g = *std::find_if(report.begin(), report.end(), [](const auto& d) {
    return d.feature == Feature::kGravy;
  });
  EXPECT_NEAR(g.percentile, 0.5, 1.0 / 11);
  EXPECT_EQ(g.counts.size(), 20u);
  EXPECT_EQ(std::accumulate(g.counts.begin(), g.counts.end(), 0), 11);
  EXPECT_EQ(g.min, 0.0);
  EXPECT_EQ(g.max, 10.0);

  FeatureVector below;
  below.gravy = -1;
  const auto low = DistributionReport(data, below);
  for (const auto& d : low) {
    if (d.feature == Feature::kGravy) {
      EXPECT_EQ(d.percentile, 0.0);
    }
    EXPECT_EQ(std::accumulate(d.counts.begin(), d.counts.end(), 0), 11);
  }
  EXPECT_FALSE(DistributionCsv(report).empty());
  EXPECT_THROW(DistributionReport({}, median), Error);
}

}  // namespace
}  // namespace plmneuron
