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

#include "plmneuron/simulator.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "golden_fixture.h"
#include "plmneuron/completion.h"
#include "plmneuron/errors.h"
#include "plmneuron/explainer.h"
#include "plmneuron/miner.h"
#include "plmneuron/oracle_model.h"
#include "plmneuron/random.h"
#include "plmneuron/stats.h"
#include "test_util.h"

namespace plmneuron {
namespace {

std::vector<FeatureVector> GravyTable() {
  std::vector<FeatureVector> out;
  for (int i = 1; i <= 10; ++i) {
    FeatureVector fv;
    fv.gravy = i;
    fv.molecular_weight = 1000.0 * i;
    out.push_back(fv);
  }
  return out;
}

FeatureVector WithGravy(double g) {
  FeatureVector fv;
  fv.gravy = g;
  return fv;
}

TEST(SimulatorPromptTest, MatchesGolden) {
  const auto ex = testing::GoldenExemplars();
  const std::string prompt =
      BuildSimulatorPrompt("Strongly activates for proteins with high gravy.", ex[2].sequence,
                           ex[2].features, {3, 17});
  EXPECT_EQ(prompt, testing::ReadText(testing::DataPath("golden/simulator.txt")));
  std::size_t count = 0;
  for (std::size_t p = prompt.find("ONLY ANSWER WITH A NUMBER"); p != std::string::npos;
       p = prompt.find("ONLY ANSWER WITH A NUMBER", p + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 2u);
}

TEST(SimulatorPromptTest, FeatureMapQuoting) {
  FeatureVector fv;
  fv.annotations = {"it's", "plain"};
  const std::string map = RenderFeatureMap(fv);
  EXPECT_NE(map.find("'annotations': [\"it's\", 'plain']"), std::string::npos) << map;
  EXPECT_EQ(map.rfind("{'length': 0, 'molecular_weight': 0.0000", 0), 0u) << map;
}

TEST(QuantileTableTest, MidRank) {
  const QuantileTable t(GravyTable());
  EXPECT_EQ(t.size(), 10u);
  EXPECT_DOUBLE_EQ(t.Quantile(Feature::kGravy, 9.0), 0.85);
  EXPECT_DOUBLE_EQ(t.Quantile(Feature::kGravy, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(t.Quantile(Feature::kGravy, 11.0), 1.0);
}

TEST(LexicalBaselineTest, Examples) {
  const LexicalBaseline b{QuantileTable(GravyTable())};
  EXPECT_EQ(b.PredictText("Strongly activates for proteins with high gravy.", WithGravy(9)), 9);
  EXPECT_EQ(b.PredictText("Strongly activates for proteins with low gravy.", WithGravy(9)), 1);
  EXPECT_EQ(b.PredictText("Binds zinc ions.", WithGravy(9)), 5);
  EXPECT_EQ(b.PredictText("Very hydrophobic proteins", WithGravy(10)), 10);
  FeatureVector heavy;
  heavy.molecular_weight = 2000;
  EXPECT_EQ(b.PredictText("low molecular weight", heavy), 8);
}

TEST(ParsePredictionTest, Cases) {
  EXPECT_EQ(ParsePrediction("7"), 7);
  EXPECT_EQ(ParsePrediction("  10.\n"), 10);
  EXPECT_EQ(ParsePrediction("12"), 12);
  EXPECT_EQ(ParsePrediction("-3"), -3);
  EXPECT_FALSE(ParsePrediction("seven"));
  EXPECT_FALSE(ParsePrediction("7.5"));
  EXPECT_FALSE(ParsePrediction(""));
}

Hypothesis H(const std::string& text, int index = 0) {
  return {{0, 0}, text, index, HypothesisSource::kMock};
}

TEST(RemoteSimulatorTest, ClampsAndCountsOutOfRange) {
  ScriptedClient client(std::vector<std::string>{"14", "-2", "6", "junk", "junk", "junk"});
  RemoteSimulator sim(client);
  const ProteinSequence s("ACD");
  EXPECT_EQ(sim.Predict(H("x"), s, {}), 10);
  EXPECT_EQ(sim.Predict(H("x"), s, {}), 0);
  EXPECT_EQ(sim.Predict(H("x"), s, {}), 6);
  EXPECT_EQ(sim.out_of_range_count(), 2);
  EXPECT_THROW(sim.Predict(H("x"), s, {}), UnparseableResponseError);
  EXPECT_TRUE(client.requests()[0].system.empty());
}

// Predicts a fixed value per sequence id supplied by the test.
class TableBackend : public PredictionBackend {
 public:
  explicit TableBackend(std::map<std::string, int> values) : values_(std::move(values)) {}
  int Predict(const Hypothesis&, const ProteinSequence& seq, const FeatureVector&) override {
    return values_.at(seq.str());
  }
  std::string_view kind() const override { return "table"; }

 private:
  std::map<std::string, int> values_;
};

std::vector<ValidationPoint> Points(const std::vector<double>& phi) {
  std::vector<ValidationPoint> out;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    out.push_back({"p" + std::to_string(i), ProteinSequence(std::string(i + 1, 'A')), {},
                   phi[i]});
  }
  return out;
}

TEST(ScoreHypothesisTest, PerfectConstantAndTooFew) {
  const std::vector<double> phi{0.1, 0.4, 0.8, 1.0};
  const auto points = Points(phi);
  std::map<std::string, int> buckets, constant;
  for (const auto& p : points) {
    buckets[p.sequence.str()] = Bucketize(p.phi);
    constant[p.sequence.str()] = 5;
  }
  TableBackend exact(buckets);
  const ScoredHypothesis s = ScoreHypothesis(exact, H("x"), points);
  ASSERT_TRUE(s.valid());
  EXPECT_EQ(s.n_eval, 4);
  EXPECT_GT(*s.r, 0.99);

  TableBackend flat(constant);
  EXPECT_FALSE(ScoreHypothesis(flat, H("x"), points).valid());
  EXPECT_FALSE(ScoreHypothesis(exact, H("x"), std::span(points).first(2)).valid());
  EXPECT_THROW(ScoreHypothesis(exact, H("x"), {}), Error);
}

TEST(ScoreHypothesisTest, WorkersDoNotChangeScore) {
  std::vector<double> phi;
  std::map<std::string, int> pred;
  for (int i = 0; i < 40; ++i) phi.push_back((i * 37 % 41) / 41.0);
  const auto points = Points(phi);
  for (std::size_t i = 0; i < points.size(); ++i) pred[points[i].sequence.str()] = i % 11;
  TableBackend backend(pred);
  EXPECT_EQ(ScoreHypothesis(backend, H("x"), points, 1).r,
            ScoreHypothesis(backend, H("x"), points, 4).r);
}

ScoredHypothesis Scored(std::optional<double> r, int index) {
  return {H("h" + std::to_string(index), index), r, 10};
}

TEST(RankHypothesesTest, Rules) {
  std::vector<ScoredHypothesis> s{Scored(0.3, 0), Scored(0.9, 1), Scored(0.7, 2)};
  EXPECT_EQ(RankHypotheses(s)->hypothesis.candidate_index, 1);
  std::vector<ScoredHypothesis> tie{Scored(0.9, 1), Scored(0.9, 0)};
  EXPECT_EQ(RankHypotheses(tie)->hypothesis.candidate_index, 0);
  std::vector<ScoredHypothesis> undefined{Scored(std::nullopt, 0), Scored(-0.5, 1)};
  EXPECT_EQ(RankHypotheses(undefined)->hypothesis.candidate_index, 1);
  std::vector<ScoredHypothesis> none{Scored(std::nullopt, 0), Scored(std::nullopt, 1)};
  EXPECT_FALSE(RankHypotheses(none));
  std::reverse(s.begin(), s.end());
  EXPECT_EQ(RankHypotheses(s)->hypothesis.candidate_index, 1);
}

TEST(EndToEndTest, PlantedGravyNeuronScoresHigh) {
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < 20; ++i) {
    corpus.push_back({"s" + std::to_string(i), RandomSequence(30 + i, 100 + i), {}});
  }
  const SyntheticOracleModel model(2, 4, {{{1, 1}, Feature::kGravy, 1}});
  MineOptions options;
  options.k = 3;
  options.val_fraction = 0.5;
  options.seed = 1;
  const MineResult mined = Mine(model, corpus, options);
  const auto validation = ValidationSet(mined.dataset, {1, 1});
  ASSERT_GE(validation.size(), 3u);
  const Hypothesis h = MockExplainer({1, 1}, mined.store.Get({1, 1}).Combined());
  EXPECT_EQ(h.text, "Strongly activates for proteins with high gravy.");
  LexicalBaseline baseline(QuantileTable::FromDataset(mined.dataset));
  const ScoredHypothesis s = ScoreHypothesis(baseline, h, validation);
  ASSERT_TRUE(s.valid());
  EXPECT_GE(*s.r, 0.9);
}

TEST(ValidationSetTest, FirstValidationRecords) {
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < 50; ++i) {
    corpus.push_back({"s" + std::to_string(i), RandomSequence(20, i), {}});
  }
  const SyntheticOracleModel model(1, 2, {});
  MineOptions options;
  options.k = 2;
  options.val_fraction = 0.5;
  const MineResult mined = Mine(model, corpus, options);
  const auto idx = ValidationIndices(mined.dataset);
  const auto v = ValidationSet(mined.dataset, {0, 1}, 5);
  ASSERT_EQ(v.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(v[i].id, mined.dataset.records[idx[i]].id);
  EXPECT_THROW(ValidationSet(mined.dataset, {1, 0}), ModelError);
}

}  // namespace
}  // namespace plmneuron
