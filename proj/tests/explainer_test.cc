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

#include "plmneuron/explainer.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "golden_fixture.h"
#include "plmneuron/completion.h"
#include "plmneuron/errors.h"
#include "test_util.h"

namespace plmneuron {
namespace {

using testing::GoldenExemplars;
using testing::MakeFeatures;

TEST(ExplainerPromptTest, MatchesGoldens) {
  const auto exemplars = GoldenExemplars();
  const ExplainerPrompts p = BuildExplainerPrompts(exemplars);
  EXPECT_EQ(p.system, testing::ReadText(testing::DataPath("golden/explainer_system.txt")));
  EXPECT_EQ(p.user, testing::ReadText(testing::DataPath("golden/explainer_user.txt")));
  const ExplainerPrompts s = BuildExplainerPrompts(exemplars, PromptStyle::kSummary);
  EXPECT_TRUE(s.system.empty());
  EXPECT_EQ(s.user, p.user);
}

TEST(ExplainerPromptTest, NoPlaceholdersAndDescendingOrder) {
  const ExplainerPrompts p = BuildExplainerPrompts(GoldenExemplars());
  for (const std::string* text : {&p.system, &p.user}) {
    EXPECT_EQ(text->find("{{"), std::string::npos);
  }
  const auto a = p.user.find("MKTAYIAKQR");
  const auto b = p.user.find("GLFDIVKKVVGALGSL");
  const auto c = p.user.find("DDDDD");
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_THROW(BuildExplainerPrompts({}), Error);
}

TEST(ExplainerPromptTest, InputOrderDoesNotMatter) {
  auto exemplars = GoldenExemplars();
  const ExplainerPrompts want = BuildExplainerPrompts(exemplars);
  std::reverse(exemplars.begin(), exemplars.end());
  const ExplainerPrompts got = BuildExplainerPrompts(exemplars);
  EXPECT_EQ(got.system, want.system);
  EXPECT_EQ(got.user, want.user);
}

TEST(ParseDescriptionTest, Tags) {
  EXPECT_EQ(ParseDescription("x <neuron_description>Binds DNA.</neuron_description> y"),
            "Binds DNA.");
  EXPECT_EQ(ParseDescription("<summary>\n  Membrane proteins.\n</summary>"),
            "Membrane proteins.");
  EXPECT_EQ(ParseDescription("<summary>\"Quoted.\"</summary>"), "Quoted.");
  EXPECT_FALSE(ParseDescription("no tags here"));
  EXPECT_FALSE(ParseDescription("<summary>unterminated"));
  EXPECT_FALSE(ParseDescription("<summary>  </summary>"));
  EXPECT_FALSE(ParseDescription("<summary>One. Two.</summary>"));
  EXPECT_EQ(ParseDescription("<summary>pI 3.5 or lower.</summary>"), "pI 3.5 or lower.");
}

TEST(GenerateHypothesesTest, ParsesTagInterior) {
  ScriptedClient client(std::vector<std::string>{
      "Thinking...\n<neuron_description>Activates on hydrophobic proteins.</neuron_description>"});
  ExplainerOptions options;
  options.m = 3;
  options.model = "explainer-model";
  const auto hs = GenerateHypotheses(client, {2, 5}, GoldenExemplars(), options);
  ASSERT_EQ(hs.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(hs[i].candidate_index, i);
    EXPECT_EQ(hs[i].text, "Activates on hydrophobic proteins.");
    EXPECT_EQ(hs[i].source, HypothesisSource::kRemote);
    EXPECT_EQ(hs[i].neuron, (NeuronId{2, 5}));
  }
  const auto requests = client.requests();
  ASSERT_EQ(requests.size(), 3u);
  EXPECT_DOUBLE_EQ(requests[0].temperature, 0.9);
  EXPECT_EQ(requests[0].model, "explainer-model");
  EXPECT_EQ(requests[0].system,
            testing::ReadText(testing::DataPath("golden/explainer_system.txt")));
}

TEST(GenerateHypothesesTest, RetriesThenFails) {
  ScriptedClient retry(std::vector<std::string>{"garbage", "<summary>Fine.</summary>"});
  ExplainerOptions options;
  options.m = 1;
  const auto hs = GenerateHypotheses(retry, {0, 0}, GoldenExemplars(), options);
  EXPECT_EQ(hs[0].text, "Fine.");
  EXPECT_EQ(retry.requests().size(), 2u);

  ScriptedClient bad(std::vector<std::string>{"garbage"});
  EXPECT_THROW(GenerateHypotheses(bad, {0, 0}, GoldenExemplars(), options),
               UnparseableResponseError);
  EXPECT_EQ(bad.requests().size(), 3u);
}

TEST(GenerateHypothesesTest, TransportErrorsPropagate) {
  ScriptedClient failing([](const CompletionRequest&) -> std::string {
    throw TransportError("down");
  });
  EXPECT_THROW(GenerateHypotheses(failing, {0, 0}, GoldenExemplars(), {}), TransportError);
}

std::vector<Exemplar> Ramp(Feature f, double sign) {
  std::vector<Exemplar> out;
  for (int i = 0; i < 5; ++i) {
    FeatureVector fv = MakeFeatures(std::vector<double>(kNumFeatures, 1.0), {});
    SetFeature(fv, f, 10.0 + i * i);
    out.push_back({"x" + std::to_string(i), ProteinSequence("A"),
                   sign > 0 ? 0.2 * i : 1.0 - 0.2 * i, fv});
  }
  return out;
}

TEST(MockExplainerTest, PicksCorrelatedFeatureAndDirection) {
  EXPECT_EQ(MockExplainer({0, 0}, Ramp(Feature::kGravy, 1)).text,
            "Strongly activates for proteins with high gravy.");
  EXPECT_EQ(MockExplainer({0, 0}, Ramp(Feature::kMolecularWeight, -1)).text,
            "Strongly activates for proteins with low molecular weight.");
}

TEST(MockExplainerTest, ConstantFeaturesTieBreak) {
  std::vector<Exemplar> ex;
  for (int i = 0; i < 4; ++i) {
    ex.push_back({"x" + std::to_string(i), ProteinSequence("A"), 0.25 * i,
                  MakeFeatures(std::vector<double>(kNumFeatures, 2.0), {})});
  }
  EXPECT_EQ(MockExplainer({0, 0}, ex).text,
            "Strongly activates for proteins with high sequence length.");
}

TEST(MockExplainerTest, NeedsThreeExemplarsAndIsOrderInvariant) {
  auto ex = GoldenExemplars();
  EXPECT_THROW(MockExplainer({0, 0}, std::span(ex).first(2)), Error);
  const auto want = MockExplainerCandidates({0, 0}, ex, 5);
  std::reverse(ex.begin(), ex.end());
  const auto got = MockExplainerCandidates({0, 0}, ex, 5);
  EXPECT_EQ(got, want);
  EXPECT_EQ(want.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(want[i].candidate_index, i);
    EXPECT_EQ(want[i].source, HypothesisSource::kMock);
  }
}

TEST(HasMultipleSentencesTest, Cases) {
  EXPECT_FALSE(HasMultipleSentences("One sentence."));
  EXPECT_TRUE(HasMultipleSentences("One. Two."));
  EXPECT_FALSE(HasMultipleSentences("Value 3.5 here."));
}

}  // namespace
}  // namespace plmneuron
