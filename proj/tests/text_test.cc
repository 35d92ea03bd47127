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

#include "plmneuron/text.h"

#include <gtest/gtest.h>

#include <string>
#include <utility>
#include <vector>

namespace plmneuron {
namespace {

std::optional<Feature> Mention(const std::string& text) {
  const auto tokens = WordTokens(text);
  const auto m = FindFeatureMention(tokens);
  if (!m) return std::nullopt;
  return m->feature;
}

Direction Dir(const std::string& text) {
  const auto tokens = WordTokens(text);
  return MentionDirection(tokens, *FindFeatureMention(tokens));
}

TEST(WordTokensTest, LowercaseAlnumRuns) {
  EXPECT_EQ(WordTokens("High GRAVY, pH-7!"),
            (std::vector<std::string>{"high", "gravy", "ph", "7"}));
  EXPECT_TRUE(WordTokens("  ..  ").empty());
}

TEST(TrimTest, Whitespace) {
  EXPECT_EQ(Trim("  a b \n\t"), "a b");
  EXPECT_EQ(Trim(""), "");
}

TEST(FeatureMentionTest, Synonyms) {
  EXPECT_EQ(Mention("very hydrophobic proteins"), Feature::kGravy);
  EXPECT_EQ(Mention("heavy molecular weight"), Feature::kMolecularWeight);
  EXPECT_EQ(Mention("unstable sequences"), Feature::kInstabilityIndex);
  EXPECT_EQ(Mention("positive charge"), Feature::kChargePh7);
  EXPECT_EQ(Mention("strong hydrophobic moment"), Feature::kHydrophobicMoment);
  EXPECT_EQ(Mention("rich in beta sheets"), Feature::kSheetFraction);
  EXPECT_FALSE(Mention("binds zinc ions"));
}

TEST(FeatureMentionTest, EarliestWins) {
  EXPECT_EQ(Mention("low charge and high gravy"), Feature::kChargePh7);
  EXPECT_EQ(Mention("high gravy and low charge"), Feature::kGravy);
}

TEST(FeatureMentionTest, AllMentionsInOrder) {
  const auto tokens = WordTokens("high gravy, low charge, high gravy again, long length");
  EXPECT_EQ(AllFeatureMentions(tokens),
            (std::vector<Feature>{Feature::kGravy, Feature::kChargePh7, Feature::kLength}));
}

TEST(MentionDirectionTest, Rules) {
  EXPECT_EQ(Dir("Strongly activates for proteins with high gravy."), Direction::kHigh);
  EXPECT_EQ(Dir("Strongly activates for proteins with low gravy."), Direction::kLow);
  EXPECT_EQ(Dir("gravy that is low"), Direction::kLow);
  EXPECT_EQ(Dir("gravy"), Direction::kHigh);
  EXPECT_EQ(Dir("negative charge"), Direction::kLow);
}

TEST(FindPhraseTest, Occurrences) {
  const auto tokens = WordTokens("a b a b c");
  const std::vector<std::string> phrase{"a", "b"};
  EXPECT_EQ(FindPhrase(tokens, phrase), (std::vector<std::size_t>{0, 2}));
}

TEST(RenderTemplateTest, SinglePass) {
  const std::vector<std::pair<std::string_view, std::string>> values{
      {"{a}", "x{b}"}, {"{b}", "y"}};
  EXPECT_EQ(RenderTemplate("{a}-{b}-{c}", values), "x{b}-y-{c}");
}

TEST(FormatFixed4Test, Rounding) {
  EXPECT_EQ(FormatFixed4(1.0), "1.0000");
  EXPECT_EQ(FormatFixed4(-0.12346), "-0.1235");
}

}  // namespace
}  // namespace plmneuron
