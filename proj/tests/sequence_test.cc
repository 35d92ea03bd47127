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

#include "plmneuron/sequence.h"

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "plmneuron/errors.h"
#include "plmneuron/random.h"

namespace plmneuron {
namespace {

TEST(ProteinSequenceTest, AcceptsCanonicalResidues) {
  EXPECT_EQ(ProteinSequence("ACDEFGHIKLMNPQRSTVWY").size(), 20u);
}

TEST(ProteinSequenceTest, RejectsAmbiguityCodes) {
  for (char c : std::string("BJOUXZ")) {
    EXPECT_THROW(ProteinSequence(std::string("AA") + c), SequenceError) << c;
  }
}

TEST(ProteinSequenceTest, RejectsEmptyAndTooLong) {
  EXPECT_THROW(ProteinSequence(""), SequenceError);
  EXPECT_NO_THROW(ProteinSequence(std::string(1024, 'A')));
  EXPECT_THROW(ProteinSequence(std::string(1025, 'A')), SequenceError);
}

TEST(ProteinSequenceTest, ErrorNamesCharacterAndPosition) {
  try {
    ProteinSequence("GZ");
    FAIL();
  } catch (const SequenceError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("'Z'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("position 2"), std::string::npos) << msg;
  }
}

TEST(FastaTest, MinimalRecord) {
  const auto records = ParseFastaStrict(">a\nGG\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].id, "a");
  EXPECT_EQ(records[0].sequence.str(), "GG");
}

TEST(FastaTest, KeepsFileOrder) {
  const auto records = ParseFastaStrict(">a\nGG\n>b\nAC\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].id, "a");
  EXPECT_EQ(records[1].id, "b");
  EXPECT_EQ(records[1].sequence.str(), "AC");
}

TEST(FastaTest, InvalidResidueReportsRecordAndCharacter) {
  const FastaParseResult parsed = ParseFasta(">a\nGZ\n>b\nAC\n");
  ASSERT_EQ(parsed.issues.size(), 1u);
  EXPECT_EQ(parsed.issues[0].kind, FastaIssue::Kind::kInvalidResidue);
  EXPECT_EQ(parsed.issues[0].record_id, "a");
  EXPECT_EQ(parsed.issues[0].line, 2u);
  EXPECT_NE(parsed.issues[0].message.find("'Z'"), std::string::npos);
  EXPECT_NE(parsed.issues[0].message.find("position 2"), std::string::npos);
  ASSERT_EQ(parsed.records.size(), 1u);
  EXPECT_EQ(parsed.records[0].id, "b");
  EXPECT_THROW(ParseFastaStrict(">a\nGZ\n"), FastaError);
}

TEST(FastaTest, EmptySequenceAndMalformedHeader) {
  const FastaParseResult empty = ParseFasta(">a\n>b\nAC\n");
  ASSERT_EQ(empty.issues.size(), 1u);
  EXPECT_EQ(empty.issues[0].kind, FastaIssue::Kind::kEmptySequence);
  EXPECT_EQ(empty.issues[0].record_id, "a");

  const FastaParseResult header = ParseFasta(">\nAC\n");
  ASSERT_FALSE(header.issues.empty());
  EXPECT_EQ(header.issues[0].kind, FastaIssue::Kind::kMalformedHeader);
}

TEST(FastaTest, TooLongIsDistinct) {
  const FastaParseResult parsed = ParseFasta(">a\n" + std::string(1025, 'A') + "\n");
  ASSERT_EQ(parsed.issues.size(), 1u);
  EXPECT_EQ(parsed.issues[0].kind, FastaIssue::Kind::kTooLong);
}

TEST(FastaTest, LowercaseAndWrappedLines) {
  const auto records = ParseFastaStrict(">x desc text\nac\nDE\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].sequence.str(), "ACDE");
  EXPECT_EQ(records[0].description, "desc text");
}

TEST(FastaTest, SerializeParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    std::vector<FastaRecord> records;
    const int n = 1 + static_cast<int>(rng.UniformIndex(5));
    for (int i = 0; i < n; ++i) {
      const std::size_t len = 1 + rng.UniformIndex(300);
      records.push_back({"r" + std::to_string(i), i % 2 ? "some description" : "",
                         RandomSequence(len, seed * 100 + i)});
    }
    EXPECT_EQ(ParseFastaStrict(SerializeFasta(records, 1 + seed * 7)), records);
  }
}

TEST(TokenizerTest, Examples) {
  EXPECT_EQ(Tokenize(ProteinSequence("A")), (TokenSequence{2, 4, 3}));
  EXPECT_EQ(Tokenize(ProteinSequence("C")), (TokenSequence{2, 5, 3}));
  EXPECT_EQ(Tokenize(ProteinSequence("Y")), (TokenSequence{2, 23, 3}));
  EXPECT_EQ(Detokenize(Tokenize(ProteinSequence("ACDEFG"))).str(), "ACDEFG");
}

TEST(TokenizerTest, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ProteinSequence s = RandomSequence(1 + seed % 300, seed);
    const TokenSequence t = Tokenize(s);
    ASSERT_EQ(t.size(), s.size() + 2);
    EXPECT_EQ(t.front(), kBosToken);
    EXPECT_EQ(t.back(), kEosToken);
    EXPECT_EQ(Detokenize(t), s);
  }
}

TEST(TokenizerTest, DetokenizeRejectsBadFrames) {
  EXPECT_THROW(Detokenize({4, 3}), SequenceError);
  EXPECT_THROW(Detokenize({2, 4}), SequenceError);
  EXPECT_THROW(Detokenize({2, 0, 4, 3}), SequenceError);
  EXPECT_THROW(Detokenize({2, 3}), SequenceError);
}

TEST(RandomSequenceTest, DeterministicAndLength) {
  EXPECT_EQ(RandomSequence(5, 7), RandomSequence(5, 7));
  EXPECT_EQ(RandomSequence(75, 1).size(), 75u);
  EXPECT_THROW(RandomSequence(0, 1), SequenceError);
  EXPECT_THROW(RandomSequence(1025, 1), SequenceError);
  EXPECT_NE(RandomSequence(50, 1), RandomSequence(50, 2));
}

TEST(RandomSequenceTest, UsesWholeAlphabet) {
  const ProteinSequence s = RandomSequence(1000, 3);
  std::set<char> seen(s.str().begin(), s.str().end());
  EXPECT_EQ(seen.size(), 20u);
}

TEST(NeutralStartTest, PolyAspartate) {
  EXPECT_EQ(NeutralStart(3).str(), "DDD");
  EXPECT_EQ(NeutralStart(75).str(), std::string(75, 'D'));
  EXPECT_EQ(NeutralStart(1).str(), "D");
  EXPECT_THROW(NeutralStart(0), SequenceError);
}

}  // namespace
}  // namespace plmneuron
