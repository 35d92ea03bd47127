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

#ifndef PLMNEURON_SEQUENCE_H_
#define PLMNEURON_SEQUENCE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plmneuron {

// The 20 canonical residues in alphabetical one-letter order. A residue's
// position in this string is its residue index (0..19).
inline constexpr std::string_view kAlphabet = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr int kNumResidues = 20;
inline constexpr std::size_t kMaxSequenceLength = 1024;

// Returns the residue index of `c` (uppercase only), or nullopt.
std::optional<int> ResidueIndex(char c);

// A validated, non-empty amino-acid string of at most 1024 canonical
// residues. Ambiguity codes (B, J, O, U, X, Z) are rejected.
class ProteinSequence {
 public:
  // Throws SequenceError naming the first offending character and its
  // 1-based position, or the length violation.
  explicit ProteinSequence(std::string residues);

  const std::string& str() const { return residues_; }
  std::size_t size() const { return residues_.size(); }
  char operator[](std::size_t i) const { return residues_[i]; }

  friend bool operator==(const ProteinSequence&,
                         const ProteinSequence&) = default;

 private:
  std::string residues_;
};

// Fixed 24-token vocabulary: specials first, then residues in kAlphabet
// order.
inline constexpr int kPadToken = 0;
inline constexpr int kMaskToken = 1;
inline constexpr int kBosToken = 2;
inline constexpr int kEosToken = 3;
inline constexpr int kFirstResidueToken = 4;
inline constexpr int kVocabSize = 24;

inline constexpr int ResidueToken(int residue_index) {
  return kFirstResidueToken + residue_index;
}
inline constexpr bool IsResidueToken(int token) {
  return token >= kFirstResidueToken && token < kVocabSize;
}

using TokenSequence = std::vector<int>;

// [BOS, residues..., EOS].
TokenSequence Tokenize(const ProteinSequence& seq);

// Inverse of Tokenize. Throws SequenceError if the ids are not a BOS...EOS
// frame around residue tokens only.
ProteinSequence Detokenize(const TokenSequence& tokens);

struct FastaRecord {
  std::string id;           // first whitespace-delimited header token
  std::string description;  // rest of the header line, may be empty
  ProteinSequence sequence;

  friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

// A record that failed validation. Reported alongside the good records.
struct FastaIssue {
  enum class Kind { kMalformedHeader, kEmptySequence, kInvalidResidue, kTooLong };
  Kind kind;
  std::string record_id;
  std::size_t line;  // 1-based line where the problem was detected
  std::string message;
};

struct FastaParseResult {
  std::vector<FastaRecord> records;
  std::vector<FastaIssue> issues;
};

// Parses FASTA text. Lowercase residues are upper-cased; whitespace inside
// sequence lines is ignored. Records that fail validation are listed in
// `issues` rather than dropped silently.
FastaParseResult ParseFasta(std::string_view text);

// Like ParseFasta but throws FastaError on the first issue.
std::vector<FastaRecord> ParseFastaStrict(std::string_view text);

// Writes records with sequence lines wrapped at `line_width` residues.
std::string SerializeFasta(const std::vector<FastaRecord>& records,
                           std::size_t line_width = 60);

// Uniform i.i.d. residues. Throws SequenceError unless 1 <= length <= 1024.
ProteinSequence RandomSequence(std::size_t length, std::uint64_t seed);

// Poly-aspartate ("DDD...") starting point for structure steering.
//
// "D-configuration" residues are read as the one-letter code D. A
// D-stereoisomer start cannot be expressed in this alphabet.
ProteinSequence NeutralStart(std::size_t length);

}  // namespace plmneuron

#endif  // PLMNEURON_SEQUENCE_H_
