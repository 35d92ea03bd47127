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

#include <cctype>

#include "plmneuron/errors.h"
#include "plmneuron/random.h"

namespace plmneuron {

std::optional<int> ResidueIndex(char c) {
  const auto pos = kAlphabet.find(c);
  if (pos == std::string_view::npos) return std::nullopt;
  return static_cast<int>(pos);
}

ProteinSequence::ProteinSequence(std::string residues)
    : residues_(std::move(residues)) {
  if (residues_.empty()) throw SequenceError("empty protein sequence");
  if (residues_.size() > kMaxSequenceLength) {
    throw SequenceError("sequence length " + std::to_string(residues_.size()) +
                        " exceeds the maximum of " +
                        std::to_string(kMaxSequenceLength));
  }
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    if (!ResidueIndex(residues_[i])) {
      throw SequenceError(std::string("invalid residue '") + residues_[i] +
                          "' at position " + std::to_string(i + 1));
    }
  }
}

TokenSequence Tokenize(const ProteinSequence& seq) {
  TokenSequence ids;
  ids.reserve(seq.size() + 2);
  ids.push_back(kBosToken);
  for (char c : seq.str()) ids.push_back(ResidueToken(*ResidueIndex(c)));
  ids.push_back(kEosToken);
  return ids;
}

ProteinSequence Detokenize(const TokenSequence& tokens) {
  if (tokens.size() < 3 || tokens.front() != kBosToken ||
      tokens.back() != kEosToken) {
    throw SequenceError("token sequence is not framed by BOS ... EOS");
  }
  std::string residues;
  residues.reserve(tokens.size() - 2);
  for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
    if (!IsResidueToken(tokens[i])) {
      throw SequenceError("non-residue token " + std::to_string(tokens[i]) +
                          " at position " + std::to_string(i));
    }
    residues.push_back(kAlphabet[tokens[i] - kFirstResidueToken]);
  }
  return ProteinSequence(std::move(residues));
}

namespace {

std::string_view TrimRight(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' ||
                        s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

struct PendingRecord {
  std::string id;
  std::string description;
  std::string residues;
  std::size_t header_line = 0;
  std::size_t bad_line = 0;
  std::size_t bad_position = 0;
  char bad_char = 0;
  bool orphan = false;  // lines with no usable header; already reported
};

void Finish(PendingRecord& rec, FastaParseResult& out) {
  if (rec.bad_char != 0) {
    out.issues.push_back(
        {FastaIssue::Kind::kInvalidResidue, rec.id, rec.bad_line,
         "record '" + rec.id + "': invalid residue '" +
             std::string(1, rec.bad_char) + "' at position " +
             std::to_string(rec.bad_position) + " (line " +
             std::to_string(rec.bad_line) + ")"});
    return;
  }
  if (rec.residues.empty()) {
    out.issues.push_back({FastaIssue::Kind::kEmptySequence, rec.id,
                          rec.header_line,
                          "record '" + rec.id + "' has an empty sequence (line " +
                              std::to_string(rec.header_line) + ")"});
    return;
  }
  if (rec.residues.size() > kMaxSequenceLength) {
    out.issues.push_back(
        {FastaIssue::Kind::kTooLong, rec.id, rec.header_line,
         "record '" + rec.id + "' has " + std::to_string(rec.residues.size()) +
             " residues, over the limit of " +
             std::to_string(kMaxSequenceLength)});
    return;
  }
  out.records.push_back({std::move(rec.id), std::move(rec.description),
                         ProteinSequence(std::move(rec.residues))});
}

}  // namespace

FastaParseResult ParseFasta(std::string_view text) {
  FastaParseResult out;
  std::optional<PendingRecord> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = TrimRight(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    if (!line.empty() && line.front() == '>') {
      if (current && !current->orphan) Finish(*current, out);
      current.reset();
      std::string_view header = line.substr(1);
      const auto id_end = header.find_first_of(" \t");
      std::string id(header.substr(0, id_end));
      if (id.empty()) {
        out.issues.push_back({FastaIssue::Kind::kMalformedHeader, "", line_no,
                              "header without a record id (line " +
                                  std::to_string(line_no) + ")"});
        current.emplace();
        current->orphan = true;
        continue;
      }
      PendingRecord rec;
      rec.id = std::move(id);
      if (id_end != std::string_view::npos) {
        std::string_view desc = header.substr(id_end);
        while (!desc.empty() && (desc.front() == ' ' || desc.front() == '\t')) {
          desc.remove_prefix(1);
        }
        rec.description = std::string(desc);
      }
      rec.header_line = line_no;
      current = std::move(rec);
      continue;
    }
    if (line.empty()) continue;
    if (!current) {
      out.issues.push_back({FastaIssue::Kind::kMalformedHeader, "", line_no,
                            "sequence data before the first '>' header (line " +
                                std::to_string(line_no) + ")"});
      current.emplace();
      current->orphan = true;
      continue;
    }
    if (current->orphan) continue;
    for (char c : line) {
      if (c == ' ' || c == '\t') continue;
      const char upper =
          static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (current->bad_char == 0 && !ResidueIndex(upper)) {
        current->bad_char = c;
        current->bad_line = line_no;
        current->bad_position = current->residues.size() + 1;
      }
      current->residues.push_back(upper);
    }
  }
  if (current && !current->orphan) Finish(*current, out);
  return out;
}

std::vector<FastaRecord> ParseFastaStrict(std::string_view text) {
  FastaParseResult parsed = ParseFasta(text);
  if (!parsed.issues.empty()) {
    const FastaIssue& first = parsed.issues.front();
    throw FastaError(static_cast<FastaError::Kind>(first.kind), first.record_id,
                     first.line, first.message);
  }
  return std::move(parsed.records);
}

std::string SerializeFasta(const std::vector<FastaRecord>& records,
                           std::size_t line_width) {
  std::string out;
  for (const FastaRecord& rec : records) {
    out += '>';
    out += rec.id;
    if (!rec.description.empty()) {
      out += ' ';
      out += rec.description;
    }
    out += '\n';
    const std::string& s = rec.sequence.str();
    for (std::size_t i = 0; i < s.size(); i += line_width) {
      out.append(s, i, line_width);
      out += '\n';
    }
  }
  return out;
}

ProteinSequence RandomSequence(std::size_t length, std::uint64_t seed) {
  if (length < 1 || length > kMaxSequenceLength) {
    throw SequenceError("random sequence length must be in [1, 1024], got " +
                        std::to_string(length));
  }
  Rng rng(seed);
  std::string residues(length, 'A');
  for (char& c : residues) c = kAlphabet[rng.UniformIndex(kNumResidues)];
  return ProteinSequence(std::move(residues));
}

ProteinSequence NeutralStart(std::size_t length) {
  if (length < 1) throw SequenceError("neutral start length must be >= 1");
  return ProteinSequence(std::string(length, 'D'));
}

}  // namespace plmneuron
