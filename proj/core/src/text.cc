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

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

namespace plmneuron {

namespace {

struct Synonym {
  std::string_view phrase;
  Feature feature;
};

constexpr Synonym kSynonyms[] = {
    {"sequence length", Feature::kLength},
    {"length", Feature::kLength},
    {"molecular weight", Feature::kMolecularWeight},
    {"weight", Feature::kMolecularWeight},
    {"mass", Feature::kMolecularWeight},
    {"isoelectric point", Feature::kIsoelectricPoint},
    {"isoelectric", Feature::kIsoelectricPoint},
    {"aromaticity", Feature::kAromaticity},
    {"aromatic", Feature::kAromaticity},
    {"instability index", Feature::kInstabilityIndex},
    {"instability", Feature::kInstabilityIndex},
    {"unstable", Feature::kInstabilityIndex},
    {"gravy", Feature::kGravy},
    {"hydrophobic", Feature::kGravy},
    {"hydrophobicity", Feature::kGravy},
    {"hydropathy", Feature::kGravy},
    {"helix fraction", Feature::kHelixFraction},
    {"helix", Feature::kHelixFraction},
    {"helical", Feature::kHelixFraction},
    {"helices", Feature::kHelixFraction},
    {"alpha", Feature::kHelixFraction},
    {"turn fraction", Feature::kTurnFraction},
    {"turn", Feature::kTurnFraction},
    {"turns", Feature::kTurnFraction},
    {"sheet fraction", Feature::kSheetFraction},
    {"sheet", Feature::kSheetFraction},
    {"sheets", Feature::kSheetFraction},
    {"beta", Feature::kSheetFraction},
    {"charge at ph 7", Feature::kChargePh7},
    {"net charge", Feature::kChargePh7},
    {"charge", Feature::kChargePh7},
    {"charged", Feature::kChargePh7},
    {"boman index", Feature::kBomanIndex},
    {"boman", Feature::kBomanIndex},
    {"aliphatic index", Feature::kAliphaticIndex},
    {"aliphatic", Feature::kAliphaticIndex},
    {"hydrophobic moment", Feature::kHydrophobicMoment},
    {"amphipathic", Feature::kHydrophobicMoment},
    {"amphipathicity", Feature::kHydrophobicMoment},
};

constexpr std::string_view kHighWords[] = {
    "high",     "higher",   "highly", "strong",   "strongly", "positive",
    "positively", "increased", "increasing", "elevated", "rich", "more",
    "greater",  "large",    "larger", "abundant", "enriched"};

constexpr std::string_view kLowWords[] = {
    "low",      "lower",    "negative", "negatively", "decreased",
    "decreasing", "reduced", "weak",    "weakly",     "less",
    "poor",     "depleted", "small",    "smaller",    "few"};

constexpr std::string_view kStopwords[] = {
    "a",     "an",      "and",   "are",     "as",       "associated",
    "at",    "by",      "encodes", "for",   "from",     "in",
    "information", "is", "it",   "of",      "on",       "or",
    "the",   "to",      "with",  "about",   "activates", "proteins",
    "protein", "sequences", "sequence", "neuron", "that", "this"};

template <std::size_t N>
bool Contains(const std::string_view (&words)[N], std::string_view w) {
  return std::find(std::begin(words), std::end(words), w) != std::end(words);
}

std::optional<Direction> WordDirection(std::string_view w) {
  if (Contains(kHighWords, w)) return Direction::kHigh;
  if (Contains(kLowWords, w)) return Direction::kLow;
  return std::nullopt;
}

const std::vector<std::pair<std::vector<std::string>, Feature>>& TokenizedSynonyms() {
  static const auto* table = [] {
    auto* t = new std::vector<std::pair<std::vector<std::string>, Feature>>();
    for (const Synonym& s : kSynonyms) t->emplace_back(WordTokens(s.phrase), s.feature);
    return t;
  }();
  return *table;
}

bool MatchesAt(std::span<const std::string> tokens, std::size_t pos,
               std::span<const std::string> phrase) {
  if (phrase.empty() || pos + phrase.size() > tokens.size()) return false;
  for (std::size_t k = 0; k < phrase.size(); ++k) {
    if (tokens[pos + k] != phrase[k]) return false;
  }
  return true;
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string Trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::optional<FeatureMention> FindFeatureMention(
    std::span<const std::string> tokens) {
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    std::optional<FeatureMention> best;
    for (const auto& [phrase, feature] : TokenizedSynonyms()) {
      if (MatchesAt(tokens, pos, phrase) &&
          (!best || phrase.size() > best->length)) {
        best = FeatureMention{feature, pos, phrase.size()};
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

std::vector<Feature> AllFeatureMentions(std::span<const std::string> tokens) {
  std::vector<Feature> out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    auto m = FindFeatureMention(tokens.subspan(pos));
    if (!m) break;
    if (std::find(out.begin(), out.end(), m->feature) == out.end()) {
      out.push_back(m->feature);
    }
    pos += m->begin + m->length;
  }
  return out;
}

Direction MentionDirection(std::span<const std::string> tokens,
                           const FeatureMention& mention) {
  for (std::size_t i = mention.begin; i-- > 0;) {
    if (auto d = WordDirection(tokens[i])) return *d;
  }
  for (std::size_t i = mention.begin + mention.length; i < tokens.size(); ++i) {
    if (auto d = WordDirection(tokens[i])) return *d;
  }
  return Direction::kHigh;
}

std::vector<std::size_t> FindPhrase(std::span<const std::string> tokens,
                                    std::span<const std::string> phrase) {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    if (MatchesAt(tokens, pos, phrase)) out.push_back(pos);
  }
  return out;
}

bool IsStopword(std::string_view word) { return Contains(kStopwords, word); }

std::string RenderTemplate(
    std::string_view tmpl,
    std::span<const std::pair<std::string_view, std::string>> values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t best_at = std::string_view::npos;
    const std::pair<std::string_view, std::string>* best = nullptr;
    for (const auto& kv : values) {
      const std::size_t at = tmpl.find(kv.first, pos);
      if (at < best_at) {
        best_at = at;
        best = &kv;
      }
    }
    if (best == nullptr) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, best_at - pos));
    out.append(best->second);
    pos = best_at + best->first.size();
  }
  return out;
}

std::string FormatFixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

}  // namespace plmneuron
