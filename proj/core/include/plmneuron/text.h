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

#ifndef PLMNEURON_TEXT_H_
#define PLMNEURON_TEXT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plmneuron/descriptors.h"

namespace plmneuron {

std::string ToLower(std::string_view text);

// Lowercased maximal runs of ASCII letters and digits.
std::vector<std::string> WordTokens(std::string_view text);

// Trims ASCII whitespace from both ends.
std::string Trim(std::string_view text);

// A descriptor mention found in tokenized text.
struct FeatureMention {
  Feature feature;
  std::size_t begin = 0;  // first token of the phrase
  std::size_t length = 0;  // phrase length in tokens
};

// Earliest descriptor phrase in `tokens`; at equal start the longer phrase
// wins. Phrases come from the fixed synonym table (e.g. "hydrophobic" and
// "hydropathy" name gravy, "unstable" names instability_index).
std::optional<FeatureMention> FindFeatureMention(
    std::span<const std::string> tokens);

// Every descriptor mentioned anywhere in `tokens`, in first-mention order.
std::vector<Feature> AllFeatureMentions(std::span<const std::string> tokens);

enum class Direction { kHigh, kLow };

// Direction word closest before the mention, else the first after it, else
// kHigh.
Direction MentionDirection(std::span<const std::string> tokens,
                           const FeatureMention& mention);

// Start indices of every occurrence of `phrase` as consecutive tokens.
std::vector<std::size_t> FindPhrase(std::span<const std::string> tokens,
                                    std::span<const std::string> phrase);

// Words treated as content-free when comparing phrases.
bool IsStopword(std::string_view word);

// Replaces each `{key}`-style placeholder (the literal key text) in one
// left-to-right pass; substituted values are not rescanned.
std::string RenderTemplate(
    std::string_view tmpl,
    std::span<const std::pair<std::string_view, std::string>> values);

// Printf-style "%.4f".
std::string FormatFixed4(double value);

}  // namespace plmneuron

#endif  // PLMNEURON_TEXT_H_
