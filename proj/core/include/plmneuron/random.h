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

#ifndef PLMNEURON_RANDOM_H_
#define PLMNEURON_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace plmneuron {

// Seeded random source whose draws are identical on every platform.
//
// std::mt19937_64 has a standardized output sequence, but the standard
// distributions do not, so all derived draws are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

  // Standard normal via Box-Muller (no cached second value).
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent seeds and stable hashes.
std::uint64_t Mix64(std::uint64_t x);

// FNV-1a over bytes, then Mix64 with `salt`.
std::uint64_t StableHash(std::string_view bytes, std::uint64_t salt);

}  // namespace plmneuron

#endif  // PLMNEURON_RANDOM_H_
