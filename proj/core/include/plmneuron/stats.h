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

#ifndef PLMNEURON_STATS_H_
#define PLMNEURON_STATS_H_

#include <span>
#include <vector>

namespace plmneuron {

// Product-moment correlation, computed in two passes (means, then centered
// sums). Throws Error for mismatched or too-short inputs and
// UndefinedCorrelationError when either side has zero variance.
double Pearson(std::span<const double> xs, std::span<const double> ys);

// Fraction of `sorted_values` below x, counting ties as one half. 0 for an
// empty table.
double EmpiricalQuantile(std::span<const double> sorted_values, double x);

// round(10 * phi), half-up, for phi in [0, 1]. Throws Error otherwise.
int Bucketize(double phi);

struct NormalizationStats {
  double min = 0.0;
  double max = 0.0;
  bool dead() const { return !(max > min); }
  // (v - min) / (max - min) clamped to [0, 1]; 0 for a dead neuron.
  double Apply(double v) const;

  friend bool operator==(const NormalizationStats&,
                         const NormalizationStats&) = default;
};

// Min-max statistics of a non-empty value list.
NormalizationStats ComputeStats(std::span<const double> values);

// Applies ComputeStats(values) to every value.
std::vector<double> Normalize(std::span<const double> values,
                              bool* dead = nullptr);

}  // namespace plmneuron

#endif  // PLMNEURON_STATS_H_
