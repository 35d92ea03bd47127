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

#include "plmneuron/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plmneuron/errors.h"

namespace plmneuron {

double Pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error("pearson: length mismatch (" + std::to_string(xs.size()) +
                " vs " + std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) throw Error("pearson: need at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("pearson: zero variance");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  // Exact affine relations can land a few ulps short of +-1.
  if (std::fabs(r) > 1.0 - 4 * std::numeric_limits<double>::epsilon()) {
    return r > 0 ? 1.0 : -1.0;
  }
  return r;
}

double EmpiricalQuantile(std::span<const double> sorted_values, double x) {
  if (sorted_values.empty()) return 0.0;
  const auto lo = std::lower_bound(sorted_values.begin(), sorted_values.end(), x);
  const auto hi = std::upper_bound(lo, sorted_values.end(), x);
  const double less = static_cast<double>(lo - sorted_values.begin());
  const double equal = static_cast<double>(hi - lo);
  return (less + 0.5 * equal) / static_cast<double>(sorted_values.size());
}

int Bucketize(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw Error("bucketize: value " + std::to_string(phi) + " outside [0, 1]");
  }
  // Half steps that land a few ulps low still round up.
  return static_cast<int>(std::floor(10.0 * phi + 0.5 + 1e-9));
}

double NormalizationStats::Apply(double v) const {
  if (dead()) return 0.0;
  return std::clamp((v - min) / (max - min), 0.0, 1.0);
}

NormalizationStats ComputeStats(std::span<const double> values) {
  if (values.empty()) throw Error("normalize: no values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

std::vector<double> Normalize(std::span<const double> values, bool* dead) {
  const NormalizationStats stats = ComputeStats(values);
  if (dead != nullptr) *dead = stats.dead();
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(stats.Apply(v));
  return out;
}

}  // namespace plmneuron
