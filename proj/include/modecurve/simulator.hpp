// Copyright 2026 The modecurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "modecurve/core_math.hpp"
#include "modecurve/distributions.hpp"

namespace modecurve {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// The training-set sizes used by the reference experiment:
/// 0, 1250, 2500, then 5000-step multiples up to 70000.
std::vector<long long> default_m_grid();

/// Full description of a simulation experiment.
struct SimulationConfig {
  long long num_bins = 10000;
  double majority_prob = 0.9;
  BinDistribution distribution;  // empty = filled as uniform by validate()
  std::vector<long long> m_grid = default_m_grid();
  long long repetitions = 30;
  long long test_size = 1000;
  std::uint64_t master_seed = kDefaultSeed;

  /// Throws std::invalid_argument on inconsistent settings; fills an empty
  /// distribution with uniform weights over num_bins.
  void validate();
};

/// Aggregated result for one training-set size.
struct SimulationPoint {
  long long m = 0;
  double mean_accuracy = 0.0;
  double std_dev = 0.0;        // sample standard deviation (n - 1)
  double ci_half_width = 0.0;  // t_(0.975, reps-1) * std_dev / sqrt(reps)
};

/// One point of a theoretical curve; ci_half_width < 0 means "no interval".
struct CurvePoint {
  long long m = 0;
  double value = 0.0;
  double ci_half_width = -1.0;

  bool has_ci() const { return ci_half_width >= 0.0; }
};

struct CurveSeries {
  std::string label;
  Method method = Method::exact;
  std::vector<CurvePoint> points;
};

/// Walker alias table: O(n) build, O(1) categorical sampling from a single
/// uniform double.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights);

  /// Maps u in [0, 1) to a bin index.
  long long sample(double u) const {
    const double scaled = u * static_cast<double>(prob_.size());
    auto idx = static_cast<std::size_t>(scaled);
    if (idx >= prob_.size()) idx = prob_.size() - 1;
    return (scaled - static_cast<double>(idx)) < prob_[idx]
               ? static_cast<long long>(idx)
               : alias_[idx];
  }

  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<long long> alias_;
};

/// Deterministic per-trial seed: a splitmix64-style mix of the master seed,
/// the training-set size, and the trial index. Trials are reproducible in
/// isolation and independent of evaluation order.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, long long m,
                                long long trial_index);

/// Runs one train-and-test trial and returns the fraction of test_size test
/// instances predicted correctly. The alias table must match
/// config.distribution.
double run_trial(const SimulationConfig& config, const AliasTable& bins,
                 long long m, long long trial_index);
double run_trial(const SimulationConfig& config, long long m,
                 long long trial_index);

/// Runs config.repetitions trials per grid point and aggregates them.
std::vector<SimulationPoint> run(SimulationConfig config);

enum class TheoryCurve { exact, old_bound, g_lower_bound, optimal };

const char* to_string(TheoryCurve curve);

/// Evaluates the selected closed-form curves on a grid, for uniform bins.
std::vector<CurveSeries> theoretical_curves(long long num_bins, double p,
                                            std::span<const long long> m_grid,
                                            std::span<const TheoryCurve> which,
                                            double trunc_eps = 1e-12);

}  // namespace modecurve
