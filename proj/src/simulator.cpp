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

#include "modecurve/simulator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "modecurve/bounds.hpp"
#include "modecurve/stats.hpp"

namespace modecurve {

namespace {

// splitmix64 output mixer; full-period, passes the usual avalanche tests.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53-bit uniform in [0, 1); identical across platforms for a given engine
// state, unlike std::uniform_real_distribution.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int next_bit(std::mt19937_64& rng) {
  return static_cast<int>(rng() >> 63);
}

}  // namespace

std::vector<long long> default_m_grid() {
  return {0,     1250,  2500,  5000,  10000, 20000,
          30000, 40000, 50000, 60000, 70000};
}

void SimulationConfig::validate() {
  if (num_bins < 1) {
    throw std::invalid_argument("SimulationConfig: num_bins must be >= 1");
  }
  if (!(majority_prob >= 0.5 && majority_prob <= 1.0)) {
    throw std::invalid_argument(
        "SimulationConfig: majority_prob must be in [0.5, 1]");
  }
  if (distribution.weights.empty()) {
    distribution = uniform_weights(num_bins);
  }
  distribution.validate();
  if (distribution.num_bins() != num_bins) {
    throw std::invalid_argument(
        "SimulationConfig: distribution size must equal num_bins");
  }
  if (m_grid.empty()) {
    throw std::invalid_argument("SimulationConfig: m_grid must be non-empty");
  }
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] < 0) {
      throw std::invalid_argument(
          "SimulationConfig: m_grid entries must be >= 0");
    }
    if (i > 0 && m_grid[i] <= m_grid[i - 1]) {
      throw std::invalid_argument(
          "SimulationConfig: m_grid must be strictly increasing");
    }
  }
  if (repetitions < 2) {
    throw std::invalid_argument(
        "SimulationConfig: repetitions must be >= 2 (the confidence "
        "interval needs a variance estimate)");
  }
  if (test_size < 1) {
    throw std::invalid_argument("SimulationConfig: test_size must be >= 1");
  }
}

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("AliasTable: empty weights");
  prob_.resize(n);
  alias_.resize(n);

  // Vose's method: partition scaled weights into under- and over-full bins,
  // then pair them off.
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n);
  }
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = static_cast<long long>(l);
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are exactly full up to rounding.
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = static_cast<long long>(i);
  }
  for (std::size_t i : small) {
    prob_[i] = 1.0;
    alias_[i] = static_cast<long long>(i);
  }
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, long long m,
                                long long trial_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(m));
  h = mix64(h ^ static_cast<std::uint64_t>(trial_index));
  return h;
}

double run_trial(const SimulationConfig& config, const AliasTable& bins,
                 long long m, long long trial_index) {
  const long long num_bins = config.num_bins;
  const double p = config.majority_prob;
  std::mt19937_64 rng(derive_trial_seed(config.master_seed, m, trial_index));

  // Each bin gets a fresh majority value every trial.
  std::vector<std::uint8_t> majority_value(
      static_cast<std::size_t>(num_bins));
  for (auto& v : majority_value) {
    v = static_cast<std::uint8_t>(next_bit(rng));
  }

  // Training: count per bin how many draws showed the majority value.
  std::vector<std::int32_t> total(static_cast<std::size_t>(num_bins), 0);
  std::vector<std::int32_t> matches(static_cast<std::size_t>(num_bins), 0);
  for (long long i = 0; i < m; ++i) {
    const auto b = static_cast<std::size_t>(bins.sample(next_unit(rng)));
    ++total[b];
    if (next_unit(rng) < p) ++matches[b];
  }

  // The learner keeps each bin's modal observation; ties fall to a coin
  // flip, drawn in bin order. Empty bins stay unresolved (-1).
  std::vector<std::int8_t> learned(static_cast<std::size_t>(num_bins), -1);
  for (std::size_t b = 0; b < learned.size(); ++b) {
    if (total[b] == 0) continue;
    const std::int32_t maj = matches[b];
    const std::int32_t min = total[b] - matches[b];
    if (maj > min) {
      learned[b] = static_cast<std::int8_t>(majority_value[b]);
    } else if (maj < min) {
      learned[b] = static_cast<std::int8_t>(1 - majority_value[b]);
    } else {
      learned[b] = static_cast<std::int8_t>(next_bit(rng));
    }
  }

  // Testing: unresolved bins answer with a fresh coin flip per query.
  long long correct = 0;
  for (long long i = 0; i < config.test_size; ++i) {
    const auto b = static_cast<std::size_t>(bins.sample(next_unit(rng)));
    const int actual = next_unit(rng) < p ? majority_value[b]
                                          : 1 - majority_value[b];
    const int predicted = learned[b] >= 0 ? learned[b] : next_bit(rng);
    if (predicted == actual) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(config.test_size);
}

double run_trial(const SimulationConfig& config, long long m,
                 long long trial_index) {
  const AliasTable bins(config.distribution.weights);
  return run_trial(config, bins, m, trial_index);
}

std::vector<SimulationPoint> run(SimulationConfig config) {
  config.validate();
  const AliasTable bins(config.distribution.weights);
  const double t_crit = student_t_quantile_975(config.repetitions - 1);
  const auto reps = static_cast<std::size_t>(config.repetitions);

  std::vector<SimulationPoint> out;
  out.reserve(config.m_grid.size());
  std::vector<double> acc(reps);
  for (const long long m : config.m_grid) {
    for (std::size_t trial = 0; trial < reps; ++trial) {
      acc[trial] = run_trial(config, bins, m, static_cast<long long>(trial));
    }
    double mean = 0.0;
    for (double a : acc) mean += a;
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (double a : acc) ss += (a - mean) * (a - mean);
    const double sd = std::sqrt(ss / static_cast<double>(reps - 1));
    const double ci = t_crit * sd / std::sqrt(static_cast<double>(reps));
    out.push_back(SimulationPoint{m, mean, sd, ci});
  }
  return out;
}

const char* to_string(TheoryCurve curve) {
  switch (curve) {
    case TheoryCurve::exact: return "exact";
    case TheoryCurve::old_bound: return "old_bound";
    case TheoryCurve::g_lower_bound: return "g_lower_bound";
    case TheoryCurve::optimal: return "optimal";
  }
  return "unknown";
}

std::vector<CurveSeries> theoretical_curves(long long num_bins, double p,
                                            std::span<const long long> m_grid,
                                            std::span<const TheoryCurve> which,
                                            double trunc_eps) {
  std::vector<CurveSeries> out;
  out.reserve(which.size());
  const double r = 1.0 / static_cast<double>(num_bins);
  for (const TheoryCurve curve : which) {
    CurveSeries series;
    series.label = to_string(curve);
    series.points.reserve(m_grid.size());
    switch (curve) {
      case TheoryCurve::exact:
        series.method = Method::exact;
        for (long long m : m_grid) {
          series.points.push_back(
              CurvePoint{m, ea_uniform(m, num_bins, p, trunc_eps).value});
        }
        break;
      case TheoryCurve::old_bound:
        series.method = Method::old_bound;
        for (long long m : m_grid) {
          series.points.push_back(
              CurvePoint{m, old_overall_bound(m, num_bins, p)});
        }
        break;
      case TheoryCurve::g_lower_bound:
        series.method = Method::g_lower_bound;
        for (long long m : m_grid) {
          const double g = g_lower_bound(m, r, p);
          series.points.push_back(
              CurvePoint{m, 1.0 - p + (2.0 * p - 1.0) * g});
        }
        break;
      case TheoryCurve::optimal:
        series.method = Method::exact;
        for (long long m : m_grid) {
          series.points.push_back(CurvePoint{m, p});
        }
        break;
    }
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace modecurve
