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
//
// Brute-force reference implementations used only by tests. Deliberately
// naive: they enumerate entire outcome spaces instead of sharing any
// binomial machinery with the library, so agreement is meaningful.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace modecurve::oracle {

// Majority-win probability by enumerating all 2^n value patterns of a bin
// holding n instances. Usable for n up to ~20.
inline double majority_win_prob_enum(int n, double p) {
  if (n == 0) return 0.5;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int ones = __builtin_popcount(mask);
    const double prob =
        std::pow(p, ones) * std::pow(1.0 - p, n - ones);
    if (2 * ones > n) {
      total += prob;
    } else if (2 * ones == n) {
      total += 0.5 * prob;
    }
  }
  return total;
}

// Expected accuracy of the mode learner on uniform bins by enumerating
// every training outcome: all num_bins^m placements of the m instances
// crossed with all 2^m majority/minority patterns. Feasible only for tiny
// problems (num_bins^m * 2^m outcomes).
inline double expected_accuracy_enum(int num_bins, int m, double p) {
  const double bin_prob = 1.0 / num_bins;
  double ea = 0.0;
  std::vector<int> placement(static_cast<std::size_t>(m), 0);
  while (true) {
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> total(static_cast<std::size_t>(num_bins), 0);
      std::vector<int> matches(static_cast<std::size_t>(num_bins), 0);
      for (int i = 0; i < m; ++i) {
        ++total[static_cast<std::size_t>(placement[static_cast<std::size_t>(i)])];
        if (mask & (1u << i)) {
          ++matches[static_cast<std::size_t>(placement[static_cast<std::size_t>(i)])];
        }
      }
      const int ones = __builtin_popcount(mask);
      const double outcome_prob = std::pow(bin_prob, m) * std::pow(p, ones) *
                                  std::pow(1.0 - p, m - ones);
      // Accuracy of the trained learner on a fresh draw, averaged over the
      // test bin and the tie/empty coin flips.
      double acc = 0.0;
      for (int b = 0; b < num_bins; ++b) {
        const auto bu = static_cast<std::size_t>(b);
        double bin_acc;
        if (total[bu] == 0) {
          bin_acc = 0.5;  // empty bin: random guess
        } else if (2 * matches[bu] > total[bu]) {
          bin_acc = p;  // learned the majority value
        } else if (2 * matches[bu] < total[bu]) {
          bin_acc = 1.0 - p;  // learned the minority value
        } else {
          bin_acc = 0.5;  // tie: coin flip between the two
        }
        acc += bin_prob * bin_acc;
      }
      ea += outcome_prob * acc;
    }
    // Next placement, odometer style.
    int pos = 0;
    while (pos < m) {
      placement[static_cast<std::size_t>(pos)] += 1;
      if (placement[static_cast<std::size_t>(pos)] < num_bins) break;
      placement[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == m) break;
  }
  return ea;
}

}  // namespace modecurve::oracle
