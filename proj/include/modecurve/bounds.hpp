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

#include <optional>
#include <vector>

#include "modecurve/core_math.hpp"

namespace modecurve {

/// Truncation controls for g_lower_bound.
struct GApproxParams {
  /// Number of outer series terms beyond the first (j = 0..outer_terms).
  /// Empty selects the adaptive rule: stop once a term falls below
  /// term_eps times the accumulated sum.
  std::optional<long long> outer_terms;
  /// Inner sums cover the binomial(m, r) bulk plus this many standard
  /// deviations; the bound stays valid for any value > 0, only its
  /// tightness changes.
  double k_margin = 12.0;
  double term_eps = 1e-12;

  void validate() const;
};

/// The truncation plan g_lower_bound settles on: outer term count g and the
/// inner cutoff k_j for each j = 0..g. outer_terms is -1 when m = 0 and the
/// series is empty.
struct GTruncation {
  long long outer_terms = -1;
  std::vector<long long> inner_limits;
};

/// Probability that a bin of probability bin_prob receives none of m
/// independent training draws: (1 - bin_prob)^m.
double empty_bin_prob_exact(double bin_prob, long long m);

/// Classical upper bound e^(-m / num_bins) on the empty-bin probability of
/// a uniform bin. Strictly exceeds the exact value for every m >= 1.
double empty_bin_prob_bound(long long num_bins, long long m);

/// Classical accuracy lower bound for a bin that received at least one
/// training instance: 1 - 2 (1 - oa), where oa is the optimal accuracy.
double nonempty_ea_bound(double oa);

/// The classical overall lower bound on expected accuracy under uniform
/// bins: (1 - e^(-m/B)) (2p - 1) + e^(-m/B) / 2. Plateaus at 2p - 1.
double old_overall_bound(long long m, long long num_bins, double p);

/// Exact expected accuracy under uniform bins:
/// 1 - p + (2p - 1) G(m, 1/B, p), inheriting g_exact's truncation error.
AccuracyEstimate ea_uniform(long long m, long long num_bins, double p,
                            double trunc_eps = 1e-12);

/// Cheap, provable lower bound on G(m, r, p) for r in (0, 1), p in (0.5, 1].
///
/// Two convergent series are summed, both rigorous underestimates:
///  * strict-majority part: the double sum over minority counts j and bin
///    occupancies n <= k_j, with the falling factorial m!/(m-n)! replaced by
///    (m - k_j)^n so each inner sum collapses to a short exponential series;
///  * tie part: half the tie probability at each even occupancy 2t, with the
///    same falling-factorial device at cutoff 2t. Without this half-tie mass
///    the bound would be loose by up to ~0.2 near m r = 1 and could never
///    track g_exact closely.
/// Cost is O(g * max k_j) with no large-m blowup.
double g_lower_bound(long long m, double r, double p,
                     const GApproxParams& params = {});

/// The truncation plan (g and k_0..k_g) that g_lower_bound would use.
/// k_j = min(m, ceil(m r + k_margin sqrt(m r (1 - r))) + 2j + 1).
GTruncation choose_truncation(long long m, double r, double p,
                              const GApproxParams& params = {});

/// Result of inverting the expected-accuracy curve.
struct MinTrainingSize {
  bool reachable = false;
  long long training_size = 0;  // meaningful only when reachable
  double asymptote = 0.0;       // the supremum of the curve, i.e. p
};

/// Smallest m with ea_uniform(m, num_bins, p) >= target_ea. Targets at or
/// above the asymptote p are reported unreachable rather than diverging.
MinTrainingSize min_training_size(double target_ea, long long num_bins,
                                  double p);

}  // namespace modecurve
