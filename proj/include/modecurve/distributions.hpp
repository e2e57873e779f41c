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

#include <string>
#include <vector>

namespace modecurve {

enum class DistributionKind { uniform, zipf, custom };

const char* to_string(DistributionKind kind);

/// A categorical distribution over bins. weights[b] = Pr(bin b); weights
/// always sum to 1 within 1e-12.
struct BinDistribution {
  DistributionKind kind = DistributionKind::uniform;
  std::vector<double> weights;

  long long num_bins() const { return static_cast<long long>(weights.size()); }
  void validate() const;
};

/// Equal weight 1/num_bins per bin.
BinDistribution uniform_weights(long long num_bins);

/// Logarithmic (Zipf, exponent 1) weights: Pr(rank n) proportional to 1/n.
/// The harmonic normalizer is accumulated in extended precision and the
/// rounding residual folded into the heaviest bin, keeping the sum within
/// 1e-12 of 1 while preserving the 1/n profile to 1e-12 relative.
BinDistribution zipf_weights(long long num_bins);

/// Wraps explicit per-bin probabilities. Sums within 1e-6 of 1 are
/// renormalized exactly; anything further off is rejected, as are negative,
/// non-finite, or empty weight vectors.
BinDistribution custom_weights(std::vector<double> weights);

/// Reads one probability per line (blank lines ignored) and passes the
/// result to custom_weights. Parse errors name the offending line.
BinDistribution load_weights_file(const std::string& path);

/// Expected number of training instances that land in the same bin as a
/// random test instance: m * sum_b Pr(b)^2. Exactly linear in m.
double expected_relevant_instances(const BinDistribution& dist, long long m);

/// Closed-form estimate 1.6 m / ln(0.56 B)^2 for the Zipf relevant-instance
/// count. Requires 0.56 B > 1 so the logarithm is positive.
double zipf_relevant_estimate(long long m, long long num_bins);

}  // namespace modecurve
