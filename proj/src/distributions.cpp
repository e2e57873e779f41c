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

#include "modecurve/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace modecurve {

namespace {

long double weight_sum(const std::vector<double>& weights) {
  long double sum = 0.0L;
  for (double w : weights) sum += w;
  return sum;
}

void check_num_bins(long long num_bins) {
  if (num_bins < 1) {
    throw std::invalid_argument("distribution: num_bins must be >= 1");
  }
}

}  // namespace

const char* to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::uniform: return "uniform";
    case DistributionKind::zipf: return "zipf";
    case DistributionKind::custom: return "custom";
  }
  return "unknown";
}

void BinDistribution::validate() const {
  if (weights.empty()) {
    throw std::invalid_argument("BinDistribution: no bins");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "BinDistribution: weights must be finite and >= 0");
    }
  }
  const long double sum = weight_sum(weights);
  if (std::fabs(static_cast<double>(sum) - 1.0) > 1e-12) {
    throw std::invalid_argument("BinDistribution: weights must sum to 1");
  }
  if (kind == DistributionKind::uniform) {
    const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    if (*hi - *lo > 1e-15) {
      throw std::invalid_argument(
          "BinDistribution: uniform weights must be equal");
    }
  }
  if (kind == DistributionKind::zipf) {
    for (std::size_t n = 0; n < weights.size(); ++n) {
      // Pr(rank n) * (n + 1) should be flat at weights[0].
      const double scaled = weights[n] * static_cast<double>(n + 1);
      if (std::fabs(scaled - weights[0]) > 1e-12 * weights[0]) {
        throw std::invalid_argument(
            "BinDistribution: zipf weights must follow a 1/rank profile");
      }
    }
  }
}

BinDistribution uniform_weights(long long num_bins) {
  check_num_bins(num_bins);
  BinDistribution dist;
  dist.kind = DistributionKind::uniform;
  dist.weights.assign(static_cast<std::size_t>(num_bins),
                      1.0 / static_cast<double>(num_bins));
  dist.validate();
  return dist;
}

BinDistribution zipf_weights(long long num_bins) {
  check_num_bins(num_bins);
  long double harmonic = 0.0L;
  for (long long n = 1; n <= num_bins; ++n) {
    harmonic += 1.0L / static_cast<long double>(n);
  }
  BinDistribution dist;
  dist.kind = DistributionKind::zipf;
  dist.weights.resize(static_cast<std::size_t>(num_bins));
  for (long long n = 1; n <= num_bins; ++n) {
    dist.weights[static_cast<std::size_t>(n - 1)] = static_cast<double>(
        1.0L / (static_cast<long double>(n) * harmonic));
  }
  // Fold the rounding residual into the heaviest bin; it is ~1e-17 relative
  // there, far inside the 1e-12 profile tolerance.
  dist.weights[0] +=
      static_cast<double>(1.0L - weight_sum(dist.weights));
  dist.validate();
  return dist;
}

BinDistribution custom_weights(std::vector<double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("custom distribution: no weights given");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "custom distribution: weights must be finite and >= 0");
    }
  }
  const long double sum = weight_sum(weights);
  if (std::fabs(static_cast<double>(sum) - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "custom distribution: weights sum to " << static_cast<double>(sum)
        << ", more than 1e-6 away from 1";
    throw std::invalid_argument(msg.str());
  }
  for (double& w : weights) {
    w = static_cast<double>(static_cast<long double>(w) / sum);
  }
  BinDistribution dist;
  dist.kind = DistributionKind::custom;
  dist.weights = std::move(weights);
  // Fold the rounding residual into the heaviest bin, which can absorb it
  // without going negative.
  auto heaviest = std::max_element(dist.weights.begin(), dist.weights.end());
  *heaviest += static_cast<double>(1.0L - weight_sum(dist.weights));
  dist.validate();
  return dist;
}

BinDistribution load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open weights file: " + path);
  }
  std::vector<double> weights;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Tolerate surrounding whitespace and skip blank lines.
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      std::ostringstream msg;
      msg << path << ": line " << line_no << ": expected a number, got \""
          << token << "\"";
      throw std::runtime_error(msg.str());
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      std::ostringstream msg;
      msg << path << ": line " << line_no
          << ": weights must be finite and >= 0";
      throw std::runtime_error(msg.str());
    }
    weights.push_back(value);
  }
  if (weights.empty()) {
    throw std::runtime_error(path + ": no weights found");
  }
  return custom_weights(std::move(weights));
}

double expected_relevant_instances(const BinDistribution& dist, long long m) {
  dist.validate();
  if (m < 0) {
    throw std::domain_error("expected_relevant_instances: m must be >= 0");
  }
  long double sq = 0.0L;
  for (double w : dist.weights) {
    sq += static_cast<long double>(w) * w;
  }
  return static_cast<double>(m) * static_cast<double>(sq);
}

double zipf_relevant_estimate(long long m, long long num_bins) {
  check_num_bins(num_bins);
  if (m < 0) {
    throw std::domain_error("zipf_relevant_estimate: m must be >= 0");
  }
  const double scaled = 0.56 * static_cast<double>(num_bins);
  if (!(scaled > 1.0)) {
    throw std::domain_error(
        "zipf_relevant_estimate: needs 0.56 * num_bins > 1");
  }
  const double log_term = std::log(scaled);
  return 1.6 * static_cast<double>(m) / (log_term * log_term);
}

}  // namespace modecurve
