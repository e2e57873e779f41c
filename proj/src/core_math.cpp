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

#include "modecurve/core_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace modecurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mutex g_table_mutex;
std::shared_ptr<const LogFactorialTable> g_table;  // guarded by g_table_mutex

// ln pmf with a caller-supplied table (must cover n). Domain already checked.
double log_pmf_with(const LogFactorialTable& lf, long long k, long long n,
                    double q) {
  if (q == 0.0) return k == 0 ? 0.0 : -kInf;
  if (q == 1.0) return k == n ? 0.0 : -kInf;
  double s = lf.log_choose(static_cast<std::size_t>(n),
                           static_cast<std::size_t>(k));
  if (k > 0) s += static_cast<double>(k) * std::log(q);
  if (k < n) s += static_cast<double>(n - k) * std::log1p(-q);
  return s;
}

long long binomial_mode(long long n, double q) {
  auto mode = static_cast<long long>(std::floor(static_cast<double>(n + 1) * q));
  return std::clamp<long long>(mode, 0, n);
}

// Majority-win probability using a shared table. Sums the strict-majority
// tail from whichever side of n/2 excludes the binomial mode, so the walk
// only ever descends; the remaining tail is bounded geometrically and the
// loop stops once that bound is negligible relative to the accumulated sum.
double majority_win_prob_with(const LogFactorialTable& lf, long long n,
                              double p) {
  const long long cutoff = n / 2 + 1;  // smallest strict-majority count
  double tie = 0.0;
  if (n % 2 == 0) {
    tie = 0.5 * std::exp(log_pmf_with(lf, n / 2, n, p));
  }
  if (cutoff > n) return tie;  // n == 0: coin flip on an empty bin

  const long long mode = binomial_mode(n, p);
  const bool sum_upper = mode < cutoff;
  double acc = 0.0;
  double prev = -1.0;
  long long i = sum_upper ? cutoff : cutoff - 1;
  const long long step = sum_upper ? 1 : -1;
  const long long last = sum_upper ? n : 0;
  while (true) {
    const double t = std::exp(log_pmf_with(lf, i, n, p));
    acc += t;
    if (prev >= 0.0 && t < prev) {
      const double rho = t / prev;
      if (t * rho / (1.0 - rho) < acc * 1e-19 + 1e-300) break;
    }
    if (t == 0.0 || i == last) break;
    prev = t;
    i += step;
  }
  return sum_upper ? acc + tie : (1.0 - acc) + tie;
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::exact: return "exact";
    case Method::old_bound: return "old_bound";
    case Method::g_lower_bound: return "g_lower_bound";
    case Method::simulated: return "simulated";
  }
  return "unknown";
}

void ProblemSpec::validate() const {
  if (num_bins < 1) {
    throw std::invalid_argument("ProblemSpec: num_bins must be >= 1");
  }
  if (!(majority_prob >= 0.5 && majority_prob <= 1.0)) {
    throw std::invalid_argument(
        "ProblemSpec: majority_prob must be in [0.5, 1]");
  }
  if (training_size < 0) {
    throw std::invalid_argument("ProblemSpec: training_size must be >= 0");
  }
}

BinTable BinTable::uniform(long long num_bins, double majority_prob) {
  ProblemSpec spec{num_bins, majority_prob, 0};
  spec.validate();
  BinTable table;
  table.bin_probs.assign(static_cast<std::size_t>(num_bins),
                         1.0 / static_cast<double>(num_bins));
  table.majority_probs.assign(static_cast<std::size_t>(num_bins),
                              majority_prob);
  return table;
}

void BinTable::validate() const {
  if (bin_probs.empty()) {
    throw std::invalid_argument("BinTable: must hold at least one bin");
  }
  if (bin_probs.size() != majority_probs.size()) {
    throw std::invalid_argument(
        "BinTable: bin_probs and majority_probs must have equal length");
  }
  long double sum = 0.0L;
  for (double w : bin_probs) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "BinTable: bin probabilities must be finite and >= 0");
    }
    sum += w;
  }
  if (std::fabs(static_cast<double>(sum) - 1.0) > 1e-12) {
    throw std::invalid_argument("BinTable: bin probabilities must sum to 1");
  }
  for (double q : majority_probs) {
    if (!(q >= 0.5 && q <= 1.0)) {
      throw std::invalid_argument(
          "BinTable: majority probabilities must be in [0.5, 1]");
    }
  }
}

LogFactorialTable::LogFactorialTable(std::size_t max_n) {
  table_.resize(max_n + 1);
  table_[0] = 0.0;
  // Kahan-compensated accumulation in long double: keeps every entry
  // accurate to a few ulps even at n = 10^6, where the plain running sum
  // could drift by ~1e-7 absolute.
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (std::size_t i = 1; i <= max_n; ++i) {
    const long double term =
        std::log(static_cast<long double>(i)) - comp;
    const long double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    table_[i] = static_cast<double>(sum);
  }
}

std::shared_ptr<const LogFactorialTable> LogFactorialTable::acquire(
    std::size_t max_n) {
  std::lock_guard<std::mutex> lock(g_table_mutex);
  if (!g_table || g_table->max_n() < max_n) {
    std::size_t target = std::max<std::size_t>(max_n, 1024);
    if (g_table) target = std::max(target, g_table->max_n() * 2);
    g_table.reset(new LogFactorialTable(target));
  }
  return g_table;
}

double log_binomial_pmf(long long k, long long n, double q) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log_binomial_pmf: require 0 <= k <= n");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("log_binomial_pmf: q must be in [0, 1]");
  }
  const auto lf = LogFactorialTable::acquire(static_cast<std::size_t>(n));
  return log_pmf_with(*lf, k, n, q);
}

double majority_win_prob(long long n, double p) {
  if (n < 0) throw std::domain_error("majority_win_prob: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("majority_win_prob: p must be in [0, 1]");
  }
  const auto lf = LogFactorialTable::acquire(static_cast<std::size_t>(n));
  return majority_win_prob_with(*lf, n, p);
}

double bin_accuracy(long long n, double p) {
  const double t = majority_win_prob(n, p);
  return p * t + (1.0 - p) * (1.0 - t);
}

double g_exact(long long m, double r, double p, double trunc_eps) {
  if (m < 0) throw std::domain_error("g_exact: m must be >= 0");
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::domain_error("g_exact: r must be in (0, 1]");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("g_exact: p must be in [0, 1]");
  }
  if (!(trunc_eps > 0.0 && trunc_eps <= 1e-6)) {
    throw std::domain_error("g_exact: trunc_eps must be in (0, 1e-6]");
  }
  const auto lf = LogFactorialTable::acquire(static_cast<std::size_t>(m));

  // Grow a window outward from the binomial(m, r) mode, always taking the
  // heavier neighbour, until it holds mass >= 1 - trunc_eps. Dropped terms
  // have T in [0, 1], so the absolute error is at most trunc_eps.
  const long long mode = binomial_mode(m, r);
  long long lo = mode;
  long long hi = mode;
  double mass = std::exp(log_pmf_with(*lf, mode, m, r));
  double below = lo > 0 ? std::exp(log_pmf_with(*lf, lo - 1, m, r)) : -1.0;
  double above = hi < m ? std::exp(log_pmf_with(*lf, hi + 1, m, r)) : -1.0;
  while (mass < 1.0 - trunc_eps && (lo > 0 || hi < m)) {
    if (below >= above) {
      mass += below;
      --lo;
      below = lo > 0 ? std::exp(log_pmf_with(*lf, lo - 1, m, r)) : -1.0;
    } else {
      mass += above;
      ++hi;
      above = hi < m ? std::exp(log_pmf_with(*lf, hi + 1, m, r)) : -1.0;
    }
  }

  double g = 0.0;
  for (long long n = lo; n <= hi; ++n) {
    const double w = std::exp(log_pmf_with(*lf, n, m, r));
    if (w == 0.0) continue;
    g += w * majority_win_prob_with(*lf, n, p);
  }
  return g;
}

double optimal_accuracy(const BinTable& table) {
  table.validate();
  long double acc = 0.0L;
  for (std::size_t b = 0; b < table.bin_probs.size(); ++b) {
    acc += static_cast<long double>(table.bin_probs[b]) *
           table.majority_probs[b];
  }
  return static_cast<double>(acc);
}

double expected_accuracy_table(const BinTable& table,
                               std::span<const double> learn_probs) {
  table.validate();
  if (learn_probs.size() != table.bin_probs.size()) {
    throw std::invalid_argument(
        "expected_accuracy_table: learn_probs length must match bin count");
  }
  long double acc = 0.0L;
  for (std::size_t b = 0; b < learn_probs.size(); ++b) {
    const double l = learn_probs[b];
    if (!(l >= 0.0 && l <= 1.0)) {
      throw std::invalid_argument(
          "expected_accuracy_table: learn probabilities must be in [0, 1]");
    }
    const double q = table.majority_probs[b];
    acc += static_cast<long double>(table.bin_probs[b]) *
           (l * q + (1.0 - l) * (1.0 - q));
  }
  return static_cast<double>(acc);
}

}  // namespace modecurve
