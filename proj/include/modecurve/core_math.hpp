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

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace modecurve {

/// How an accuracy figure was produced.
enum class Method { exact, old_bound, g_lower_bound, simulated };

const char* to_string(Method method);

/// A learning problem: |B| equally important bins, each with a majority
/// value of constant probability p, and a training budget of m instances.
struct ProblemSpec {
  long long num_bins = 1;
  double majority_prob = 0.5;  // p, in [0.5, 1]
  long long training_size = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Per-bin view of a problem: Pr(b) and Pr(v_b | b) for every bin.
struct BinTable {
  std::vector<double> bin_probs;
  std::vector<double> majority_probs;

  static BinTable uniform(long long num_bins, double majority_prob);
  void validate() const;
};

/// An accuracy in [0, 1] tagged with the method that produced it.
struct AccuracyEstimate {
  double value = 0.0;
  Method method = Method::exact;
  std::string detail;
};

/// Immutable table of cumulative log factorials, ln(0!) .. ln(max_n!).
///
/// Snapshots are cached process-wide; acquire() returns a snapshot at least
/// as large as requested. Entries are accumulated in compensated extended
/// precision so that differences of entries near n = 10^6 are still good to
/// ~1e-12 absolute.
class LogFactorialTable {
 public:
  static std::shared_ptr<const LogFactorialTable> acquire(std::size_t max_n);

  double log_factorial(std::size_t n) const { return table_[n]; }
  double log_choose(std::size_t n, std::size_t k) const {
    return table_[n] - table_[k] - table_[n - k];
  }
  std::size_t max_n() const { return table_.size() - 1; }

 private:
  explicit LogFactorialTable(std::size_t max_n);
  std::vector<double> table_;
};

/// ln of the binomial probability mass C(n,k) q^k (1-q)^(n-k).
///
/// Works in log space throughout; n up to 10^6 neither overflows nor
/// underflows. Uses the convention 0^0 = 1, so q = 0 or q = 1 yield log
/// probability 0 or -infinity as appropriate. Throws std::domain_error for
/// k > n or q outside [0, 1].
double log_binomial_pmf(long long k, long long n, double q);

/// Probability that the majority value wins a bin holding n training
/// instances whose values are iid Bernoulli(p): the upper binomial tail
/// above n/2 plus, for even n (including n = 0), half the probability of an
/// exact tie. T(0, p) = 1/2 for every p.
double majority_win_prob(long long n, double p);

/// Expected accuracy on a fresh test instance from a bin that held n
/// training instances: p T(n,p) + (1-p)(1 - T(n,p)).
double bin_accuracy(long long n, double p);

/// G(m, r, p) = sum_n binomial(n; m, r) T(n, p): the chance that a bin of
/// probability r ends up predicting its majority value after m total
/// training draws. The outer sum is truncated to the contiguous window
/// around the mode holding all but at most trunc_eps of the binomial(m, r)
/// mass, so the result carries absolute error <= trunc_eps.
double g_exact(long long m, double r, double p, double trunc_eps);

/// Accuracy of always predicting each bin's majority value (the learner's
/// asymptote): sum_b Pr(b) Pr(v_b | b).
double optimal_accuracy(const BinTable& table);

/// Expected accuracy of a learner that outputs bin b's majority value with
/// probability learn_probs[b]: sum_b Pr(b) [l_b q_b + (1-l_b)(1-q_b)].
double expected_accuracy_table(const BinTable& table,
                               std::span<const double> learn_probs);

}  // namespace modecurve
