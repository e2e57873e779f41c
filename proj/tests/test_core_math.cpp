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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"

using namespace modecurve;

namespace {

// Plain double-precision binomial pmf from a Pascal triangle; exact enough
// for n <= 40 to serve as an independent check.
double pmf_direct(int k, int n, double q) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1.0);
    for (int j = 1; j < i; ++j) {
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
  }
  return c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] *
         std::pow(q, k) * std::pow(1.0 - q, n - k);
}

}  // namespace

TEST_CASE("log_binomial_pmf: edge conventions") {
  CHECK(log_binomial_pmf(0, 0, 0.3) == 0.0);
  CHECK(log_binomial_pmf(1, 1, 0.9) == doctest::Approx(std::log(0.9)).epsilon(1e-14));
  // 0^0 = 1 at the q edges
  CHECK(log_binomial_pmf(0, 5, 0.0) == 0.0);
  CHECK(log_binomial_pmf(5, 5, 1.0) == 0.0);
  CHECK(log_binomial_pmf(3, 5, 0.0) == -std::numeric_limits<double>::infinity());
  CHECK(log_binomial_pmf(3, 5, 1.0) == -std::numeric_limits<double>::infinity());
  CHECK(log_binomial_pmf(0, 0, 0.0) == 0.0);
  CHECK(log_binomial_pmf(0, 0, 1.0) == 0.0);
}

TEST_CASE("log_binomial_pmf: domain errors") {
  CHECK_THROWS_AS(log_binomial_pmf(6, 5, 0.5), std::domain_error);
  CHECK_THROWS_AS(log_binomial_pmf(-1, 5, 0.5), std::domain_error);
  CHECK_THROWS_AS(log_binomial_pmf(0, -1, 0.5), std::domain_error);
  CHECK_THROWS_AS(log_binomial_pmf(2, 5, -0.1), std::domain_error);
  CHECK_THROWS_AS(log_binomial_pmf(2, 5, 1.1), std::domain_error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(log_binomial_pmf(2, 5, nan), std::domain_error);
}

TEST_CASE("log_binomial_pmf: agrees with direct evaluation for small n") {
  for (int n = 0; n <= 25; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (double q : {0.1, 0.37, 0.5, 0.9}) {
        const double expected = pmf_direct(k, n, q);
        const double got = std::exp(log_binomial_pmf(k, n, q));
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("log_binomial_pmf: central value at n = 10000") {
  // Pinned to an independent 50-digit evaluation of ln C(10000,5000) - 10000 ln 2.
  CHECK(log_binomial_pmf(5000, 10000, 0.5) ==
        doctest::Approx(-4.830986538632777).epsilon(1e-10));
}

TEST_CASE("log_binomial_pmf: masses sum to one") {
  for (long long n : {10LL, 100LL, 1000LL}) {
    for (double q : {0.3, 0.5, 1e-4}) {
      double sum = 0.0;
      for (long long k = 0; k <= n; ++k) {
        sum += std::exp(log_binomial_pmf(k, n, q));
      }
      // Accumulation alone costs ~n ulps, so the budget scales with n.
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_binomial_pmf: large-n values stay finite and sane") {
  const double v = log_binomial_pmf(500000, 1000000, 0.5);
  CHECK(std::isfinite(v));
  // ln pmf at the center of binomial(n, 1/2) is about -ln sqrt(pi n / 2)
  CHECK(v == doctest::Approx(-0.5 * std::log(3.141592653589793 * 500000.0))
                 .epsilon(1e-6));
}

TEST_CASE("majority_win_prob: hand-checked small cases") {
  CHECK(majority_win_prob(0, 0.9) == 0.5);
  CHECK(majority_win_prob(0, 0.2) == 0.5);
  CHECK(majority_win_prob(1, 0.9) == doctest::Approx(0.9).epsilon(1e-14));
  // n = 2: win outright (p^2) or tie (2pq, half credit)
  CHECK(majority_win_prob(2, 0.9) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(majority_win_prob(3, 0.9) == doctest::Approx(0.972).epsilon(1e-14));
}

TEST_CASE("majority_win_prob: matches full enumeration up to n = 15") {
  for (int n = 0; n <= 15; ++n) {
    for (double p : {0.2, 0.5, 0.6, 0.9, 0.97}) {
      CHECK(majority_win_prob(n, p) ==
            doctest::Approx(oracle::majority_win_prob_enum(n, p))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("majority_win_prob: p and 1-p outcomes are complementary") {
  for (long long n = 0; n <= 500; ++n) {
    for (double p : {0.6, 0.9}) {
      const double sum = majority_win_prob(n, p) + majority_win_prob(n, 1.0 - p);
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }
  for (long long n : {1000LL, 10000LL, 999999LL, 1000000LL}) {
    for (double p : {0.51, 0.75, 0.97}) {
      const double sum = majority_win_prob(n, p) + majority_win_prob(n, 1.0 - p);
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("majority_win_prob: degenerate p") {
  for (long long n : {1LL, 2LL, 7LL, 100LL}) {
    CHECK(majority_win_prob(n, 1.0) == 1.0);
    CHECK(majority_win_prob(n, 0.0) == 0.0);
  }
  CHECK(majority_win_prob(0, 1.0) == 0.5);
  CHECK(majority_win_prob(0, 0.0) == 0.5);
}

TEST_CASE("majority_win_prob: domain errors") {
  CHECK_THROWS_AS(majority_win_prob(-1, 0.5), std::domain_error);
  CHECK_THROWS_AS(majority_win_prob(3, -0.01), std::domain_error);
  CHECK_THROWS_AS(majority_win_prob(3, 1.01), std::domain_error);
}

TEST_CASE("bin_accuracy: hand-checked values and limits") {
  CHECK(bin_accuracy(0, 0.9) == 0.5);
  CHECK(bin_accuracy(1, 0.9) == doctest::Approx(0.82).epsilon(1e-14));
  CHECK(bin_accuracy(3, 0.9) == doctest::Approx(0.8776).epsilon(1e-14));
  // Large n: the bin almost surely answers its majority value.
  CHECK(bin_accuracy(100001, 0.9) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("bin_accuracy: non-decreasing in n, and even n adds nothing") {
  for (double p : {0.6, 0.9}) {
    double prev = bin_accuracy(0, p);
    for (long long n = 1; n <= 500; ++n) {
      const double cur = bin_accuracy(n, p);
      CHECK(cur >= prev - 1e-14);
      prev = cur;
    }
    for (long long k = 1; k <= 100; ++k) {
      CHECK(std::fabs(bin_accuracy(2 * k, p) - bin_accuracy(2 * k - 1, p)) <=
            1e-12);
    }
  }
}

TEST_CASE("g_exact: hand-checked values") {
  CHECK(g_exact(0, 0.5, 0.9, 1e-12) == 0.5);
  // One draw: hit the bin (prob 1/2) and answer right with prob 0.9,
  // or miss it and coin-flip.
  CHECK(g_exact(1, 0.5, 0.9, 1e-12) == doctest::Approx(0.70).epsilon(1e-13));
  // r = 1 collapses to a single always-hit bin.
  for (long long m : {1LL, 5LL, 40LL}) {
    CHECK(g_exact(m, 1.0, 0.9, 1e-12) ==
          doctest::Approx(majority_win_prob(m, 0.9)).epsilon(1e-13));
  }
}

TEST_CASE("g_exact: indifferent learner stays at one half") {
  for (long long m : {0LL, 1LL, 17LL, 1000LL}) {
    for (double r : {0.001, 0.3, 1.0}) {
      CHECK(std::fabs(g_exact(m, r, 0.5, 1e-12) - 0.5) <= 1e-12);
    }
  }
}

TEST_CASE("g_exact: windowed evaluation matches the full sum") {
  const auto full_sum = [](long long m, double r, double p) {
    double g = 0.0;
    for (long long n = 0; n <= m; ++n) {
      g += std::exp(log_binomial_pmf(n, m, r)) * majority_win_prob(n, p);
    }
    return g;
  };
  for (long long m : {50LL, 313LL, 1000LL, 2000LL}) {
    for (double r : {0.01, 0.37, 0.5}) {
      for (double p : {0.6, 0.9}) {
        CHECK(g_exact(m, r, p, 1e-12) ==
              doctest::Approx(full_sum(m, r, p)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("g_exact: p and 1-p results are complementary") {
  for (long long m : {0LL, 1LL, 2LL, 3LL, 5LL, 8LL, 13LL, 21LL, 34LL, 55LL,
                      89LL, 144LL, 200LL}) {
    for (double r : {0.01, 0.1, 0.5}) {
      for (double p : {0.6, 0.75, 0.9}) {
        const double sum =
            g_exact(m, r, p, 1e-12) + g_exact(m, r, 1.0 - p, 1e-12);
        CHECK(std::fabs(sum - 1.0) <= 1e-10);
      }
    }
  }
}

TEST_CASE("g_exact: domain errors") {
  CHECK_THROWS_AS(g_exact(-1, 0.5, 0.9, 1e-12), std::domain_error);
  CHECK_THROWS_AS(g_exact(10, 0.0, 0.9, 1e-12), std::domain_error);
  CHECK_THROWS_AS(g_exact(10, 1.1, 0.9, 1e-12), std::domain_error);
  CHECK_THROWS_AS(g_exact(10, 0.5, 1.2, 1e-12), std::domain_error);
  CHECK_THROWS_AS(g_exact(10, 0.5, 0.9, 0.0), std::domain_error);
  CHECK_THROWS_AS(g_exact(10, 0.5, 0.9, 1e-5), std::domain_error);
  CHECK_THROWS_AS(g_exact(10, 0.5, 0.9, -1e-9), std::domain_error);
}

TEST_CASE("optimal_accuracy") {
  CHECK(optimal_accuracy(BinTable::uniform(10000, 0.9)) ==
        doctest::Approx(0.9).epsilon(1e-12));
  CHECK(optimal_accuracy(BinTable::uniform(7, 1.0)) == doctest::Approx(1.0));
  BinTable mixed;
  mixed.bin_probs = {0.25, 0.75};
  mixed.majority_probs = {0.6, 0.8};
  CHECK(optimal_accuracy(mixed) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("expected_accuracy_table") {
  const BinTable table = BinTable::uniform(4, 0.9);
  const std::vector<double> always{1.0, 1.0, 1.0, 1.0};
  const std::vector<double> coin{0.5, 0.5, 0.5, 0.5};
  CHECK(expected_accuracy_table(table, always) ==
        doctest::Approx(0.9).epsilon(1e-14));
  CHECK(expected_accuracy_table(table, coin) ==
        doctest::Approx(0.5).epsilon(1e-14));

  BinTable two = BinTable::uniform(2, 0.9);
  const std::vector<double> lopsided{1.0, 0.0};
  // One bin always right (0.9), the other always wrong (0.1).
  CHECK(expected_accuracy_table(two, lopsided) ==
        doctest::Approx(0.5).epsilon(1e-14));

  const std::vector<double> wrong_len{1.0};
  CHECK_THROWS_AS(expected_accuracy_table(two, wrong_len),
                  std::invalid_argument);
  const std::vector<double> out_of_range{1.5, 0.0};
  CHECK_THROWS_AS(expected_accuracy_table(two, out_of_range),
                  std::invalid_argument);
}

TEST_CASE("BinTable and ProblemSpec validation") {
  CHECK_THROWS_AS(BinTable::uniform(0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(BinTable::uniform(4, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(BinTable::uniform(4, 1.1), std::invalid_argument);

  BinTable bad;
  bad.bin_probs = {0.5, 0.6};
  bad.majority_probs = {0.9, 0.9};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.bin_probs = {0.5, 0.5};
  bad.majority_probs = {0.9};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.majority_probs = {0.9, 0.3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  ProblemSpec spec{10, 0.9, 100};
  CHECK_NOTHROW(spec.validate());
  spec.training_size = -1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("probability outputs stay inside [0, 1]") {
  // Cheap fixed-seed sweep across the whole domain.
  std::uint64_t state = 12345;
  const auto next = [&state] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < 200; ++i) {
    const long long n = static_cast<long long>(next() * 3000.0);
    const double p = next();
    const double r = std::max(1e-6, next());
    const double t = majority_win_prob(n, p);
    const double g = g_exact(n, r, p, 1e-12);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0 + 1e-12);
  }
}

TEST_CASE("LogFactorialTable: consecutive differences are ln n") {
  const auto lf = LogFactorialTable::acquire(1000000);
  for (std::size_t n : {2ULL, 170ULL, 10000ULL, 999999ULL, 1000000ULL}) {
    const double diff = lf->log_factorial(n) - lf->log_factorial(n - 1);
    CHECK(diff == doctest::Approx(std::log(static_cast<double>(n)))
                      .epsilon(1e-10));
  }
  // Spot values against lgamma, which is independent of the accumulation.
  for (std::size_t n : {10ULL, 170ULL, 100000ULL, 1000000ULL}) {
    CHECK(lf->log_factorial(n) ==
          doctest::Approx(std::lgamma(static_cast<double>(n) + 1.0))
              .epsilon(1e-13));
  }
}

TEST_CASE("Method names") {
  CHECK(std::string(to_string(Method::exact)) == "exact");
  CHECK(std::string(to_string(Method::old_bound)) == "old_bound");
  CHECK(std::string(to_string(Method::g_lower_bound)) == "g_lower_bound");
  CHECK(std::string(to_string(Method::simulated)) == "simulated");
}
