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

#include "modecurve/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace modecurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_glb_domain(long long m, double r, double p) {
  if (m < 0) throw std::domain_error("g_lower_bound: m must be >= 0");
  if (!(r > 0.0 && r < 1.0)) {
    throw std::domain_error("g_lower_bound: r must be in (0, 1)");
  }
  if (!(p > 0.5 && p <= 1.0)) {
    throw std::domain_error("g_lower_bound: p must be in (0.5, 1]");
  }
}

struct GlbEvaluation {
  double value = 0.0;
  GTruncation plan;
};

// Shared worker for g_lower_bound / choose_truncation. All series terms are
// assembled in log space; each exp() is of a log bounded above by ln(1/2),
// so nothing can overflow.
GlbEvaluation evaluate_glb(long long m, double r, double p,
                           const GApproxParams& params) {
  check_glb_domain(m, r, p);
  params.validate();

  GlbEvaluation out;
  const auto lf = LogFactorialTable::acquire(static_cast<std::size_t>(m));
  const double log_miss_all = static_cast<double>(m) * std::log1p(-r);
  // ln((1-p)/p); -inf at p = 1 kills every j >= 1 / t >= 1 term.
  const double log_odds =
      p < 1.0 ? std::log(1.0 - p) - std::log(p) : -kInf;
  const double mr = static_cast<double>(m) * r;
  const long long base = static_cast<long long>(
      std::ceil(mr + params.k_margin * std::sqrt(mr * (1.0 - r))));

  const long long max_j = m >= 1 ? (m - 1) / 2 : -1;
  long long j_cap = max_j;
  if (params.outer_terms) {
    if (*params.outer_terms < 0) {
      throw std::invalid_argument(
          "g_lower_bound: outer_terms must be >= 0");
    }
    j_cap = std::min(j_cap, *params.outer_terms);
  }

  double total = 0.0;

  // Strict-majority part. For each minority count j, amounts x^n / n! style
  // terms over occupancies n = 2j+1 .. k_j with x = r p (m - k_j) / (1 - r).
  for (long long j = 0; j <= j_cap; ++j) {
    const long long k_j = std::min(m, base + 2 * j + 1);
    out.plan.inner_limits.push_back(k_j);
    out.plan.outer_terms = j;

    double term = 0.0;
    const double x =
        r * p * static_cast<double>(m - k_j) / (1.0 - r);
    const long long n_lo = 2 * j + 1;
    if (x > 0.0 && k_j >= n_lo) {
      const double log_x = std::log(x);
      // Inner logsumexp over n; running max keeps the scale stable.
      double log_t = static_cast<double>(n_lo) * log_x -
                     lf->log_factorial(static_cast<std::size_t>(j)) -
                     lf->log_factorial(static_cast<std::size_t>(n_lo - j));
      double max_log = log_t;
      double sum_exp = 1.0;
      for (long long n = n_lo + 1; n <= k_j; ++n) {
        log_t += log_x - std::log(static_cast<double>(n - j));
        if (log_t > max_log) {
          sum_exp = sum_exp * std::exp(max_log - log_t) + 1.0;
          max_log = log_t;
        } else {
          sum_exp += std::exp(log_t - max_log);
        }
      }
      const double log_outer =
          log_miss_all + (j == 0 ? 0.0 : static_cast<double>(j) * log_odds);
      term = std::exp(log_outer + max_log + std::log(sum_exp));
    }
    total += term;
    if (!params.outer_terms && j > 0 && term < params.term_eps * total) {
      break;
    }
  }

  // Tie part: occupancy 2t splitting t / t, counted with weight 1/2.
  // t = 0 is the empty-bin coin flip (1-r)^m / 2; for t >= 1 the surrogate
  // cutoff is 2t, the tightest choice that keeps (m - 2t)^(2t) a valid
  // underestimate of m! / (m - 2t)!.
  long long t_cap = m / 2;
  if (params.outer_terms) t_cap = std::min(t_cap, *params.outer_terms);
  for (long long t = 0; t <= t_cap; ++t) {
    double term;
    if (t == 0) {
      term = 0.5 * std::exp(log_miss_all);
    } else {
      const double x =
          r * p * static_cast<double>(m - 2 * t) / (1.0 - r);
      if (x <= 0.0) break;  // later t only shrink x further
      term = std::exp(log_miss_all + std::log(0.5) +
                      static_cast<double>(t) * log_odds +
                      2.0 * static_cast<double>(t) * std::log(x) -
                      2.0 * lf->log_factorial(static_cast<std::size_t>(t)));
    }
    total += term;
    if (t > 0 && term < params.term_eps * total) break;
  }

  out.value = total;
  return out;
}

}  // namespace

void GApproxParams::validate() const {
  if (!(k_margin > 0.0) || !std::isfinite(k_margin)) {
    throw std::invalid_argument("GApproxParams: k_margin must be > 0");
  }
  if (!(term_eps > 0.0 && term_eps <= 1e-3)) {
    throw std::invalid_argument(
        "GApproxParams: term_eps must be in (0, 1e-3]");
  }
  if (outer_terms && *outer_terms < 0) {
    throw std::invalid_argument("GApproxParams: outer_terms must be >= 0");
  }
}

double empty_bin_prob_exact(double bin_prob, long long m) {
  if (!(bin_prob > 0.0 && bin_prob < 1.0)) {
    throw std::domain_error("empty_bin_prob_exact: bin_prob must be in (0, 1)");
  }
  if (m < 0) throw std::domain_error("empty_bin_prob_exact: m must be >= 0");
  return std::exp(static_cast<double>(m) * std::log1p(-bin_prob));
}

double empty_bin_prob_bound(long long num_bins, long long m) {
  if (num_bins < 1) {
    throw std::domain_error("empty_bin_prob_bound: num_bins must be >= 1");
  }
  if (m < 0) throw std::domain_error("empty_bin_prob_bound: m must be >= 0");
  return std::exp(-static_cast<double>(m) / static_cast<double>(num_bins));
}

double nonempty_ea_bound(double oa) {
  if (!(oa >= 0.5 && oa <= 1.0)) {
    throw std::domain_error("nonempty_ea_bound: oa must be in [0.5, 1]");
  }
  return 1.0 - 2.0 * (1.0 - oa);
}

double old_overall_bound(long long m, long long num_bins, double p) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw std::domain_error("old_overall_bound: p must be in [0.5, 1]");
  }
  const double miss = empty_bin_prob_bound(num_bins, m);
  return (1.0 - miss) * (2.0 * p - 1.0) + 0.5 * miss;
}

AccuracyEstimate ea_uniform(long long m, long long num_bins, double p,
                            double trunc_eps) {
  if (num_bins < 1) {
    throw std::domain_error("ea_uniform: num_bins must be >= 1");
  }
  if (!(p >= 0.5 && p <= 1.0)) {
    throw std::domain_error("ea_uniform: p must be in [0.5, 1]");
  }
  const double g =
      g_exact(m, 1.0 / static_cast<double>(num_bins), p, trunc_eps);
  return AccuracyEstimate{1.0 - p + (2.0 * p - 1.0) * g, Method::exact, ""};
}

double g_lower_bound(long long m, double r, double p,
                     const GApproxParams& params) {
  return evaluate_glb(m, r, p, params).value;
}

GTruncation choose_truncation(long long m, double r, double p,
                              const GApproxParams& params) {
  return evaluate_glb(m, r, p, params).plan;
}

MinTrainingSize min_training_size(double target_ea, long long num_bins,
                                  double p) {
  if (num_bins < 1) {
    throw std::invalid_argument("min_training_size: num_bins must be >= 1");
  }
  if (!(p > 0.5 && p <= 1.0)) {
    throw std::invalid_argument("min_training_size: p must be in (0.5, 1]");
  }
  if (!(target_ea >= 0.5 && target_ea < 1.0)) {
    throw std::invalid_argument(
        "min_training_size: target_ea must be in [0.5, 1)");
  }
  // The curve rises from 1/2 toward p and never reaches it.
  if (target_ea >= p) return {false, 0, p};

  const auto ea = [&](long long m) {
    return ea_uniform(m, num_bins, p).value;
  };
  if (ea(0) >= target_ea) return {true, 0, p};

  long long hi = 1;
  constexpr long long kBracketCap = 1LL << 24;
  while (ea(hi) < target_ea) {
    if (hi >= kBracketCap) {
      throw std::runtime_error(
          "min_training_size: target is so close to the asymptote that the "
          "answer exceeds 2^24 training instances");
    }
    hi *= 2;
  }
  long long lo = hi / 2;  // ea(lo) < target_ea <= ea(hi)
  while (lo + 1 < hi) {
    const long long mid = lo + (hi - lo) / 2;
    if (ea(mid) >= target_ea) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {true, hi, p};
}

}  // namespace modecurve
