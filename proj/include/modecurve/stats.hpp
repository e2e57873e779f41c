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

namespace modecurve {

/// Regularized incomplete beta function I_x(a, b), for a, b > 0 and
/// x in [0, 1]. Evaluated with the standard continued fraction.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with df degrees of freedom.
double student_t_cdf(double x, long long df);

/// Two-sided 95% critical value: the 0.975 quantile of Student's t with df
/// degrees of freedom. df = 29 (the default 30-repetition experiment) is
/// pinned to the conventional table value 2.0452; other df are solved from
/// the CDF. Throws std::domain_error for df < 1.
double student_t_quantile_975(long long df);

}  // namespace modecurve
