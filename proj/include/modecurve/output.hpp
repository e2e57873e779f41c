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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modecurve/core_math.hpp"
#include "modecurve/simulator.hpp"

namespace modecurve {

/// One output row: a labelled (m, value) point with optional dispersion
/// fields (simulation rows carry both, curve rows neither).
struct OutputRecord {
  std::string series;
  long long m = 0;
  double value = 0.0;
  std::optional<double> ci_half_width;
  std::optional<double> std_dev;
  Method method = Method::exact;
};

/// Shortest-round-trip style numeric formatting at 12 significant digits;
/// all emitted values survive strtod round-trips at this precision.
std::string format_sig12(double value);

std::vector<OutputRecord> records_from_series(const CurveSeries& series);
std::vector<OutputRecord> records_from_simulation(
    const std::string& label, std::span<const SimulationPoint> points);

/// CSV with `# key=value` comment lines, then a header, then the rows.
/// Header is `series,m,value,ci_half_width,method`, gaining a std_dev
/// column (before method) when any record carries one. Missing optional
/// fields are left empty. Output is byte-stable for identical inputs.
void write_csv(std::ostream& out, std::span<const OutputRecord> records,
               std::span<const std::string> comments);

/// JSON: an array of series objects {label, method, points: [...]}. Points
/// carry m, value, and whichever optional fields are present. `meta`, when
/// non-empty, is attached verbatim to every series object as a "meta"
/// object of string key/value pairs.
void write_json(std::ostream& out, std::span<const OutputRecord> records,
                std::span<const std::pair<std::string, std::string>> meta);

/// Parses CSV produced by write_csv (comments skipped, header checked).
/// Throws std::runtime_error naming the offending line on malformed input.
std::vector<OutputRecord> parse_csv(std::istream& in);

}  // namespace modecurve
