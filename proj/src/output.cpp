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

#include "modecurve/output.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace modecurve {

namespace {

Method method_from_string(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "old_bound") return Method::old_bound;
  if (name == "g_lower_bound") return Method::g_lower_bound;
  if (name == "simulated") return Method::simulated;
  throw std::runtime_error("unknown method tag: " + name);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_double_field(const std::string& field, long long line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size()) {
    throw std::runtime_error("csv line " + std::to_string(line_no) +
                             ": bad numeric field \"" + field + "\"");
  }
  return value;
}

}  // namespace

std::string format_sig12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<OutputRecord> records_from_series(const CurveSeries& series) {
  std::vector<OutputRecord> records;
  records.reserve(series.points.size());
  for (const CurvePoint& pt : series.points) {
    OutputRecord rec;
    rec.series = series.label;
    rec.m = pt.m;
    rec.value = pt.value;
    if (pt.has_ci()) rec.ci_half_width = pt.ci_half_width;
    rec.method = series.method;
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<OutputRecord> records_from_simulation(
    const std::string& label, std::span<const SimulationPoint> points) {
  std::vector<OutputRecord> records;
  records.reserve(points.size());
  for (const SimulationPoint& pt : points) {
    OutputRecord rec;
    rec.series = label;
    rec.m = pt.m;
    rec.value = pt.mean_accuracy;
    rec.ci_half_width = pt.ci_half_width;
    rec.std_dev = pt.std_dev;
    rec.method = Method::simulated;
    records.push_back(std::move(rec));
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const OutputRecord> records,
               std::span<const std::string> comments) {
  for (const std::string& c : comments) {
    out << "# " << c << "\n";
  }
  bool any_sd = false;
  for (const OutputRecord& rec : records) {
    if (rec.std_dev) any_sd = true;
  }
  out << (any_sd ? "series,m,value,ci_half_width,std_dev,method"
                 : "series,m,value,ci_half_width,method")
      << "\n";
  for (const OutputRecord& rec : records) {
    out << rec.series << "," << rec.m << "," << format_sig12(rec.value)
        << ",";
    if (rec.ci_half_width) out << format_sig12(*rec.ci_half_width);
    if (any_sd) {
      out << ",";
      if (rec.std_dev) out << format_sig12(*rec.std_dev);
    }
    out << "," << to_string(rec.method) << "\n";
  }
}

void write_json(std::ostream& out, std::span<const OutputRecord> records,
                std::span<const std::pair<std::string, std::string>> meta) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json series_array = ordered_json::array();
  ordered_json* current = nullptr;
  std::string current_label;
  for (const OutputRecord& rec : records) {
    if (current == nullptr || rec.series != current_label) {
      ordered_json series_obj;
      series_obj["label"] = rec.series;
      series_obj["method"] = to_string(rec.method);
      if (!meta.empty()) {
        ordered_json meta_obj;
        for (const auto& [key, value] : meta) meta_obj[key] = value;
        series_obj["meta"] = std::move(meta_obj);
      }
      series_obj["points"] = ordered_json::array();
      series_array.push_back(std::move(series_obj));
      current = &series_array.back();
      current_label = rec.series;
    }
    ordered_json point;
    point["m"] = rec.m;
    point["value"] = rec.value;
    if (rec.ci_half_width) point["ci_half_width"] = *rec.ci_half_width;
    if (rec.std_dev) point["std_dev"] = *rec.std_dev;
    (*current)["points"].push_back(std::move(point));
  }
  out << series_array.dump(2) << "\n";
}

std::vector<OutputRecord> parse_csv(std::istream& in) {
  std::vector<OutputRecord> records;
  std::string line;
  long long line_no = 0;
  bool header_seen = false;
  bool has_sd = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line == "series,m,value,ci_half_width,method") {
        has_sd = false;
      } else if (line == "series,m,value,ci_half_width,std_dev,method") {
        has_sd = true;
      } else {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": unrecognized header");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    const std::size_t expected = has_sd ? 6 : 5;
    if (fields.size() != expected) {
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": expected " + std::to_string(expected) +
                               " fields, got " +
                               std::to_string(fields.size()));
    }
    OutputRecord rec;
    rec.series = fields[0];
    rec.m = static_cast<long long>(parse_double_field(fields[1], line_no));
    rec.value = parse_double_field(fields[2], line_no);
    if (!fields[3].empty()) {
      rec.ci_half_width = parse_double_field(fields[3], line_no);
    }
    if (has_sd && !fields[4].empty()) {
      rec.std_dev = parse_double_field(fields[4], line_no);
    }
    rec.method = method_from_string(fields[expected - 1]);
    records.push_back(std::move(rec));
  }
  if (!header_seen) {
    throw std::runtime_error("csv: missing header line");
  }
  return records;
}

}  // namespace modecurve
