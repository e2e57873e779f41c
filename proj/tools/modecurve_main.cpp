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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modecurve/bounds.hpp"
#include "modecurve/core_math.hpp"
#include "modecurve/distributions.hpp"
#include "modecurve/output.hpp"
#include "modecurve/simulator.hpp"

namespace {

using namespace modecurve;

// Options shared by the curve-producing subcommands.
struct GridOptions {
  std::string grid_csv;
  long long m_max = -1;
  long long m_steps = -1;

  std::vector<long long> resolve() const {
    if (!grid_csv.empty() && (m_max >= 0 || m_steps >= 0)) {
      throw CLI::ValidationError(
          "--grid cannot be combined with --m-max/--m-steps");
    }
    if (!grid_csv.empty()) {
      std::vector<long long> grid;
      std::stringstream ss(grid_csv);
      std::string token;
      while (std::getline(ss, token, ',')) {
        try {
          std::size_t used = 0;
          const long long value = std::stoll(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
          grid.push_back(value);
        } catch (const std::exception&) {
          throw CLI::ValidationError("--grid: bad entry \"" + token + "\"");
        }
      }
      return grid;
    }
    if (m_max >= 0 || m_steps >= 0) {
      if (m_max < 0 || m_steps < 1) {
        throw CLI::ValidationError(
            "--m-max and --m-steps must be given together "
            "(with --m-steps >= 1)");
      }
      std::vector<long long> grid;
      for (long long i = 0; i <= m_steps; ++i) {
        const long long m = (m_max * i) / m_steps;
        if (grid.empty() || m > grid.back()) grid.push_back(m);
      }
      return grid;
    }
    return default_m_grid();
  }
};

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;

  void write(std::span<const OutputRecord> records,
             std::span<const std::string> csv_comments,
             std::span<const std::pair<std::string, std::string>> meta) const {
    std::ostringstream body;
    if (format == "csv") {
      write_csv(body, records, csv_comments);
    } else {
      write_json(body, records, meta);
    }
    if (out_path.empty()) {
      std::cout << body.str();
      return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot open output file: " + out_path);
    }
    file << body.str();
  }
};

BinDistribution resolve_distribution(const std::string& spec,
                                     long long& num_bins,
                                     bool bins_given) {
  if (spec == "uniform") return uniform_weights(num_bins);
  if (spec == "zipf") return zipf_weights(num_bins);
  constexpr const char* kPrefix = "custom:";
  if (spec.rfind(kPrefix, 0) == 0) {
    BinDistribution dist = load_weights_file(spec.substr(7));
    if (bins_given && dist.num_bins() != num_bins) {
      std::ostringstream msg;
      msg << "--bins " << num_bins << " does not match the " << dist.num_bins()
          << " weights in the custom file";
      throw CLI::ValidationError(msg.str());
    }
    num_bins = dist.num_bins();
    return dist;
  }
  throw CLI::ValidationError(
      "--dist must be uniform, zipf, or custom:<path>");
}

void add_bound(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "bound", "Evaluate one accuracy figure for uniform bins");
  auto m = std::make_shared<long long>(0);
  auto bins = std::make_shared<long long>(0);
  auto p = std::make_shared<double>(0.0);
  auto method = std::make_shared<std::string>();
  auto trunc_eps = std::make_shared<double>(1e-12);
  cmd->add_option("--m", *m, "Training-set size (>= 0)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--bins", *bins, "Number of bins (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--p", *p, "Majority probability, in [0.5, 1]")->required();
  cmd->add_option("--method", *method,
                  "exact | old | glb (glb = series lower bound)")
      ->required()
      ->check(CLI::IsMember({"exact", "old", "glb"}));
  cmd->add_option("--trunc-eps", *trunc_eps,
                  "Mass dropped by the exact evaluator, in (0, 1e-6]");
  cmd->callback([=] {
    if (!(*p >= 0.5 && *p <= 1.0)) {
      throw CLI::ValidationError("--p must be in [0.5, 1]");
    }
    AccuracyEstimate est;
    if (*method == "exact") {
      est = ea_uniform(*m, *bins, *p, *trunc_eps);
    } else if (*method == "old") {
      est = AccuracyEstimate{old_overall_bound(*m, *bins, *p),
                             Method::old_bound, ""};
    } else {
      if (!(*p > 0.5)) {
        throw CLI::ValidationError("--method glb needs --p > 0.5");
      }
      if (*bins < 2) {
        throw CLI::ValidationError("--method glb needs --bins >= 2");
      }
      const double r = 1.0 / static_cast<double>(*bins);
      const double g = g_lower_bound(*m, r, *p);
      est = AccuracyEstimate{1.0 - *p + (2.0 * *p - 1.0) * g,
                             Method::g_lower_bound, ""};
    }
    std::cout << format_sig12(est.value) << " " << to_string(est.method)
              << "\n";
  });
}

void add_curve(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "curve", "Tabulate theoretical accuracy curves for uniform bins");
  auto bins = std::make_shared<long long>(0);
  auto p = std::make_shared<double>(0.0);
  auto series_csv = std::make_shared<std::string>(
      "exact,old_bound,g_lower_bound,optimal");
  auto grid = std::make_shared<GridOptions>();
  auto output = std::make_shared<OutputOptions>();
  auto trunc_eps = std::make_shared<double>(1e-12);
  cmd->add_option("--bins", *bins, "Number of bins (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--p", *p, "Majority probability, in [0.5, 1]")->required();
  cmd->add_option("--series", *series_csv,
                  "Comma list from {exact, old_bound, g_lower_bound, "
                  "optimal}");
  cmd->add_option("--grid", grid->grid_csv,
                  "Comma list of training-set sizes");
  cmd->add_option("--m-max", grid->m_max, "Largest training-set size");
  cmd->add_option("--m-steps", grid->m_steps,
                  "Number of equal grid steps up to --m-max");
  cmd->add_option("--format", output->format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", output->out_path,
                  "Output file (default: stdout)");
  cmd->add_option("--trunc-eps", *trunc_eps,
                  "Mass dropped by the exact evaluator, in (0, 1e-6]");
  cmd->callback([=] {
    if (!(*p >= 0.5 && *p <= 1.0)) {
      throw CLI::ValidationError("--p must be in [0.5, 1]");
    }
    std::vector<TheoryCurve> which;
    std::stringstream ss(*series_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token == "exact") {
        which.push_back(TheoryCurve::exact);
      } else if (token == "old_bound") {
        which.push_back(TheoryCurve::old_bound);
      } else if (token == "g_lower_bound") {
        which.push_back(TheoryCurve::g_lower_bound);
      } else if (token == "optimal") {
        which.push_back(TheoryCurve::optimal);
      } else {
        throw CLI::ValidationError("--series: unknown series \"" + token +
                                   "\"");
      }
    }
    if (which.empty()) {
      throw CLI::ValidationError("--series: selection must be non-empty");
    }
    const auto m_grid = grid->resolve();
    for (std::size_t i = 0; i < m_grid.size(); ++i) {
      if (m_grid[i] < 0 || (i > 0 && m_grid[i] <= m_grid[i - 1])) {
        throw CLI::ValidationError(
            "--grid must be non-negative and strictly increasing");
      }
    }
    const auto curves =
        theoretical_curves(*bins, *p, m_grid, which, *trunc_eps);
    std::vector<OutputRecord> records;
    for (const CurveSeries& series : curves) {
      auto part = records_from_series(series);
      records.insert(records.end(), part.begin(), part.end());
    }
    std::vector<std::string> comments;
    {
      std::ostringstream c;
      c << "bins=" << *bins << " p=" << format_sig12(*p);
      comments.push_back(c.str());
    }
    output->write(records, comments, {});
  });
}

void add_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "simulate", "Monte Carlo runs of the mode learner");
  auto cfg = std::make_shared<SimulationConfig>();
  auto dist_spec = std::make_shared<std::string>("uniform");
  auto grid = std::make_shared<GridOptions>();
  auto output = std::make_shared<OutputOptions>();
  auto* bins_opt =
      cmd->add_option("--bins", cfg->num_bins, "Number of bins (>= 1)")
          ->check(CLI::PositiveNumber);
  cmd->add_option("--p", cfg->majority_prob,
                  "Majority probability, in [0.5, 1]");
  cmd->add_option("--dist", *dist_spec, "uniform | zipf | custom:<path>");
  cmd->add_option("--grid", grid->grid_csv,
                  "Comma list of training-set sizes");
  cmd->add_option("--m-max", grid->m_max, "Largest training-set size");
  cmd->add_option("--m-steps", grid->m_steps,
                  "Number of equal grid steps up to --m-max");
  cmd->add_option("--reps", cfg->repetitions, "Repetitions per grid point");
  cmd->add_option("--test-size", cfg->test_size,
                  "Test instances per repetition");
  cmd->add_option("--seed", cfg->master_seed, "Master seed");
  cmd->add_option("--format", output->format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", output->out_path,
                  "Output file (default: stdout)");
  cmd->callback([=] {
    cfg->distribution =
        resolve_distribution(*dist_spec, cfg->num_bins, bins_opt->count() > 0);
    cfg->m_grid = grid->resolve();
    cfg->validate();  // turns bad settings into a clean error message
    const auto points = run(*cfg);
    const std::string label =
        std::string("simulated:") + to_string(cfg->distribution.kind);
    const auto records = records_from_simulation(label, points);
    std::vector<std::string> comments;
    std::vector<std::pair<std::string, std::string>> meta;
    comments.push_back("seed=" + std::to_string(cfg->master_seed));
    meta.emplace_back("seed", std::to_string(cfg->master_seed));
    {
      std::ostringstream c;
      c << "bins=" << cfg->num_bins << " p=" << format_sig12(cfg->majority_prob)
        << " dist=" << to_string(cfg->distribution.kind)
        << " reps=" << cfg->repetitions << " test_size=" << cfg->test_size;
      comments.push_back(c.str());
    }
    output->write(records, comments, meta);
  });
}

void add_invert(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "invert", "Smallest training size reaching a target accuracy");
  auto target = std::make_shared<double>(0.0);
  auto bins = std::make_shared<long long>(0);
  auto p = std::make_shared<double>(0.0);
  cmd->add_option("--target", *target, "Target accuracy, in [0.5, 1)")
      ->required();
  cmd->add_option("--bins", *bins, "Number of bins (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--p", *p, "Majority probability, in (0.5, 1]")->required();
  cmd->callback([=] {
    const MinTrainingSize result = min_training_size(*target, *bins, *p);
    if (!result.reachable) {
      std::ostringstream msg;
      msg << "target accuracy " << format_sig12(*target)
          << " is unreachable: the expected-accuracy curve approaches "
          << format_sig12(result.asymptote) << " from below";
      throw std::runtime_error(msg.str());
    }
    std::cout << result.training_size << "\n";
  });
}

void add_relevant(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "relevant", "Expected training instances relevant to a test draw");
  auto bins = std::make_shared<long long>(1);
  auto m = std::make_shared<long long>(0);
  auto dist_spec = std::make_shared<std::string>("uniform");
  auto* bins_opt = cmd->add_option("--bins", *bins, "Number of bins (>= 1)")
                       ->check(CLI::PositiveNumber);
  cmd->add_option("--m", *m, "Training-set size (>= 0)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dist", *dist_spec, "uniform | zipf | custom:<path>");
  cmd->callback([=] {
    const bool is_custom = dist_spec->rfind("custom:", 0) == 0;
    if (!is_custom && bins_opt->count() == 0) {
      throw CLI::ValidationError(
          "--bins is required unless --dist is custom:<path>");
    }
    const BinDistribution dist =
        resolve_distribution(*dist_spec, *bins, bins_opt->count() > 0);
    std::cout << "relevant_exact "
              << format_sig12(expected_relevant_instances(dist, *m)) << "\n";
    if (dist.kind == DistributionKind::zipf) {
      std::cout << "relevant_estimate "
                << format_sig12(zipf_relevant_estimate(*m, *bins))
                << "\n";
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "modecurve: how fast a memorize-the-mode learner approaches its "
      "ceiling"};
  app.require_subcommand(1);
  add_bound(app);
  add_curve(app);
  add_simulate(app);
  add_invert(app);
  add_relevant(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
