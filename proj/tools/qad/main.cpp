#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qad/asymptotics.hpp"
#include "qad/constants.hpp"
#include "qad/dispersion.hpp"
#include "qad/distributions.hpp"
#include "qad/montecarlo.hpp"
#include "qad/quantile.hpp"
#include "dataset.hpp"
#include "output_table.hpp"

namespace robust::cli {
namespace {

struct GlobalOptions {
  OutputFormat format = OutputFormat::kCsv;
  int digits = 6;
  std::uint64_t seed = 42;
  int workers = 1;
  std::int64_t reps = 100000;
  std::string n_list = "2,3,5,10,30,100";
};

Distribution parse_distribution(const std::string& spec) {
  std::vector<std::string> parts;
  std::istringstream stream(spec);
  std::string part;
  while (std::getline(stream, part, ':')) parts.push_back(part);
  if (parts.empty()) {
    throw std::runtime_error("unknown distribution ''");
  }
  const std::string& name = parts[0];
  const auto param = [&](std::size_t i, double fallback) {
    return parts.size() > i ? std::stod(parts[i]) : fallback;
  };
  if (name == "normal") return Distribution::normal(param(1, 0.0), param(2, 1.0));
  if (name == "uniform") return Distribution::uniform01();
  if (name == "exponential") return Distribution::exponential1();
  if (name == "pareto") return Distribution::pareto11();
  if (name == "trimodal") return Distribution::trimodal();
  if (name == "poisson") return Distribution::poisson(param(1, 1.0));
  throw std::runtime_error("unknown distribution '" + name + "'");
}

struct EstimatorSpec {
  std::string label;
  bool needs_p = false;
  double p = 0.5;
};

std::vector<EstimatorSpec> parse_estimators(const std::string& spec) {
  std::vector<EstimatorSpec> result;
  std::istringstream pieces(spec);
  std::string piece;
  while (std::getline(pieces, piece, ',')) {
    if (piece.empty()) continue;
    EstimatorSpec entry;
    entry.label = piece;
    if (piece.rfind("qad:", 0) == 0) {
      entry.needs_p = true;
      try {
        entry.p = std::stod(piece.substr(4));
      } catch (const std::exception&) {
        throw std::runtime_error("invalid estimator '" + piece + "'");
      }
      if (!(entry.p >= 0.0 && entry.p <= 1.0)) {
        throw std::runtime_error("qad order must lie in [0, 1]");
      }
    } else if (piece != "median" && piece != "mad" && piece != "sqad" && piece != "oqad" &&
               piece != "sthdme" && piece != "othdme") {
      throw std::runtime_error("unknown estimator '" + piece + "'");
    }
    result.push_back(entry);
  }
  if (result.empty()) {
    throw std::runtime_error("no estimators requested");
  }
  return result;
}

OutputTable cmd_estimate(const InputDataset& input, const std::vector<EstimatorSpec>& estimators,
                         bool raw) {
  if (input.values.empty()) {
    throw std::runtime_error("empty dataset from " + input.source);
  }
  std::cerr << "n=" << input.values.size() << " skipped_missing=" << input.skipped_missing << '\n';
  const Sample sample{std::vector<double>(input.values)};
  OutputTable table;
  table.columns = {"estimator", "value", "n", "constant"};
  const double n = static_cast<double>(sample.size());
  for (const auto& spec : estimators) {
    double value = 0.0;
    double constant = 1.0;
    if (spec.label == "median") {
      value = sample_median(sample);
    } else if (spec.label == "sthdme") {
      value = sthdme(sample);
    } else if (spec.label == "othdme") {
      value = othdme(sample);
    } else if (spec.label == "mad") {
      const auto estimate = raw ? mad(sample, 1.0) : mad(sample);
      value = estimate.value;
      constant = estimate.constant;
    } else if (spec.label == "sqad") {
      const auto estimate = raw ? sqad(sample, 1.0) : sqad(sample);
      value = estimate.value;
      constant = estimate.constant;
    } else if (spec.label == "oqad") {
      const auto estimate = raw ? oqad(sample, 1.0) : oqad(sample);
      value = estimate.value;
      constant = estimate.constant;
    } else {
      const auto estimate = qad(sample, spec.p, 1.0);
      value = estimate.value;
      constant = estimate.constant;
    }
    table.add_row({spec.label, value, n, constant});
  }
  return table;
}

OutputTable cmd_curve(const Distribution& d, const std::vector<double>& grid) {
  OutputTable table;
  table.columns = {"p", "v", "jump", "lower", "upper", "kv"};
  for (double p : grid) {
    const VpResult r = asymptotic_qad(d, p);
    if (r.is_jump()) {
      table.add_row({p, Cell(), 1.0, r.lower, r.upper, Cell()});
    } else {
      table.add_row({p, r.value, 0.0, Cell(), Cell(), asymptotic_constant(p) * r.value});
    }
  }
  return table;
}

OutputTable cmd_efficiency_curve(const std::vector<double>& grid) {
  OutputTable table;
  table.columns = {"p", "efficiency"};
  for (double p : grid) {
    table.add_row({p, asymptotic_gaussian_efficiency(p)});
  }
  const double optimal = find_optimal_p();
  std::cerr << "optimal_p=" << format_number(optimal, 10) << '\n'
            << "max_efficiency=" << format_number(asymptotic_gaussian_efficiency(optimal), 10)
            << '\n';
  return table;
}

OutputTable cmd_simulate(const std::string& kind, const GlobalOptions& opts) {
  SimulationConfig cfg;
  cfg.sample_sizes = parse_n_list(opts.n_list);
  cfg.repetitions = opts.reps;
  cfg.master_seed = opts.seed;
  cfg.workers = opts.workers;
  std::cerr << "simulate " << kind << ": reps=" << cfg.repetitions << " seed=" << cfg.master_seed
            << " workers=" << cfg.workers << '\n';
  OutputTable table;
  if (kind == "constants") {
    table.columns = {"n", "sqad", "oqad"};
    for (const auto& rec : simulate_constants(cfg)) {
      table.add_row({static_cast<double>(rec.n), rec.k_sqad, rec.k_oqad});
    }
    return table;
  }
  const auto records =
      kind == "scale-eff" ? simulate_scale_efficiency(cfg) : simulate_location_efficiency(cfg);
  table.columns = {"n"};
  for (const auto& [label, value] : records.front().values) {
    table.columns.push_back(label);
  }
  for (const auto& rec : records) {
    std::vector<Cell> row{static_cast<double>(rec.n)};
    for (const auto& [label, value] : rec.values) row.emplace_back(value);
    table.add_row(std::move(row));
  }
  return table;
}

OutputTable cmd_coverage_table() {
  // The interval multipliers are C-infinity multiples as displayed in the
  // reference table, i.e. rounded to 2 decimals.
  const double c_inf = asymptotic_constant(0.5);
  const auto rounded = [](double k) { return std::round(k * 100.0) / 100.0; };
  const double ks[] = {1.0, rounded(c_inf), rounded(2.0 * c_inf), rounded(3.0 * c_inf)};
  const Distribution normal = Distribution::normal(0, 1);
  const Distribution pareto = Distribution::pareto11();
  OutputTable table;
  table.columns = {"k", "normal", "pareto"};
  for (double k : ks) {
    table.add_row({k, coverage_probability(normal, k), coverage_probability(pareto, k)});
  }
  return table;
}

OutputTable cmd_fit(const std::string& path, double k_infinity, int n_min, int n_max,
                    const std::string& column) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(file, line)) {
    throw std::runtime_error("empty CSV '" + path + "'");
  }
  std::vector<std::string> header;
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2) {
    throw std::runtime_error("CSV needs an n column and at least one value column");
  }
  std::size_t n_index = 0;
  const auto n_pos = std::find(header.begin(), header.end(), "n");
  if (n_pos != header.end()) n_index = static_cast<std::size_t>(n_pos - header.begin());
  std::size_t value_index = n_index == 0 ? 1 : 0;
  if (!column.empty()) {
    const auto pos = std::find(header.begin(), header.end(), column);
    if (pos == header.end()) {
      throw std::runtime_error("no column '" + column + "' in '" + path + "'");
    }
    value_index = static_cast<std::size_t>(pos - header.begin());
  }
  std::vector<std::pair<int, double>> records;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (cells.size() <= std::max(n_index, value_index)) {
      throw std::runtime_error("malformed CSV row '" + line + "'");
    }
    try {
      records.emplace_back(std::stoi(cells[n_index]), std::stod(cells[value_index]));
    } catch (const std::exception&) {
      throw std::runtime_error("malformed CSV row '" + line + "'");
    }
  }
  const FitResult fit = fit_constant_model(records, k_infinity, n_min, n_max);
  OutputTable table;
  table.columns = {"k_infinity", "alpha", "beta", "max_residual"};
  table.add_row({fit.k_infinity, fit.alpha, fit.beta, fit.max_residual});
  return table;
}

int run(int argc, char** argv) {
  CLI::App app{"Quantile absolute deviation toolkit"};
  app.require_subcommand(1);

  GlobalOptions opts;
  if (const char* env_seed = std::getenv("ROBUST_DISPERSION_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env_seed, &end, 10);
    if (end == env_seed || *end != '\0') {
      throw std::runtime_error("ROBUST_DISPERSION_SEED is not an integer");
    }
    opts.seed = parsed;
  }
  std::string format_name = "csv";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--digits", opts.digits, "Significant digits in numeric output")
      ->check(CLI::Range(1, 17));
  app.add_option("--seed", opts.seed, "Master seed (default: ROBUST_DISPERSION_SEED or 42)");
  app.add_option("--workers", opts.workers, "Worker threads for simulations")
      ->check(CLI::PositiveNumber);
  app.add_option("--reps", opts.reps, "Monte-Carlo repetitions")->check(CLI::PositiveNumber);
  app.add_option("--n-list", opts.n_list, "Sample sizes, e.g. 2,5..10,100");

  auto* estimate = app.add_subcommand("estimate", "Evaluate estimators on a dataset");
  std::string input_path = "-";
  std::string estimator_spec = "median,mad,sqad,oqad";
  bool raw = false;
  estimate->add_option("input", input_path, "Input file ('-' for stdin)");
  estimate->add_option("--estimators", estimator_spec,
                       "Comma-separated: median,mad,sqad,oqad,sthdme,othdme,qad:P");
  estimate->add_flag("--raw", raw, "Report raw estimates (all constants set to 1)");

  auto* curve = app.add_subcommand("curve", "Asymptotic QAD curve of a distribution");
  std::string dist_spec;
  std::string p_grid_spec = "0.01..0.99:99";
  curve->add_option("--dist", dist_spec,
                    "normal[:mu:sigma] | uniform | exponential | pareto | trimodal | poisson:lambda")
      ->required();
  curve->add_option("--p-grid", p_grid_spec, "Grid spec: lo..hi:count or comma list");

  auto* efficiency = app.add_subcommand("efficiency-curve", "Asymptotic Gaussian efficiency curve");
  efficiency->add_option("--p-grid", p_grid_spec, "Grid spec: lo..hi:count or comma list");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo studies");
  std::string kind;
  simulate->add_option("kind", kind, "constants | scale-eff | location-eff")
      ->required()
      ->check(CLI::IsMember({"constants", "scale-eff", "location-eff"}));

  app.add_subcommand("coverage-table", "Interval coverage of Normal(0,1) and Pareto(1,1)");

  auto* fit = app.add_subcommand("fit", "Fit K_n = K_inf (1 + alpha/n + beta/n^2)");
  std::string fit_path;
  std::string fit_column;
  double k_infinity = 1.0;
  int n_min = 100;
  int n_max = 1000;
  fit->add_option("input", fit_path, "CSV with an n column and constant columns")->required();
  fit->add_option("--k-infinity", k_infinity, "Asymptotic constant")->required();
  fit->add_option("--n-min", n_min, "Smallest n included in the fit");
  fit->add_option("--n-max", n_max, "Largest n included in the fit");
  fit->add_option("--column", fit_column, "Value column name (default: second column)");

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opts.format = format_name == "json" ? OutputFormat::kJson : OutputFormat::kCsv;

  OutputTable table;
  if (estimate->parsed()) {
    table = cmd_estimate(read_dataset(input_path), parse_estimators(estimator_spec), raw);
  } else if (curve->parsed()) {
    table = cmd_curve(parse_distribution(dist_spec), parse_p_grid(p_grid_spec));
  } else if (efficiency->parsed()) {
    table = cmd_efficiency_curve(parse_p_grid(p_grid_spec));
  } else if (simulate->parsed()) {
    table = cmd_simulate(kind, opts);
  } else if (fit->parsed()) {
    table = cmd_fit(fit_path, k_infinity, n_min, n_max, fit_column);
  } else {
    table = cmd_coverage_table();
  }
  write_table(table, opts.format, opts.digits, std::cout);
  return 0;
}

}  // namespace
}  // namespace robust::cli

int main(int argc, char** argv) {
  try {
    return robust::cli::run(argc, argv);
  } catch (const robust::undefined_constant_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
