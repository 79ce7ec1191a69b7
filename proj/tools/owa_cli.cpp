// Command-line front end: instance generation, solving, bound tables,
// aggregation sweeps, and LP model export.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "owa/aggregation.hpp"
#include "owa/core.hpp"
#include "owa/generators.hpp"
#include "owa/harness.hpp"
#include "owa/instance_io.hpp"
#include "owa/mip_export.hpp"
#include "owa/solvers.hpp"
#include "owa/sweep_config.hpp"
#include "owa/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitTimeoutNoIncumbent = 3;

struct MethodSpec {
  enum class Kind { exact, blocks, kmeans, baseline } kind = Kind::exact;
  std::size_t block_size = 1;
  std::size_t kbar = 1;
};

MethodSpec parse_method(const std::string& text) {
  MethodSpec spec;
  if (text == "exact") {
    spec.kind = MethodSpec::Kind::exact;
  } else if (text == "baseline") {
    spec.kind = MethodSpec::Kind::baseline;
  } else if (text.rfind("blocks:", 0) == 0) {
    spec.kind = MethodSpec::Kind::blocks;
    spec.block_size = std::stoull(text.substr(7));
    if (spec.block_size == 0) throw owa::ParameterError("blocks: L must be >= 1");
  } else if (text.rfind("kmeans:", 0) == 0) {
    spec.kind = MethodSpec::Kind::kmeans;
    spec.kbar = std::stoull(text.substr(7));
    if (spec.kbar == 0) throw owa::ParameterError("kmeans: KBAR must be >= 1");
  } else {
    throw owa::ParameterError("unknown method '" + text +
                              "' (exact | blocks:L | kmeans:KBAR | baseline)");
  }
  return spec;
}

struct CriterionSpec {
  enum class Kind { owa, minmax, hurwicz } kind = Kind::owa;
  double lambda = 0.5;
};

CriterionSpec parse_criterion(const std::string& text) {
  CriterionSpec spec;
  if (text == "owa") {
    spec.kind = CriterionSpec::Kind::owa;
  } else if (text == "minmax") {
    spec.kind = CriterionSpec::Kind::minmax;
  } else if (text.rfind("hurwicz:", 0) == 0) {
    spec.kind = CriterionSpec::Kind::hurwicz;
    spec.lambda = std::stod(text.substr(8));
    if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0))
      throw owa::ParameterError("hurwicz: LAMBDA must lie in [0,1]");
  } else {
    throw owa::ParameterError("unknown criterion '" + text +
                              "' (owa | hurwicz:LAMBDA | minmax)");
  }
  return spec;
}

std::string selection_string(const owa::Solution& solution) {
  std::string bits(solution.selection.size(), '0');
  for (std::size_t i = 0; i < solution.selection.size(); ++i)
    if (solution.selection[i]) bits[i] = '1';
  return bits;
}

void print_report(const owa::SolveReport& report) {
  std::cout << "status " << owa::to_string(report.status) << "\n";
  if (report.solution) {
    std::cout << "value " << owa::detail::format_double(report.value) << "\n";
    if (report.reduced_value)
      std::cout << "reduced_value " << owa::detail::format_double(*report.reduced_value)
                << "\n";
    std::cout << "solution " << selection_string(*report.solution) << "\n";
  }
  if (report.bound_certificate) {
    std::cout << "certificate " << owa::detail::format_double(*report.bound_certificate);
    if (report.bound_certificate_exact)
      std::cout << " (" << report.bound_certificate_exact->str() << ")";
    std::cout << "\n";
  }
  std::cout << "nodes " << report.nodes_explored << "\n";
  std::cout << "elapsed_seconds " << report.elapsed_seconds << "\n";
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(std::stoull(token));
  if (out.empty()) throw owa::ParameterError("empty list '" + text + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(std::stod(token));
  if (out.empty()) throw owa::ParameterError("empty list '" + text + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OWA min-knapsack toolkit: objective aggregation with certified bounds"};
  app.set_version_flag("--version", owa::kToolkitVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  std::string gen_output;
  std::string gen_name = "instance";
  std::size_t gen_n = 20;
  std::size_t gen_k = 50;
  std::string gen_cost = "uniform";
  std::string gen_weights = "alpha:0.1";
  std::uint64_t gen_seed = 0;
  gen->add_option("-o,--output", gen_output, "output instance file")->required();
  gen->add_option("--name", gen_name, "instance label");
  gen->add_option("-n,--items", gen_n, "number of items");
  gen->add_option("-k,--objectives", gen_k, "number of objectives");
  gen->add_option("--cost", gen_cost, "cost generator: uniform | nominal:K'");
  gen->add_option("--weights", gen_weights, "weight generator: alpha:A | pcentra:P");
  gen->add_option("--seed", gen_seed, "random seed");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_input;
  std::string solve_method = "exact";
  std::string solve_criterion = "owa";
  double solve_time_limit = 60.0;
  std::uint64_t solve_seed = 0;
  std::size_t solve_restarts = 10;
  bool solve_presort = false;
  solve->add_option("instance", solve_input, "instance file")->required();
  solve->add_option("--method", solve_method,
                    "exact | blocks:L | kmeans:KBAR | baseline");
  solve->add_option("--criterion", solve_criterion, "owa | hurwicz:LAMBDA | minmax");
  solve->add_option("--time-limit", solve_time_limit, "seconds per solve");
  solve->add_option("--seed", solve_seed, "seed for k-means aggregation");
  solve->add_option("--restarts", solve_restarts, "k-means restarts");
  solve->add_flag("--presort", solve_presort,
                  "cluster-sort objectives before block aggregation");

  // bounds-table
  auto* bounds = app.add_subcommand("bounds-table", "print the rho*l bound table");
  std::size_t bounds_k = 200;
  std::string bounds_levels = "2,5,10,20,50,100,200";
  std::string bounds_alphas = "0.1,0.001,0.000001";
  bool bounds_raw = false;
  bounds->add_option("-k,--objectives", bounds_k, "number of objectives");
  bounds->add_option("--levels", bounds_levels, "comma-separated block sizes");
  bounds->add_option("--alphas", bounds_alphas, "comma-separated alpha values");
  bounds->add_flag("--raw", bounds_raw, "also print unrounded CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an aggregation sweep experiment");
  std::string sweep_config_path;
  std::string sweep_output = "sweep.csv";
  sweep->add_option("--config", sweep_config_path, "JSON sweep configuration")->required();
  sweep->add_option("-o,--output", sweep_output,
                    "output CSV (wall-clock sidecar: <output>.timings.csv)");

  // export-mip
  auto* export_cmd = app.add_subcommand("export-mip", "write the linearized model (LP format)");
  std::string export_input;
  std::string export_output;
  export_cmd->add_option("instance", export_input, "instance file")->required();
  export_cmd->add_option("-o,--output", export_output, "output LP file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen) {
      owa::InstanceConfig config;
      config.name = gen_name;
      config.items = gen_n;
      config.objectives = gen_k;
      config.cost_method = owa::detail::parse_cost_method(gen_cost);
      config.weight_method = owa::detail::parse_weight_method(gen_weights);
      config.seed = gen_seed;
      owa::write_instance(owa::make_instance(config), std::filesystem::path(gen_output));
      std::cout << "wrote " << gen_output << "\n";
      return kExitOk;
    }

    if (*solve) {
      const owa::KnapsackInstance inst =
          owa::read_instance(std::filesystem::path(solve_input));
      const MethodSpec method = parse_method(solve_method);
      const CriterionSpec criterion = parse_criterion(solve_criterion);
      owa::BnbOptions options;
      options.time_limit_seconds = solve_time_limit;

      if (criterion.kind == CriterionSpec::Kind::hurwicz &&
          method.kind != MethodSpec::Kind::exact)
        throw owa::ParameterError("the Hurwicz criterion supports only --method exact");

      // minmax is OWA with weights (1,0,...,0); aggregated methods
      // reuse the OWA path on the reweighted instance
      const owa::KnapsackInstance* target = &inst;
      std::optional<owa::KnapsackInstance> reweighted;
      if (criterion.kind == CriterionSpec::Kind::minmax &&
          method.kind != MethodSpec::Kind::exact) {
        std::vector<owa::Rational> unit(inst.objectives(), owa::Rational(0));
        unit[0] = owa::Rational(1);
        reweighted.emplace(inst.item_weights, inst.capacity_lo, inst.capacity_hi,
                           inst.costs, owa::WeightVector::from_rationals(std::move(unit)),
                           inst.name);
        target = &*reweighted;
      }

      owa::SolveReport report;
      switch (method.kind) {
        case MethodSpec::Kind::exact:
          if (criterion.kind == CriterionSpec::Kind::hurwicz)
            report = owa::solve_hurwicz(inst, criterion.lambda, options);
          else if (criterion.kind == CriterionSpec::Kind::minmax)
            report = owa::solve_bnb(inst, owa::Criterion::minmax(), options);
          else
            report = owa::solve_bnb(inst, owa::Criterion::owa(), options);
          break;
        case MethodSpec::Kind::blocks:
          report = owa::solve_aggregated(
              *target, owa::BlocksMethod{method.block_size, solve_presort, solve_seed,
                                         solve_restarts},
              options);
          break;
        case MethodSpec::Kind::kmeans:
          report = owa::solve_aggregated(
              *target, owa::KmeansMethod{method.kbar, solve_seed, solve_restarts},
              options);
          break;
        case MethodSpec::Kind::baseline:
          report = owa::solve_baseline(*target, options);
          break;
      }
      print_report(report);
      if (report.status == owa::SolveStatus::time_limit && !report.solution)
        return kExitTimeoutNoIncumbent;
      return kExitOk;
    }

    if (*bounds) {
      const owa::BoundsTable table = owa::bounds_table(
          bounds_k, parse_size_list(bounds_levels), parse_double_list(bounds_alphas));
      owa::print_bounds_table(table, std::cout);
      if (bounds_raw) {
        std::cout << "\n";
        owa::write_bounds_table_csv(table, std::cout);
      }
      return kExitOk;
    }

    if (*sweep) {
      std::ifstream config_in(sweep_config_path);
      if (!config_in)
        throw owa::IoError("cannot open '" + sweep_config_path + "' for reading");
      const owa::SweepConfig config = owa::sweep_config_from_json(config_in);
      const auto records = owa::run_sweep(config);

      std::ofstream out(sweep_output);
      if (!out) throw owa::IoError("cannot open '" + sweep_output + "' for writing");
      owa::write_sweep_csv(records, out, config);

      const std::string timing_path = sweep_output + ".timings.csv";
      std::ofstream timings(timing_path);
      if (!timings) throw owa::IoError("cannot open '" + timing_path + "' for writing");
      owa::write_sweep_timings_csv(records, timings);

      std::cout << "wrote " << sweep_output << " and " << timing_path << " ("
                << records.size() << " rows)\n";
      return kExitOk;
    }

    if (*export_cmd) {
      const owa::KnapsackInstance inst =
          owa::read_instance(std::filesystem::path(export_input));
      owa::export_mip(inst, std::filesystem::path(export_output));
      std::cout << "wrote " << export_output << "\n";
      return kExitOk;
    }
  } catch (const owa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const owa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
