#ifndef OWA_HARNESS_HPP_
#define OWA_HARNESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "owa/aggregation.hpp"
#include "owa/core.hpp"
#include "owa/generators.hpp"
#include "owa/solvers.hpp"
#include "owa/version.hpp"

namespace owa {

/// Grid of worst-case bounds rho * l for the alpha weight family. Cell
/// (alpha, l) = worst_case_bound(weights_alpha(K, alpha), l); levels that
/// do not divide K are handled by zero-weight padding. Pure in its inputs.
struct BoundsTable {
  std::size_t objectives;
  std::vector<double> alphas;
  std::vector<std::size_t> levels;
  std::vector<std::vector<double>> raw;  // [alpha][level]
};

inline BoundsTable bounds_table(std::size_t k, const std::vector<std::size_t>& levels,
                                const std::vector<double>& alphas) {
  BoundsTable table{k, alphas, levels, {}};
  table.raw.reserve(alphas.size());
  for (double alpha : alphas) {
    const WeightVector w = weights_alpha(k, alpha);
    std::vector<double> row;
    row.reserve(levels.size());
    for (std::size_t l : levels) {
      if (k % l == 0) {
        row.push_back(worst_case_bound(w, l));
      } else {
        std::vector<double> padded(w.values());
        padded.resize(k + (l - k % l), 0.0);
        row.push_back(worst_case_bound(WeightVector(std::move(padded)), l));
      }
    }
    table.raw.push_back(std::move(row));
  }
  return table;
}

/// Display rounding used for bound tables.
inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

inline void print_bounds_table(const BoundsTable& table, std::ostream& out) {
  out << "worst-case bound rho*l for K=" << table.objectives << "\n";
  out << std::setw(10) << "alpha\\l";
  for (std::size_t l : table.levels) out << std::setw(8) << l;
  out << "\n";
  char buf[32];
  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    std::snprintf(buf, sizeof(buf), "%g", table.alphas[a]);
    out << std::setw(10) << buf;
    for (double v : table.raw[a]) {
      std::snprintf(buf, sizeof(buf), "%.2f", v);
      out << std::setw(8) << buf;
    }
    out << "\n";
  }
}

inline void write_bounds_table_csv(const BoundsTable& table, std::ostream& out) {
  out << "alpha,l,bound\n";
  char buf[40];
  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    for (std::size_t li = 0; li < table.levels.size(); ++li) {
      std::snprintf(buf, sizeof(buf), "%.17g,%zu,%.17g", table.alphas[a],
                    table.levels[li], table.raw[a][li]);
      out << buf << "\n";
    }
  }
}

enum class SweepMethod { exact, blocks, kmeans, baseline };

inline const char* to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::exact: return "exact";
    case SweepMethod::blocks: return "blocks";
    case SweepMethod::kmeans: return "kmeans";
    case SweepMethod::baseline: return "baseline";
  }
  return "unknown";
}

/// One solver run (or a per-group mean, repetition = -1) of the
/// aggregation sweep.
struct SweepRecord {
  std::string instance;
  SweepMethod method = SweepMethod::exact;
  std::size_t reduced_k = 0;
  int repetition = 0;
  double value_original = 0.0;
  std::optional<double> value_reduced;
  std::optional<double> certificate;
  SolveStatus status = SolveStatus::optimal;
  long long nodes = 0;
  double elapsed_seconds = 0.0;
};

struct SweepConfig {
  std::vector<InstanceConfig> instances;
  std::vector<std::size_t> kbar_grid;
  std::size_t repetitions = 1;
  double time_limit_seconds = 60.0;
  std::uint64_t base_seed = 0;
  std::size_t kmeans_restarts = 10;
};

/// Repetition r of instance family f draws its instance from seed
/// base_seed + 1000003 * f + r; the same seed feeds the k-means runs.
inline std::uint64_t sweep_seed(const SweepConfig& config, std::size_t family,
                                std::size_t repetition) {
  return config.base_seed + 1000003ULL * family + repetition;
}

/// Runs exact, block-aggregation, k-means-aggregation, and mean-cost
/// baseline solves over every (instance family, repetition, kbar) cell.
/// Blocks use l = ceil(K / kbar) with zero padding, so the achieved
/// reduced size can differ from the grid value and is recorded. Solver
/// timeouts become record statuses, never failures. Output is sorted by
/// (instance, method, reduced K, repetition) with per-group mean rows
/// (repetition -1) appended after the runs they summarize.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  if (config.repetitions == 0) throw ParameterError("run_sweep: repetitions must be >= 1");
  BnbOptions options;
  options.time_limit_seconds = config.time_limit_seconds;

  std::vector<SweepRecord> records;
  for (std::size_t family = 0; family < config.instances.size(); ++family) {
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
      InstanceConfig instance_config = config.instances[family];
      instance_config.seed = sweep_seed(config, family, rep);
      const KnapsackInstance inst = make_instance(instance_config);
      const std::size_t k = inst.objectives();

      const auto record = [&](SweepMethod method, std::size_t reduced_k,
                              const SolveReport& report) {
        SweepRecord row;
        row.instance = instance_config.name;
        row.method = method;
        row.reduced_k = reduced_k;
        row.repetition = static_cast<int>(rep);
        row.value_original = report.solution ? report.value : 0.0;
        row.value_reduced = report.reduced_value;
        row.certificate = report.bound_certificate;
        row.status = report.status;
        row.nodes = report.nodes_explored;
        row.elapsed_seconds = report.elapsed_seconds;
        records.push_back(std::move(row));
      };

      SolveReport exact = solve_bnb(inst, Criterion::owa(), options);
      {
        SweepRecord row;
        row.instance = instance_config.name;
        row.method = SweepMethod::exact;
        row.reduced_k = k;
        row.repetition = static_cast<int>(rep);
        row.value_original = exact.solution ? exact.value : 0.0;
        row.value_reduced = exact.solution ? std::optional<double>(exact.value) : std::nullopt;
        row.certificate = 1.0;
        row.status = exact.status;
        row.nodes = exact.nodes_explored;
        row.elapsed_seconds = exact.elapsed_seconds;
        records.push_back(std::move(row));
      }

      record(SweepMethod::baseline, 1, solve_baseline(inst, options));

      for (std::size_t kbar : config.kbar_grid) {
        if (kbar == 0 || kbar > k)
          throw ParameterError("run_sweep: kbar grid value outside [1, K]");
        const std::size_t l = (k + kbar - 1) / kbar;
        const std::size_t padded = (k % l == 0) ? k : k + (l - k % l);
        const SolveReport blocks =
            solve_aggregated(inst, BlocksMethod{l}, options);
        record(SweepMethod::blocks, padded / l, blocks);

        // in-run certificate check against the exact column
        if (blocks.status == SolveStatus::optimal &&
            exact.status == SolveStatus::optimal && blocks.bound_certificate &&
            blocks.value > *blocks.bound_certificate * exact.value + 1e-9)
          throw ValidationError("run_sweep: block aggregation violated its certificate");

        record(SweepMethod::kmeans, kbar,
               solve_aggregated(
                   inst,
                   KmeansMethod{kbar, sweep_seed(config, family, rep),
                                config.kmeans_restarts},
                   options));
      }
    }
  }

  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.instance, a.method, a.reduced_k, a.repetition) <
           std::tie(b.instance, b.method, b.reduced_k, b.repetition);
  });

  // mean rows per (instance, method, reduced K)
  std::vector<SweepRecord> means;
  for (std::size_t begin = 0; begin < records.size();) {
    std::size_t end = begin;
    double value_sum = 0.0;
    long long node_sum = 0;
    double elapsed_sum = 0.0;
    bool all_optimal = true;
    while (end < records.size() && records[end].instance == records[begin].instance &&
           records[end].method == records[begin].method &&
           records[end].reduced_k == records[begin].reduced_k) {
      value_sum += records[end].value_original;
      node_sum += records[end].nodes;
      elapsed_sum += records[end].elapsed_seconds;
      all_optimal = all_optimal && records[end].status == SolveStatus::optimal;
      ++end;
    }
    const auto count = static_cast<double>(end - begin);
    SweepRecord mean = records[begin];
    mean.repetition = -1;
    mean.value_original = value_sum / count;
    mean.value_reduced.reset();
    mean.certificate.reset();
    mean.status = all_optimal ? SolveStatus::optimal : SolveStatus::time_limit;
    mean.nodes = node_sum;
    mean.elapsed_seconds = elapsed_sum / count;
    means.push_back(std::move(mean));
    begin = end;
  }
  records.insert(records.end(), means.begin(), means.end());
  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    const int ra = a.repetition < 0 ? std::numeric_limits<int>::max() : a.repetition;
    const int rb = b.repetition < 0 ? std::numeric_limits<int>::max() : b.repetition;
    return std::tie(a.instance, a.method, a.reduced_k, ra) <
           std::tie(b.instance, b.method, b.reduced_k, rb);
  });
  return records;
}

namespace detail {

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace detail

/// Deterministic sweep CSV: fixed column set, stable row order, no
/// wall-clock content, so identical seeds produce identical bytes.
/// Mean rows carry repetition 'mean'.
inline void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out,
                            const SweepConfig& config) {
  out << "# owa-toolkit " << kToolkitVersion << "\n";
  out << "# base_seed=" << config.base_seed << " repetitions=" << config.repetitions
      << " time_limit=" << detail::format_value(config.time_limit_seconds) << "\n";
  out << "instance,method,kbar,rep,value,reduced_value,certificate,status,nodes\n";
  for (const auto& r : records) {
    out << r.instance << "," << to_string(r.method) << "," << r.reduced_k << ",";
    if (r.repetition < 0)
      out << "mean";
    else
      out << r.repetition;
    out << "," << detail::format_value(r.value_original) << ",";
    if (r.value_reduced) out << detail::format_value(*r.value_reduced);
    out << ",";
    if (r.certificate) out << detail::format_value(*r.certificate);
    out << "," << to_string(r.status) << "," << r.nodes << "\n";
  }
}

/// Wall-clock sidecar, same row order as the main CSV.
inline void write_sweep_timings_csv(const std::vector<SweepRecord>& records,
                                    std::ostream& out) {
  out << "instance,method,kbar,rep,elapsed_seconds\n";
  for (const auto& r : records) {
    out << r.instance << "," << to_string(r.method) << "," << r.reduced_k << ",";
    if (r.repetition < 0)
      out << "mean";
    else
      out << r.repetition;
    out << "," << detail::format_value(r.elapsed_seconds) << "\n";
  }
}

}  // namespace owa

#endif  // OWA_HARNESS_HPP_
