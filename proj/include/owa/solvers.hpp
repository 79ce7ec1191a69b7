#ifndef OWA_SOLVERS_HPP_
#define OWA_SOLVERS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "owa/aggregation.hpp"
#include "owa/core.hpp"
#include "owa/kmeans.hpp"

namespace owa {

enum class SolveStatus { optimal, time_limit, infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::time_limit: return "time_limit";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

/// Objective aggregation the solvers minimize. The Hurwicz criterion is
/// only accepted by the enumerative paths; branch and bound handles owa
/// and minmax (minmax being OWA with weights (1,0,...,0)).
struct Criterion {
  enum class Kind { owa, minmax, hurwicz };

  Kind kind = Kind::owa;
  double lambda = 0.0;

  static Criterion owa() { return {Kind::owa, 0.0}; }
  static Criterion minmax() { return {Kind::minmax, 0.0}; }
  static Criterion hurwicz(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw ParameterError("Criterion::hurwicz: lambda outside [0,1]");
    return {Kind::hurwicz, lambda};
  }
};

struct SolveReport {
  std::optional<Solution> solution;
  double value = std::numeric_limits<double>::infinity();
  SolveStatus status = SolveStatus::infeasible;
  std::optional<double> bound_certificate;
  std::optional<Rational> bound_certificate_exact;
  std::optional<double> reduced_value;
  long long nodes_explored = 0;
  double elapsed_seconds = 0.0;
};

struct BnbOptions {
  double time_limit_seconds = 60.0;
  bool prune = true;  // disabled only to test pruning soundness
};

namespace detail {

inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kFeasSlack = 1e-9;

inline double criterion_value_raw(const Criterion& cr, std::span<const double> f,
                                  std::span<const double> owa_w,
                                  std::vector<double>& scratch) {
  switch (cr.kind) {
    case Criterion::Kind::owa:
      return owa_value_raw(f, owa_w, scratch);
    case Criterion::Kind::minmax:
      return *std::max_element(f.begin(), f.end());
    case Criterion::Kind::hurwicz: {
      if (f.size() == 1) return f[0];
      const auto [mn, mx] = std::minmax_element(f.begin(), f.end());
      return cr.lambda * *mx + (1.0 - cr.lambda) * *mn;
    }
  }
  return 0.0;
}

// Criterion-monotone lower bound over all completions of a partial
// fixing. Per objective, the bound is the fixed cost plus the fractional
// covering relaxation of the residual demand over the free items (greedy
// by ascending cost-to-weight ratio, which solves the relaxation
// exactly); the componentwise bounds feed the criterion, which is
// monotone under nonnegative rank weights. Returns +inf when the fixing
// admits no feasible completion.
class BoundComputer {
 public:
  BoundComputer(const KnapsackInstance& inst, Criterion criterion)
      : inst_(inst), criterion_(criterion), owa_w_(inst.owa_weights.values()) {
    const std::size_t n = inst.items();
    const std::size_t k = inst.objectives();
    ratio_order_.resize(k);
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < n; ++i)
      if (inst.item_weights[i] > 0.0) usable.push_back(i);
    for (std::size_t obj = 0; obj < k; ++obj) {
      auto& ord = ratio_order_[obj];
      ord = usable;
      std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        const double ra = inst.costs.at(a, obj) / inst.item_weights[a];
        const double rb = inst.costs.at(b, obj) / inst.item_weights[b];
        if (ra != rb) return ra < rb;
        return a < b;
      });
    }
    bound_values_.resize(k);
  }

  double bound(std::span<const std::int8_t> status, std::span<const double> fixed_cost,
               double fixed_weight, double free_weight) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (inst_.capacity_hi && fixed_weight > *inst_.capacity_hi + kFeasSlack) return inf;
    const double demand = inst_.capacity_lo - fixed_weight;
    if (demand > free_weight + kFeasSlack) return inf;
    const std::size_t k = inst_.objectives();
    for (std::size_t obj = 0; obj < k; ++obj) {
      double extra = 0.0;
      if (demand > 0.0) {
        double need = demand;
        for (std::size_t i : ratio_order_[obj]) {
          if (status[i] != -1) continue;
          const double b = inst_.item_weights[i];
          const double c = inst_.costs.at(i, obj);
          if (b >= need) {
            extra += c * (need / b);
            need = 0.0;
            break;
          }
          extra += c;
          need -= b;
        }
      }
      bound_values_[obj] = fixed_cost[obj] + extra;
    }
    return criterion_value_raw(criterion_, bound_values_, owa_w_, scratch_);
  }

 private:
  const KnapsackInstance& inst_;
  Criterion criterion_;
  std::span<const double> owa_w_;
  std::vector<std::vector<std::size_t>> ratio_order_;
  std::vector<double> bound_values_;
  std::vector<double> scratch_;
};

}  // namespace detail

/// Criterion-monotone lower bound on the best feasible completion of a
/// partial fixing, under the instance's OWA weights. +inf when no
/// feasible completion exists.
inline double lower_bound(const KnapsackInstance& inst,
                          const std::vector<std::size_t>& fixed_one,
                          const std::vector<std::size_t>& fixed_zero) {
  const std::size_t n = inst.items();
  std::vector<std::int8_t> status(n, -1);
  for (std::size_t i : fixed_one) {
    if (i >= n) throw ParameterError("lower_bound: fixed index out of range");
    status[i] = 1;
  }
  for (std::size_t i : fixed_zero) {
    if (i >= n) throw ParameterError("lower_bound: fixed index out of range");
    if (status[i] == 1) throw ParameterError("lower_bound: fixed sets not disjoint");
    status[i] = 0;
  }
  std::vector<double> fixed_cost(inst.objectives(), 0.0);
  double fixed_weight = 0.0;
  double free_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] == 1) {
      fixed_weight += inst.item_weights[i];
      const auto row = inst.costs.row(i);
      for (std::size_t k = 0; k < fixed_cost.size(); ++k) fixed_cost[k] += row[k];
    } else if (status[i] == -1) {
      free_weight += inst.item_weights[i];
    }
  }
  detail::BoundComputer computer(inst, Criterion::owa());
  return computer.bound(status, fixed_cost, fixed_weight, free_weight);
}

namespace detail {

struct Incumbent {
  bool found = false;
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> selection;

  // strict improvement, or an exact value tie broken toward the
  // lexicographically smaller selection
  void offer(double candidate, const std::vector<std::uint8_t>& sel) {
    if (!found || candidate < value || (candidate == value && lex_before(sel, selection))) {
      found = true;
      value = candidate;
      selection = sel;
    }
  }
};

// Depth-first enumeration of all 2^n selections, include-branch first, so
// the first optimum found is also the lexicographically smallest. Per-depth
// buffers keep the objective vector accumulation identical to
// objective_values(), bit for bit.
class BruteForceSearch {
 public:
  BruteForceSearch(const KnapsackInstance& inst, Criterion criterion)
      : inst_(inst),
        criterion_(criterion),
        owa_w_(inst.owa_weights.values()),
        n_(inst.items()),
        k_(inst.objectives()),
        weight_at_(n_ + 1, 0.0),
        values_at_(n_ + 1, std::vector<double>(k_, 0.0)),
        selection_(n_, 0) {}

  void run() { descend(0); }

  long long leaves() const { return leaves_; }
  const Incumbent& best() const { return best_; }

 private:
  void descend(std::size_t depth) {
    if (depth == n_) {
      ++leaves_;
      const double w = weight_at_[n_];
      if (w < inst_.capacity_lo) return;
      if (inst_.capacity_hi && w > *inst_.capacity_hi) return;
      const double value =
          criterion_value_raw(criterion_, values_at_[n_], owa_w_, scratch_);
      if (!best_.found || value < best_.value) {
        best_.found = true;
        best_.value = value;
        best_.selection = selection_;
      }
      return;
    }
    const auto row = inst_.costs.row(depth);
    selection_[depth] = 1;
    weight_at_[depth + 1] = weight_at_[depth] + inst_.item_weights[depth];
    for (std::size_t k = 0; k < k_; ++k)
      values_at_[depth + 1][k] = values_at_[depth][k] + row[k];
    descend(depth + 1);
    selection_[depth] = 0;
    weight_at_[depth + 1] = weight_at_[depth];
    values_at_[depth + 1] = values_at_[depth];
    descend(depth + 1);
  }

  const KnapsackInstance& inst_;
  Criterion criterion_;
  std::span<const double> owa_w_;
  std::size_t n_;
  std::size_t k_;
  std::vector<double> weight_at_;
  std::vector<std::vector<double>> values_at_;
  std::vector<std::uint8_t> selection_;
  std::vector<double> scratch_;
  Incumbent best_;
  long long leaves_ = 0;
};

}  // namespace detail

/// Exhaustive reference solver; ties go to the lexicographically smallest
/// incidence vector. Guarded against n beyond `guard` items.
inline SolveReport solve_brute_force(const KnapsackInstance& inst, Criterion criterion,
                                     std::size_t guard = 25) {
  if (inst.items() > guard)
    throw SizeError("solve_brute_force: " + std::to_string(inst.items()) +
                    " items exceeds enumeration guard " + std::to_string(guard));
  const auto start = std::chrono::steady_clock::now();
  detail::BruteForceSearch search(inst, criterion);
  search.run();
  SolveReport report;
  report.nodes_explored = search.leaves();
  if (search.best().found) {
    report.status = SolveStatus::optimal;
    report.value = search.best().value;
    report.solution = make_solution(inst, search.best().selection);
  } else {
    report.status = SolveStatus::infeasible;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace detail {

class BranchAndBound {
 public:
  BranchAndBound(const KnapsackInstance& inst, Criterion criterion, BnbOptions options)
      : inst_(inst),
        criterion_(criterion),
        options_(options),
        owa_w_(inst.owa_weights.values()),
        n_(inst.items()),
        bound_(inst, criterion),
        status_(n_, -1),
        weight_at_(n_ + 1, 0.0),
        free_at_(n_ + 1, 0.0),
        cost_at_(n_ + 1, std::vector<double>(inst.objectives(), 0.0)),
        selection_(n_, 0) {
    // branch on heavy items first; value-irrelevant, fixes determinism
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (inst.item_weights[a] != inst.item_weights[b])
        return inst.item_weights[a] > inst.item_weights[b];
      return a < b;
    });
  }

  SolveReport run() {
    const auto start = std::chrono::steady_clock::now();
    deadline_ = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(options_.time_limit_seconds));
    seed_greedy_incumbent();
    free_at_[0] =
        std::accumulate(inst_.item_weights.begin(), inst_.item_weights.end(), 0.0);
    descend(0);

    SolveReport report;
    report.nodes_explored = nodes_;
    if (timed_out_) {
      report.status = SolveStatus::time_limit;
    } else {
      report.status = best_.found ? SolveStatus::optimal : SolveStatus::infeasible;
    }
    if (best_.found) {
      report.value = best_.value;
      report.solution = make_solution(inst_, best_.selection);
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

 private:
  void seed_greedy_incumbent() {
    std::vector<std::uint8_t> sel(n_, 0);
    if (is_feasible(inst_, sel)) {
      offer(sel);
      return;
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n_; ++i)
      if (inst_.item_weights[i] > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto mean = [&](std::size_t i) {
        const auto row = inst_.costs.row(i);
        double s = 0.0;
        for (double c : row) s += c;
        return s / static_cast<double>(row.size()) / inst_.item_weights[i];
      };
      const double ra = mean(a);
      const double rb = mean(b);
      if (ra != rb) return ra < rb;
      return a < b;
    });
    for (std::size_t i : order) {
      sel[i] = 1;
      if (is_feasible(inst_, sel)) {
        offer(sel);
        return;
      }
    }
  }

  void offer(const std::vector<std::uint8_t>& sel) {
    const auto f = objective_values(inst_, sel);
    best_.offer(detail::criterion_value_raw(criterion_, f, owa_w_, scratch_), sel);
  }

  void descend(std::size_t depth) {
    if (timed_out_) return;
    ++nodes_;
    if ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    const double lb =
        bound_.bound(status_, cost_at_[depth], weight_at_[depth], free_at_[depth]);
    if (std::isinf(lb)) return;  // no feasible completion
    if (options_.prune && best_.found && lb > best_.value + kBoundSlack) return;
    if (depth == n_) {
      for (std::size_t i = 0; i < n_; ++i) selection_[i] = status_[i] == 1 ? 1 : 0;
      if (is_feasible(inst_, selection_)) offer(selection_);
      return;
    }
    const std::size_t item = order_[depth];
    const auto row = inst_.costs.row(item);

    status_[item] = 1;
    weight_at_[depth + 1] = weight_at_[depth] + inst_.item_weights[item];
    free_at_[depth + 1] = free_at_[depth] - inst_.item_weights[item];
    for (std::size_t k = 0; k < row.size(); ++k)
      cost_at_[depth + 1][k] = cost_at_[depth][k] + row[k];
    descend(depth + 1);

    status_[item] = 0;
    weight_at_[depth + 1] = weight_at_[depth];
    free_at_[depth + 1] = free_at_[depth] - inst_.item_weights[item];
    cost_at_[depth + 1] = cost_at_[depth];
    descend(depth + 1);

    status_[item] = -1;
  }

  const KnapsackInstance& inst_;
  Criterion criterion_;
  BnbOptions options_;
  std::span<const double> owa_w_;
  std::size_t n_;
  BoundComputer bound_;
  std::vector<std::size_t> order_;
  std::vector<std::int8_t> status_;
  std::vector<double> weight_at_;
  std::vector<double> free_at_;
  std::vector<std::vector<double>> cost_at_;
  std::vector<std::uint8_t> selection_;
  std::vector<double> scratch_;
  Incumbent best_;
  long long nodes_ = 0;
  bool timed_out_ = false;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace detail

/// Depth-first branch and bound for the owa and minmax criteria. The
/// incumbent is seeded greedily by ascending mean-cost-to-weight ratio; a
/// node is pruned when its lower bound exceeds the incumbent. Exact value
/// ties keep the lexicographically smallest incidence vector.
inline SolveReport solve_bnb(const KnapsackInstance& inst, Criterion criterion,
                             BnbOptions options = {}) {
  if (criterion.kind == Criterion::Kind::hurwicz)
    throw ParameterError("solve_bnb: use solve_hurwicz for the Hurwicz criterion");
  detail::BranchAndBound search(inst, criterion, options);
  return search.run();
}

/// Objective-reduction methods for solve_aggregated.
struct BlocksMethod {
  std::size_t block_size;
  bool cluster_presort = false;  // reorder columns by cluster before blocking
  std::uint64_t presort_seed = 0;
  std::size_t presort_restarts = 10;
};

struct KmeansMethod {
  std::size_t kbar;
  std::uint64_t seed;
  std::size_t restarts = 10;
};

using AggregationMethod = std::variant<BlocksMethod, KmeansMethod>;

namespace detail {

inline CostMatrix permute_columns(const CostMatrix& costs,
                                  const std::vector<std::size_t>& order) {
  std::vector<std::vector<double>> cols(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) cols[p] = costs.column(order[p]);
  return CostMatrix::from_columns(cols);
}

}  // namespace detail

/// Reduces the instance with the chosen method, solves the reduced OWA
/// problem exactly, and re-evaluates the returned solution under the
/// original weights and costs. `value` is the original OWA value,
/// `reduced_value` the reduced problem's optimum; block aggregation also
/// carries its rho * l certificate.
inline SolveReport solve_aggregated(const KnapsackInstance& inst,
                                    const AggregationMethod& method,
                                    BnbOptions options = {}) {
  const auto start = std::chrono::steady_clock::now();

  AggregationResult aggregation = std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BlocksMethod>) {
          const KnapsackInstance padded = pad_to_multiple(inst, m.block_size);
          if (!m.cluster_presort)
            return aggregate_blocks(padded.costs, padded.owa_weights, m.block_size);
          const std::size_t groups = padded.objectives() / m.block_size;
          const auto labels = kmeans_cluster(padded.costs, groups, m.presort_seed,
                                             m.presort_restarts);
          std::vector<std::size_t> order(padded.objectives());
          std::iota(order.begin(), order.end(), std::size_t{0});
          std::stable_sort(order.begin(), order.end(),
                           [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
          auto result = aggregate_blocks(detail::permute_columns(padded.costs, order),
                                         padded.owa_weights, m.block_size);
          std::vector<std::size_t> assignment(padded.objectives());
          for (std::size_t p = 0; p < order.size(); ++p)
            assignment[order[p]] = result.assignment[p];
          result.assignment = std::move(assignment);
          return result;
        } else {
          return kmeans_aggregate(inst.costs, inst.owa_weights, m.kbar, m.seed,
                                  m.restarts);
        }
      },
      method);

  const KnapsackInstance reduced(inst.item_weights, inst.capacity_lo, inst.capacity_hi,
                                 aggregation.reduced_costs, aggregation.reduced_weights,
                                 inst.name);
  SolveReport report = solve_bnb(reduced, Criterion::owa(), options);
  report.bound_certificate = aggregation.certificate;
  report.bound_certificate_exact = aggregation.certificate_exact;
  if (report.solution) {
    report.reduced_value = report.value;
    Solution original = make_solution(inst, report.solution->selection);
    report.value = owa_value(original.objective_values, inst.owa_weights);
    report.solution = std::move(original);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Minimizes the Hurwicz criterion by solving one min-max subproblem per
/// objective i over the scenario set { lambda c_k + (1-lambda) c_i } and
/// keeping the best winner. Exact whenever every subproblem solves to
/// optimality within the (shared) time limit.
inline SolveReport solve_hurwicz(const KnapsackInstance& inst, double lambda,
                                 BnbOptions options = {}) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ParameterError("solve_hurwicz: lambda outside [0,1]");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.items();
  const std::size_t k = inst.objectives();

  std::vector<double> unit(k, 0.0);
  unit[0] = 1.0;
  const WeightVector minmax_weights{std::move(unit)};

  SolveReport aggregate;
  detail::Incumbent best;
  bool timed_out = false;
  bool feasible = true;
  for (std::size_t scenario = 0; scenario < k; ++scenario) {
    std::vector<double> entries(n * k);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = inst.costs.row(i);
      for (std::size_t j = 0; j < k; ++j)
        entries[i * k + j] = lambda * row[j] + (1.0 - lambda) * row[scenario];
    }
    const KnapsackInstance sub(inst.item_weights, inst.capacity_lo, inst.capacity_hi,
                               CostMatrix(n, k, std::move(entries)), minmax_weights,
                               inst.name);
    BnbOptions sub_options = options;
    sub_options.time_limit_seconds =
        options.time_limit_seconds -
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const SolveReport sub_report = solve_bnb(sub, Criterion::minmax(), sub_options);
    aggregate.nodes_explored += sub_report.nodes_explored;
    if (sub_report.status == SolveStatus::time_limit) timed_out = true;
    if (sub_report.status == SolveStatus::infeasible) {
      feasible = false;  // the feasible set is shared: all subproblems agree
      break;
    }
    if (sub_report.solution) best.offer(sub_report.value, sub_report.solution->selection);
  }

  if (!feasible) {
    aggregate.status = SolveStatus::infeasible;
  } else if (timed_out) {
    aggregate.status = SolveStatus::time_limit;
  } else {
    aggregate.status = best.found ? SolveStatus::optimal : SolveStatus::infeasible;
  }
  if (best.found) {
    Solution solution = make_solution(inst, best.selection);
    aggregate.value = hurwicz_value(solution.objective_values, lambda);
    aggregate.solution = std::move(solution);
  }
  aggregate.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return aggregate;
}

/// Solves the single-objective problem under the mean-cost (row OWA)
/// collapse and reports the solution's value under the original weights.
inline SolveReport solve_baseline(const KnapsackInstance& inst, BnbOptions options = {}) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> aggregated = mean_cost_baseline(inst.costs, inst.owa_weights);
  const KnapsackInstance single(inst.item_weights, inst.capacity_lo, inst.capacity_hi,
                                CostMatrix(inst.items(), 1, std::move(aggregated)),
                                WeightVector{{1.0}}, inst.name);
  SolveReport report = solve_bnb(single, Criterion::owa(), options);
  if (report.solution) {
    report.reduced_value = report.value;
    Solution original = make_solution(inst, report.solution->selection);
    report.value = owa_value(original.objective_values, inst.owa_weights);
    report.solution = std::move(original);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Ratio of the report's solution (re-evaluated under `criterion` on the
/// original instance) to the brute-force optimum. 1 for exact reports;
/// +inf flags the degenerate zero-optimum case.
inline double evaluate_ratio(const SolveReport& report, const KnapsackInstance& inst,
                             Criterion criterion = Criterion::owa(),
                             std::size_t guard = 25) {
  if (!report.solution)
    throw ParameterError("evaluate_ratio: report carries no solution");
  const auto f = objective_values(inst, report.solution->selection);
  std::vector<double> scratch;
  const double value =
      detail::criterion_value_raw(criterion, f, inst.owa_weights.values(), scratch);
  const SolveReport reference = solve_brute_force(inst, criterion, guard);
  if (reference.status != SolveStatus::optimal)
    throw ValidationError("evaluate_ratio: reference enumeration found no optimum");
  if (reference.value == 0.0)
    return value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return value / reference.value;
}

}  // namespace owa

#endif  // OWA_SOLVERS_HPP_
