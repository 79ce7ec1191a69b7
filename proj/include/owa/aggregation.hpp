#ifndef OWA_AGGREGATION_HPP_
#define OWA_AGGREGATION_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "owa/core.hpp"

namespace owa {

/// Outcome of reducing K objectives to a smaller set: the reduced cost
/// matrix and weights, the group each original objective went to, and (for
/// block aggregation) the certified worst-case ratio rho * l of an
/// optimal solution of the reduced problem on the original one.
struct AggregationResult {
  CostMatrix reduced_costs;
  WeightVector reduced_weights;
  std::vector<std::size_t> assignment;
  std::optional<double> certificate;
  std::optional<Rational> certificate_exact;
};

namespace detail {

inline void require_nonincreasing(const WeightVector& w, const char* where) {
  if (!w.nonincreasing())
    throw ParameterError(std::string(where) + ": weights must be nonincreasing");
}

inline void require_multiple(std::size_t k, std::size_t l, const char* where) {
  if (l == 0) throw ParameterError(std::string(where) + ": block size must be >= 1");
  if (k % l != 0)
    throw ParameterError(std::string(where) + ": K=" + std::to_string(k) +
                         " is not a multiple of l=" + std::to_string(l) +
                         " (pad with dummy objectives first)");
}

}  // namespace detail

/// Appends all-zero cost columns with zero weight until the number of
/// objectives is a multiple of l. Every padded column sorts behind the
/// real values and carries weight zero, so the OWA value of every solution
/// is unchanged, exactly.
inline KnapsackInstance pad_to_multiple(const KnapsackInstance& inst, std::size_t l) {
  if (l == 0) throw ParameterError("pad_to_multiple: l must be >= 1");
  const std::size_t k = inst.objectives();
  if (k % l == 0) return inst;
  const std::size_t padded = k + (l - k % l);

  const std::size_t n = inst.items();
  std::vector<double> entries(n * padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = inst.costs.row(i);
    for (std::size_t j = 0; j < k; ++j) entries[i * padded + j] = row[j];
  }

  std::vector<double> w(inst.owa_weights.values());
  w.resize(padded, 0.0);
  WeightVector weights = [&] {
    if (const auto& exact = inst.owa_weights.exact()) {
      std::vector<Rational> r(*exact);
      r.resize(padded, Rational(0));
      return WeightVector::from_rationals(std::move(r));
    }
    return WeightVector(std::move(w));
  }();

  return KnapsackInstance(inst.item_weights, inst.capacity_lo, inst.capacity_hi,
                          CostMatrix(n, padded, std::move(entries)), std::move(weights),
                          inst.name);
}

/// Worst-case ratio of the l-block aggregation: the maximum over prefixes
/// of (sum of the first k original weights) / (sum of the first k block
/// weights). Lies in [1/l, 1]; 1/l exactly for uniform weights, 1 when the
/// whole mass sits on the first K/l ranks.
inline double rho(const WeightVector& w, std::size_t l) {
  detail::require_nonincreasing(w, "rho");
  detail::require_multiple(w.size(), l, "rho");
  const std::size_t groups = w.size() / l;
  double prefix_orig = 0.0;
  double prefix_blocks = 0.0;
  double best = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    prefix_orig += w[g];
    double block = 0.0;
    for (std::size_t j = g * l; j < (g + 1) * l; ++j) block += w[j];
    prefix_blocks += block;
    best = std::max(best, prefix_orig / prefix_blocks);
  }
  return best;
}

/// Exact-fraction rho, available when the weights carry a rational view.
inline std::optional<Rational> rho_exact(const WeightVector& w, std::size_t l) {
  detail::require_nonincreasing(w, "rho");
  detail::require_multiple(w.size(), l, "rho");
  if (!w.exact()) return std::nullopt;
  const auto& r = *w.exact();
  const std::size_t groups = w.size() / l;
  Rational prefix_orig(0);
  Rational prefix_blocks(0);
  Rational best(0);
  for (std::size_t g = 0; g < groups; ++g) {
    prefix_orig = prefix_orig + r[g];
    for (std::size_t j = g * l; j < (g + 1) * l; ++j)
      prefix_blocks = prefix_blocks + r[j];
    const Rational ratio = prefix_orig / prefix_blocks;
    if (best < ratio) best = ratio;
  }
  return best;
}

/// The certified approximation ratio rho(w, l) * l of solving the l-block
/// reduced problem instead of the original.
inline double worst_case_bound(const WeightVector& w, std::size_t l) {
  return rho(w, l) * static_cast<double>(l);
}

inline std::optional<Rational> worst_case_bound_exact(const WeightVector& w,
                                                      std::size_t l) {
  auto r = rho_exact(w, l);
  if (!r) return std::nullopt;
  return *r * Rational(static_cast<std::int64_t>(l));
}

/// Replaces each consecutive block of l objectives by its mean column and
/// summed weight. Requires K to be a multiple of l (pad first) and
/// nonincreasing weights; the result carries the rho * l certificate.
inline AggregationResult aggregate_blocks(const CostMatrix& costs, const WeightVector& w,
                                          std::size_t l) {
  if (w.size() != costs.objectives())
    throw DimensionError("aggregate_blocks: weight count != cost columns");
  detail::require_nonincreasing(w, "aggregate_blocks");
  detail::require_multiple(w.size(), l, "aggregate_blocks");

  const std::size_t n = costs.items();
  const std::size_t k = costs.objectives();
  const std::size_t groups = k / l;
  const double block_size = static_cast<double>(l);

  std::vector<double> entries(n * groups);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = costs.row(i);
    for (std::size_t g = 0; g < groups; ++g) {
      double sum = 0.0;
      for (std::size_t j = g * l; j < (g + 1) * l; ++j) sum += row[j];
      entries[i * groups + g] = sum / block_size;
    }
  }

  std::vector<double> wbar(groups, 0.0);
  for (std::size_t g = 0; g < groups; ++g)
    for (std::size_t j = g * l; j < (g + 1) * l; ++j) wbar[g] += w[j];

  WeightVector reduced_weights = [&] {
    if (const auto& exact = w.exact()) {
      std::vector<Rational> r(groups, Rational(0));
      for (std::size_t g = 0; g < groups; ++g)
        for (std::size_t j = g * l; j < (g + 1) * l; ++j) r[g] = r[g] + (*exact)[j];
      return WeightVector::from_rationals(std::move(r));
    }
    return WeightVector(std::move(wbar));
  }();

  std::vector<std::size_t> assignment(k);
  for (std::size_t j = 0; j < k; ++j) assignment[j] = j / l;

  return AggregationResult{CostMatrix(n, groups, std::move(entries)),
                           std::move(reduced_weights), std::move(assignment),
                           worst_case_bound(w, l), worst_case_bound_exact(w, l)};
}

/// Collapses the K objectives into one cost vector by taking the OWA of
/// each item's cost row. Minimizing this single objective yields a
/// w_1 * K approximate solution under nonincreasing weights.
inline std::vector<double> mean_cost_baseline(const CostMatrix& costs,
                                              const WeightVector& w) {
  if (w.size() != costs.objectives())
    throw DimensionError("mean_cost_baseline: weight count != cost columns");
  detail::require_nonincreasing(w, "mean_cost_baseline");
  std::vector<double> aggregated(costs.items());
  std::vector<double> scratch;
  for (std::size_t i = 0; i < costs.items(); ++i)
    aggregated[i] = detail::owa_value_raw(costs.row(i), w.values(), scratch);
  return aggregated;
}

/// Aggregation level for a target guarantee: with K = 2^r objectives,
/// reducing to 2^level objectives (level = ceil(log2(1/epsilon) + 1))
/// leaves a constant-size problem whose 2-approximate solution is
/// epsilon * K approximate on the original.
struct LevelChoice {
  std::size_t level;
  std::size_t block_size;
  std::size_t reduced_objectives;
};

inline LevelChoice choose_level(std::size_t k, double epsilon) {
  if (k < 4 || (k & (k - 1)) != 0)
    throw ParameterError("choose_level: K must be a power of two, K >= 4 (pad first)");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ParameterError("choose_level: epsilon must lie in (0, 1]");
  std::size_t r = 0;
  while ((std::size_t{1} << r) < k) ++r;
  const auto level =
      static_cast<std::size_t>(std::ceil(std::log2(1.0 / epsilon) + 1.0));
  const std::size_t block = level >= r ? 1 : (std::size_t{1} << (r - level));
  return LevelChoice{level, block, k / block};
}

}  // namespace owa

#endif  // OWA_AGGREGATION_HPP_
