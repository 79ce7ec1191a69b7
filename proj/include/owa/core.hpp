#ifndef OWA_CORE_HPP_
#define OWA_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "owa/rational.hpp"

namespace owa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector lengths disagree (values vs. weights, selection vs. items).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Data violates a type invariant (weight sum, negative cost, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A problem exceeds an enumeration guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kWeightSumTolerance = 1e-9;

/// Rank weights for the ordered weighted average: w_1 applies to the
/// largest value, w_K to the smallest. Weights must lie in [0,1] and sum
/// to one within 1e-9; they are never renormalized silently (see
/// normalized()). When constructed from exact rationals the fraction view
/// is kept next to the double view, so certificates downstream can be
/// computed without rounding. Immutable after construction.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    validate();
  }

  static WeightVector from_rationals(std::vector<Rational> weights) {
    std::vector<double> w(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) w[k] = weights[k].to_double();
    WeightVector out(std::move(w));
    out.exact_ = std::move(weights);
    return out;
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  const std::vector<double>& values() const { return weights_; }

  /// True when w_k >= w_{k+1} for all k (the regime of the aggregation
  /// guarantees).
  bool nonincreasing() const { return nonincreasing_; }

  /// Exact fraction view, present only when built via from_rationals().
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }

  /// Explicitly rescaled copy with unit sum. Loses the exact view.
  WeightVector normalized() const {
    double total = 0.0;
    for (double w : weights_) total += w;
    if (total <= 0.0) throw ValidationError("WeightVector: cannot normalize zero weights");
    std::vector<double> w(weights_.size());
    for (std::size_t k = 0; k < weights_.size(); ++k) w[k] = weights_[k] / total;
    return WeightVector(std::move(w));
  }

 private:
  void validate() {
    if (weights_.empty()) throw ValidationError("WeightVector: empty weight vector");
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0 && w <= 1.0))
        throw ValidationError("WeightVector: weight outside [0,1]");
      total += w;
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance)
      throw ValidationError("WeightVector: weights sum to " + std::to_string(total) +
                            ", expected 1");
    nonincreasing_ = true;
    for (std::size_t k = 0; k + 1 < weights_.size(); ++k) {
      if (weights_[k] < weights_[k + 1]) {
        nonincreasing_ = false;
        break;
      }
    }
  }

  std::vector<double> weights_;
  std::optional<std::vector<Rational>> exact_;
  bool nonincreasing_ = false;
};

/// Nonnegative item costs under K objectives, stored row-major: row i
/// holds the costs of item i, column k is the cost vector of objective
/// (scenario) k. Immutable after construction.
class CostMatrix {
 public:
  CostMatrix(std::size_t items, std::size_t objectives, std::vector<double> entries)
      : items_(items), objectives_(objectives), entries_(std::move(entries)) {
    if (items_ == 0 || objectives_ == 0)
      throw ParameterError("CostMatrix: items and objectives must be positive");
    if (entries_.size() != items_ * objectives_)
      throw DimensionError("CostMatrix: entry count does not match dimensions");
    for (double c : entries_) {
      if (!(c >= 0.0)) throw ValidationError("CostMatrix: negative cost entry");
    }
  }

  static CostMatrix from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw ParameterError("CostMatrix: no columns");
    const std::size_t n = columns.front().size();
    std::vector<double> entries(n * columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k].size() != n)
        throw DimensionError("CostMatrix: ragged columns");
      for (std::size_t i = 0; i < n; ++i) entries[i * columns.size() + k] = columns[k][i];
    }
    return CostMatrix(n, columns.size(), std::move(entries));
  }

  std::size_t items() const { return items_; }
  std::size_t objectives() const { return objectives_; }

  double at(std::size_t item, std::size_t objective) const {
    return entries_[item * objectives_ + objective];
  }

  std::span<const double> row(std::size_t item) const {
    return {entries_.data() + item * objectives_, objectives_};
  }

  std::vector<double> column(std::size_t objective) const {
    std::vector<double> col(items_);
    for (std::size_t i = 0; i < items_; ++i) col[i] = at(i, objective);
    return col;
  }

  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t items_;
  std::size_t objectives_;
  std::vector<double> entries_;
};

/// A 0/1 knapsack instance with K cost objectives aggregated by OWA.
/// Feasible set: { x in {0,1}^n : capacity_lo <= b'x <= capacity_hi },
/// with capacity_hi absent meaning no upper bound. A finite window with
/// capacity_lo == capacity_hi expresses cardinality-type constraints via
/// unit item weights.
struct KnapsackInstance {
  KnapsackInstance(std::vector<double> weights, double cap_lo,
                   std::optional<double> cap_hi, CostMatrix cost_matrix,
                   WeightVector weight_vector, std::string label = {})
      : item_weights(std::move(weights)),
        capacity_lo(cap_lo),
        capacity_hi(cap_hi),
        costs(std::move(cost_matrix)),
        owa_weights(std::move(weight_vector)),
        name(std::move(label)) {
    if (item_weights.size() != costs.items())
      throw DimensionError("KnapsackInstance: item weight count != cost rows");
    if (owa_weights.size() != costs.objectives())
      throw DimensionError("KnapsackInstance: OWA weight count != cost columns");
    for (double b : item_weights) {
      if (!(b >= 0.0)) throw ValidationError("KnapsackInstance: negative item weight");
    }
    if (!(capacity_lo >= 0.0))
      throw ValidationError("KnapsackInstance: capacity lower bound must be >= 0");
    if (capacity_hi && *capacity_hi < capacity_lo)
      throw ValidationError("KnapsackInstance: capacity upper bound below lower bound");
  }

  std::size_t items() const { return costs.items(); }
  std::size_t objectives() const { return costs.objectives(); }

  std::vector<double> item_weights;
  double capacity_lo;
  std::optional<double> capacity_hi;
  CostMatrix costs;
  WeightVector owa_weights;
  std::string name;
};

/// Incidence vector plus its cached objective value vector F(x).
struct Solution {
  std::vector<std::uint8_t> selection;
  std::vector<double> objective_values;
};

namespace detail {

// OWA over raw spans, no validation: sort a copy of the values
// nonincreasingly into `scratch` and take the weighted sum.
inline double owa_value_raw(std::span<const double> values,
                            std::span<const double> weights,
                            std::vector<double>& scratch) {
  scratch.assign(values.begin(), values.end());
  std::sort(scratch.begin(), scratch.end(), std::greater<>());
  double acc = 0.0;
  for (std::size_t k = 0; k < scratch.size(); ++k) acc += weights[k] * scratch[k];
  return acc;
}

}  // namespace detail

/// Ordered weighted average of `values` under rank weights `w`. Values may
/// have any sign; the aggregation guarantees elsewhere additionally assume
/// nonnegative values. Ties in the ordering do not affect the result.
inline double owa_value(std::span<const double> values, const WeightVector& w) {
  if (values.size() != w.size())
    throw DimensionError("owa_value: " + std::to_string(values.size()) +
                         " values vs " + std::to_string(w.size()) + " weights");
  std::vector<double> scratch;
  return detail::owa_value_raw(values, w.values(), scratch);
}

inline double owa_value(const std::vector<double>& values, const WeightVector& w) {
  return owa_value(std::span<const double>(values), w);
}

/// Hurwicz pessimism-optimism value: lambda * max + (1-lambda) * min.
/// With a single value the criterion degenerates to that value for every
/// lambda.
inline double hurwicz_value(std::span<const double> values, double lambda) {
  if (values.empty()) throw DimensionError("hurwicz_value: empty value vector");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ParameterError("hurwicz_value: lambda outside [0,1]");
  if (values.size() == 1) return values[0];
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return lambda * *mx + (1.0 - lambda) * *mn;
}

inline double hurwicz_value(const std::vector<double>& values, double lambda) {
  return hurwicz_value(std::span<const double>(values), lambda);
}

/// The OWA weight vector that realizes the Hurwicz criterion (K >= 2).
inline WeightVector hurwicz_weights(std::size_t k, double lambda) {
  if (k < 2) throw ParameterError("hurwicz_weights: need at least two objectives");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ParameterError("hurwicz_weights: lambda outside [0,1]");
  std::vector<double> w(k, 0.0);
  w.front() = lambda;
  w.back() = 1.0 - lambda;
  return WeightVector(std::move(w));
}

/// Objective value vector F(x), component k = c_k' x. Does not check
/// feasibility.
inline std::vector<double> objective_values(const KnapsackInstance& inst,
                                            std::span<const std::uint8_t> selection) {
  if (selection.size() != inst.items())
    throw DimensionError("objective_values: selection length != item count");
  std::vector<double> f(inst.objectives(), 0.0);
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (!selection[i]) continue;
    const auto row = inst.costs.row(i);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += row[k];
  }
  return f;
}

inline std::vector<double> objective_values(const KnapsackInstance& inst,
                                            const std::vector<std::uint8_t>& selection) {
  return objective_values(inst, std::span<const std::uint8_t>(selection));
}

inline bool is_feasible(const KnapsackInstance& inst,
                        std::span<const std::uint8_t> selection) {
  if (selection.size() != inst.items())
    throw DimensionError("is_feasible: selection length != item count");
  double total = 0.0;
  for (std::size_t i = 0; i < selection.size(); ++i)
    if (selection[i]) total += inst.item_weights[i];
  if (total < inst.capacity_lo) return false;
  return !inst.capacity_hi || total <= *inst.capacity_hi;
}

inline bool is_feasible(const KnapsackInstance& inst,
                        const std::vector<std::uint8_t>& selection) {
  return is_feasible(inst, std::span<const std::uint8_t>(selection));
}

inline Solution make_solution(const KnapsackInstance& inst,
                              std::vector<std::uint8_t> selection) {
  std::vector<double> f = objective_values(inst, selection);
  return Solution{std::move(selection), std::move(f)};
}

/// Deterministic tie order on incidence vectors: the vector selecting an
/// item at the earliest differing index comes first, i.e. selections are
/// ordered like their sorted index sets. lex_before((1,1,0,0),(1,0,0,1))
/// is true.
inline bool lex_before(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() < b.size();
}

inline bool lex_before(const std::vector<std::uint8_t>& a,
                       const std::vector<std::uint8_t>& b) {
  return lex_before(std::span<const std::uint8_t>(a), std::span<const std::uint8_t>(b));
}

}  // namespace owa

#endif  // OWA_CORE_HPP_
