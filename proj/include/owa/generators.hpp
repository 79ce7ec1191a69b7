#ifndef OWA_GENERATORS_HPP_
#define OWA_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "owa/core.hpp"
#include "owa/rng.hpp"

namespace owa {

/// Rank weights from the distortion family w_k = g(k/K) - g((k-1)/K) with
/// g(z) = (1 - alpha^z) / (1 - alpha), alpha in (0,1). Smaller alpha puts
/// more mass on the worst ranks; alpha near 1 approaches uniform weights.
/// Evaluated in product form, alpha^{(k-1)/K} * (1 - alpha^{1/K}) / (1 - alpha),
/// which keeps the sequence nonincreasing in floating point; the sum
/// telescopes to 1 up to roundoff.
inline WeightVector weights_alpha(std::size_t k, double alpha) {
  if (k == 0) throw ParameterError("weights_alpha: K must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("weights_alpha: alpha must lie in (0,1)");
  const double log_alpha = std::log(alpha);
  const double factor = -std::expm1(log_alpha / static_cast<double>(k)) / (1.0 - alpha);
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = std::exp(log_alpha * (static_cast<double>(i) / static_cast<double>(k))) * factor;
    if (i > 0 && w[i] > w[i - 1]) w[i] = w[i - 1];  // guard against exp() ulp wobble
  }
  return WeightVector(std::move(w));
}

/// p-centra weights: 1/p on the p largest values, zero elsewhere. p = 1 is
/// the maximum criterion, p = K the average. The exact fraction view is
/// kept for certificate computations.
inline WeightVector weights_pcentra(std::size_t k, std::size_t p) {
  if (k == 0) throw ParameterError("weights_pcentra: K must be >= 1");
  if (p < 1 || p > k) throw ParameterError("weights_pcentra: p must lie in [1, K]");
  std::vector<Rational> w(k, Rational(0));
  for (std::size_t i = 0; i < p; ++i) w[i] = Rational(1, static_cast<std::int64_t>(p));
  return WeightVector::from_rationals(std::move(w));
}

/// Rounds a fractional p-centra parameter (like 0.1 * K) to the nearest
/// valid integer p >= 1.
inline std::size_t pcentra_count(std::size_t k, double fraction) {
  auto p = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(k)));
  if (p < 1) p = 1;
  if (p > k) p = k;
  return p;
}

/// Generated knapsack data before OWA weights are attached.
struct GeneratedInstance {
  std::vector<double> item_weights;
  double capacity_lo;
  CostMatrix costs;
};

/// Independent uniform instance: b_i ~ U[0.1, 10], demand B = (1/3) sum b_i,
/// c_ik = u_ik * b_i with u_ik ~ U[0.5, 1.5] (costs correlate with item
/// weights). Deterministic in the seed; item weights and costs come from
/// separate substreams, costs drawn row by row.
inline GeneratedInstance instance_uniform(std::size_t n, std::size_t k,
                                          std::uint64_t seed) {
  if (n == 0 || k == 0)
    throw ParameterError("instance_uniform: n and K must be >= 1");
  auto b_engine = rng::stream_engine(seed, rng::Stream::item_weights);
  std::vector<double> b(n);
  double total = 0.0;
  for (double& bi : b) {
    bi = rng::next_uniform(b_engine, 0.1, 10.0);
    total += bi;
  }
  auto cost_engine = rng::stream_engine(seed, rng::Stream::costs);
  std::vector<double> entries(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      entries[i * k + j] = rng::next_uniform(cost_engine, 0.5, 1.5) * b[i];
  return GeneratedInstance{std::move(b), total / 3.0, CostMatrix(n, k, std::move(entries))};
}

/// Structured instance built from kprime nominal scenarios: each of the K
/// final scenarios picks a nominal uniformly at random (with replacement)
/// and perturbs every cost entry by an independent U[0.8, 1.2] factor.
/// The generating assignment and the nominal columns are recorded for
/// cluster-recovery experiments.
struct NominalGeneratedInstance {
  GeneratedInstance base;
  CostMatrix nominal_costs;
  std::vector<std::size_t> scenario_nominal;
};

inline NominalGeneratedInstance instance_nominal(std::size_t n, std::size_t k,
                                                 std::size_t kprime,
                                                 std::uint64_t seed) {
  if (n == 0 || k == 0)
    throw ParameterError("instance_nominal: n and K must be >= 1");
  if (kprime < 1 || kprime >= k)
    throw ParameterError("instance_nominal: K' must satisfy 1 <= K' < K");

  auto b_engine = rng::stream_engine(seed, rng::Stream::item_weights);
  std::vector<double> b(n);
  double total = 0.0;
  for (double& bi : b) {
    bi = rng::next_uniform(b_engine, 0.1, 10.0);
    total += bi;
  }

  auto cost_engine = rng::stream_engine(seed, rng::Stream::costs);
  std::vector<double> nominal(n * kprime);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < kprime; ++j)
      nominal[i * kprime + j] = rng::next_uniform(cost_engine, 0.5, 1.5) * b[i];

  auto choice_engine = rng::stream_engine(seed, rng::Stream::nominal_choice);
  std::vector<std::size_t> choice(k);
  for (std::size_t j = 0; j < k; ++j) choice[j] = rng::next_index(choice_engine, kprime);

  std::vector<double> entries(n * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      entries[i * k + j] =
          nominal[i * kprime + choice[j]] * rng::next_uniform(cost_engine, 0.8, 1.2);

  return NominalGeneratedInstance{
      GeneratedInstance{std::move(b), total / 3.0, CostMatrix(n, k, std::move(entries))},
      CostMatrix(n, kprime, std::move(nominal)), std::move(choice)};
}

inline KnapsackInstance with_weights(const GeneratedInstance& generated, WeightVector w,
                                     std::string name = {}) {
  return KnapsackInstance(generated.item_weights, generated.capacity_lo, std::nullopt,
                          generated.costs, std::move(w), std::move(name));
}

struct CostUniform {};
struct CostNominal {
  std::size_t nominal_count;
};
struct WeightAlpha {
  double alpha;
};
struct WeightPcentra {
  std::size_t p;
};

/// One row of an experiment table: an instance family plus the seed that
/// pins the concrete instance.
struct InstanceConfig {
  std::string name;
  std::size_t items = 0;
  std::size_t objectives = 0;
  std::variant<CostUniform, CostNominal> cost_method = CostUniform{};
  std::variant<WeightAlpha, WeightPcentra> weight_method = WeightAlpha{0.1};
  std::uint64_t seed = 0;
};

inline KnapsackInstance make_instance(const InstanceConfig& config) {
  GeneratedInstance generated = std::visit(
      [&](const auto& method) {
        using T = std::decay_t<decltype(method)>;
        if constexpr (std::is_same_v<T, CostUniform>) {
          return instance_uniform(config.items, config.objectives, config.seed);
        } else {
          return instance_nominal(config.items, config.objectives, method.nominal_count,
                                  config.seed)
              .base;
        }
      },
      config.cost_method);
  WeightVector w = std::visit(
      [&](const auto& method) {
        using T = std::decay_t<decltype(method)>;
        if constexpr (std::is_same_v<T, WeightAlpha>) {
          return weights_alpha(config.objectives, method.alpha);
        } else {
          return weights_pcentra(config.objectives, method.p);
        }
      },
      config.weight_method);
  return with_weights(generated, std::move(w), config.name);
}

}  // namespace owa

#endif  // OWA_GENERATORS_HPP_
