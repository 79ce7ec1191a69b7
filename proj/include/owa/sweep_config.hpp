#ifndef OWA_SWEEP_CONFIG_HPP_
#define OWA_SWEEP_CONFIG_HPP_

#include <istream>
#include <string>

#include <json.hpp>

#include "owa/generators.hpp"
#include "owa/harness.hpp"

namespace owa {

namespace detail {

inline std::variant<CostUniform, CostNominal> parse_cost_method(const std::string& text) {
  if (text == "uniform") return CostUniform{};
  if (text.rfind("nominal:", 0) == 0) {
    const auto count = std::stoull(text.substr(8));
    return CostNominal{static_cast<std::size_t>(count)};
  }
  throw ParseError("unknown cost method '" + text + "' (uniform | nominal:K')");
}

inline std::variant<WeightAlpha, WeightPcentra> parse_weight_method(
    const std::string& text) {
  if (text.rfind("alpha:", 0) == 0) return WeightAlpha{std::stod(text.substr(6))};
  if (text.rfind("pcentra:", 0) == 0) {
    const auto p = std::stoull(text.substr(8));
    return WeightPcentra{static_cast<std::size_t>(p)};
  }
  throw ParseError("unknown weight method '" + text + "' (alpha:A | pcentra:P)");
}

}  // namespace detail

/// Sweep configuration, e.g.:
///
///   {
///     "base_seed": 424242,
///     "repetitions": 20,
///     "time_limit_seconds": 60,
///     "kbar_grid": [1, 2, 5, 10, 25, 50],
///     "kmeans_restarts": 10,
///     "instances": [
///       {"name": "I11", "n": 20, "K": 50,
///        "cost_method": "uniform", "weight_method": "alpha:0.1"}
///     ]
///   }
inline SweepConfig sweep_config_from_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  try {
    SweepConfig config;
    config.base_seed = doc.at("base_seed").get<std::uint64_t>();
    config.repetitions = doc.at("repetitions").get<std::size_t>();
    if (doc.contains("time_limit_seconds"))
      config.time_limit_seconds = doc["time_limit_seconds"].get<double>();
    if (doc.contains("kmeans_restarts"))
      config.kmeans_restarts = doc["kmeans_restarts"].get<std::size_t>();
    config.kbar_grid = doc.at("kbar_grid").get<std::vector<std::size_t>>();
    for (const auto& item : doc.at("instances")) {
      InstanceConfig inst;
      inst.name = item.at("name").get<std::string>();
      inst.items = item.at("n").get<std::size_t>();
      inst.objectives = item.at("K").get<std::size_t>();
      inst.cost_method = detail::parse_cost_method(item.at("cost_method").get<std::string>());
      inst.weight_method =
          detail::parse_weight_method(item.at("weight_method").get<std::string>());
      config.instances.push_back(std::move(inst));
    }
    if (config.instances.empty()) throw ParseError("sweep config: no instances");
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
}

}  // namespace owa

#endif  // OWA_SWEEP_CONFIG_HPP_
