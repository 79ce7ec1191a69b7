#ifndef OWA_KMEANS_HPP_
#define OWA_KMEANS_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "owa/aggregation.hpp"
#include "owa/core.hpp"
#include "owa/rng.hpp"

namespace owa {

namespace detail {

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

struct LloydRun {
  std::vector<std::size_t> assignment;
  double score;  // sum of Euclidean distances to the final centroids
};

// One seeded Lloyd run: k-means++ initialization, nearest-centroid
// assignment (ties to the lowest centroid index), mean update, and
// empty-cluster repair by moving the point farthest from its centroid.
inline LloydRun lloyd_once(const std::vector<std::vector<double>>& points,
                           std::size_t clusters, std::uint64_t seed,
                           std::size_t max_iterations) {
  const std::size_t count = points.size();
  std::mt19937_64 engine(rng::splitmix64(seed));

  std::vector<std::vector<double>> centers;
  centers.reserve(clusters);
  centers.push_back(points[rng::next_index(engine, count)]);
  std::vector<double> dist2(count, std::numeric_limits<double>::infinity());
  while (centers.size() < clusters) {
    double total = 0.0;
    for (std::size_t p = 0; p < count; ++p) {
      dist2[p] = std::min(dist2[p], squared_distance(points[p], centers.back()));
      total += dist2[p];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng::next_u01(engine) * total;
      double acc = 0.0;
      pick = count - 1;
      for (std::size_t p = 0; p < count; ++p) {
        acc += dist2[p];
        if (acc >= target) {
          pick = p;
          break;
        }
      }
    } else {
      pick = rng::next_index(engine, count);
    }
    centers.push_back(points[pick]);
  }

  std::vector<std::size_t> assignment(count, 0);
  std::vector<std::size_t> sizes(clusters, 0);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::vector<std::size_t> next(count);
    for (std::size_t p = 0; p < count; ++p) {
      std::size_t best = 0;
      double best_d = squared_distance(points[p], centers[0]);
      for (std::size_t c = 1; c < clusters; ++c) {
        const double d = squared_distance(points[p], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[p] = best;
    }

    sizes.assign(clusters, 0);
    for (std::size_t p = 0; p < count; ++p) ++sizes[next[p]];
    for (std::size_t c = 0; c < clusters; ++c) {
      if (sizes[c] > 0) continue;
      // keep every cluster nonempty: steal the point farthest from its
      // centroid, never emptying another cluster
      std::size_t farthest = count;
      double far_d = -1.0;
      for (std::size_t p = 0; p < count; ++p) {
        if (sizes[next[p]] < 2) continue;
        const double d = squared_distance(points[p], centers[next[p]]);
        if (d > far_d) {
          far_d = d;
          farthest = p;
        }
      }
      --sizes[next[farthest]];
      next[farthest] = c;
      ++sizes[c];
    }

    const bool stable = iter > 0 && next == assignment;
    assignment = std::move(next);
    for (std::size_t c = 0; c < clusters; ++c)
      centers[c].assign(centers[c].size(), 0.0);
    for (std::size_t p = 0; p < count; ++p) {
      auto& ctr = centers[assignment[p]];
      for (std::size_t i = 0; i < ctr.size(); ++i) ctr[i] += points[p][i];
    }
    for (std::size_t c = 0; c < clusters; ++c) {
      const double size = static_cast<double>(sizes[c]);
      for (double& v : centers[c]) v /= size;
    }
    if (stable) break;
  }

  double score = 0.0;
  for (std::size_t p = 0; p < count; ++p)
    score += std::sqrt(squared_distance(points[p], centers[assignment[p]]));
  return LloydRun{std::move(assignment), score};
}

// Relabel clusters in order of first appearance so results are canonical.
inline std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& raw,
                                                 std::size_t clusters) {
  std::vector<std::size_t> map(clusters, clusters);
  std::vector<std::size_t> out(raw.size());
  std::size_t next = 0;
  for (std::size_t p = 0; p < raw.size(); ++p) {
    if (map[raw[p]] == clusters) map[raw[p]] = next++;
    out[p] = map[raw[p]];
  }
  return out;
}

}  // namespace detail

/// Partitions the cost columns into kbar nonempty clusters of similar
/// objectives (Euclidean distance, Lloyd iterations, k-means++ seeding).
/// Deterministic in (seed, restarts): restart r runs from seed + r and the
/// best run by summed point-to-centroid distance wins. Returns the
/// cluster index of each objective, clusters numbered by first appearance.
inline std::vector<std::size_t> kmeans_cluster(const CostMatrix& costs, std::size_t kbar,
                                               std::uint64_t seed,
                                               std::size_t restarts = 10,
                                               std::size_t max_iterations = 100) {
  const std::size_t k = costs.objectives();
  if (kbar == 0 || kbar > k)
    throw ParameterError("kmeans_cluster: kbar must lie in [1, K]");
  if (restarts == 0) throw ParameterError("kmeans_cluster: restarts must be >= 1");

  std::vector<std::vector<double>> points(k);
  for (std::size_t c = 0; c < k; ++c) points[c] = costs.column(c);

  detail::LloydRun best{{}, std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < restarts; ++r) {
    auto run = detail::lloyd_once(points, kbar, seed + r, max_iterations);
    if (run.score < best.score) best = std::move(run);
  }
  return detail::canonical_labels(best.assignment, kbar);
}

/// Heuristic aggregation to kbar objectives: cluster the cost columns,
/// replace each cluster by its mean column, and sum the weights into kbar
/// blocks as uniformly as possible (the first K mod kbar blocks take one
/// extra weight). Cluster cardinalities are unconstrained, so no
/// worst-case certificate is attached.
inline AggregationResult kmeans_aggregate(const CostMatrix& costs, const WeightVector& w,
                                          std::size_t kbar, std::uint64_t seed,
                                          std::size_t restarts = 10) {
  if (w.size() != costs.objectives())
    throw DimensionError("kmeans_aggregate: weight count != cost columns");
  detail::require_nonincreasing(w, "kmeans_aggregate");

  const std::size_t k = costs.objectives();
  const std::size_t n = costs.items();
  auto assignment = kmeans_cluster(costs, kbar, seed, restarts);

  std::vector<std::size_t> sizes(kbar, 0);
  for (std::size_t c : assignment) ++sizes[c];

  std::vector<double> entries(n * kbar, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = costs.row(i);
    for (std::size_t j = 0; j < k; ++j) entries[i * kbar + assignment[j]] += row[j];
    for (std::size_t c = 0; c < kbar; ++c)
      entries[i * kbar + c] /= static_cast<double>(sizes[c]);
  }

  // weight blocks: K = a*kbar + b, the first b blocks sum a+1 weights
  const std::size_t a = k / kbar;
  const std::size_t b = k % kbar;
  std::vector<double> wbar(kbar, 0.0);
  std::size_t pos = 0;
  for (std::size_t c = 0; c < kbar; ++c) {
    const std::size_t len = c < b ? a + 1 : a;
    for (std::size_t j = 0; j < len; ++j) wbar[c] += w[pos++];
  }

  WeightVector reduced_weights = [&] {
    if (const auto& exact = w.exact()) {
      std::vector<Rational> r(kbar, Rational(0));
      std::size_t at = 0;
      for (std::size_t c = 0; c < kbar; ++c) {
        const std::size_t len = c < b ? a + 1 : a;
        for (std::size_t j = 0; j < len; ++j) r[c] = r[c] + (*exact)[at++];
      }
      return WeightVector::from_rationals(std::move(r));
    }
    return WeightVector(std::move(wbar));
  }();

  return AggregationResult{CostMatrix(n, kbar, std::move(entries)),
                           std::move(reduced_weights), std::move(assignment),
                           std::nullopt, std::nullopt};
}

}  // namespace owa

#endif  // OWA_KMEANS_HPP_
