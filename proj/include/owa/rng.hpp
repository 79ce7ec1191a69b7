#ifndef OWA_RNG_HPP_
#define OWA_RNG_HPP_

#include <cstdint>
#include <random>

namespace owa::rng {

/// SplitMix64 mixing step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Named substreams of an instance seed. Generators draw item weights,
/// costs, and nominal-scenario choices from separate engines so the draw
/// counts of one quantity never shift another, and instances are
/// bit-identical across platforms.
enum class Stream : std::uint64_t {
  item_weights = 1,
  costs = 2,
  nominal_choice = 3,
};

/// Engine for substream `s` of `seed`: mt19937_64 seeded with
/// splitmix64(seed ^ golden * stream_id).
inline std::mt19937_64 stream_engine(std::uint64_t seed, Stream s) {
  return std::mt19937_64(
      splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s))));
}

/// Uniform double in [0, 1) from the high 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution, whose output is not
/// pinned down by the standard.
inline double next_u01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double next_uniform(std::mt19937_64& engine, double lo, double hi) {
  return lo + next_u01(engine) * (hi - lo);
}

inline std::size_t next_index(std::mt19937_64& engine, std::size_t n) {
  const auto idx = static_cast<std::size_t>(next_u01(engine) * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

}  // namespace owa::rng

#endif  // OWA_RNG_HPP_
