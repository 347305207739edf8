#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace mvkm {

// Every randomized operation in this project draws through the helpers below
// rather than through std::*_distribution, whose output is implementation
// defined. A seed therefore fully determines every trajectory, and another
// implementation only needs std::mt19937_64 plus these mappings to reproduce
// it bit for bit.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1): top 53 bits of one 64-bit draw.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe as a logarithm argument.
inline double uniform_unit_pos(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// One pair of independent standard normal deviates (Box-Muller transform).
inline std::pair<double, double> gaussian_pair(Rng& rng) {
  const double u1 = uniform_unit_pos(rng);
  const double u2 = uniform_unit(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Uniform integer in [0, bound). Plain modulo mapping: the bias is
/// negligible for the index ranges involved and the definition is portable.
inline std::uint64_t bounded(Rng& rng, std::uint64_t bound) {
  return rng() % bound;
}

/// Draws an index with probability proportional to the increments of
/// `cumulative` (non-decreasing, cumulative.back() == total mass).
inline std::size_t draw_categorical(Rng& rng, const std::vector<double>& cumulative) {
  const double u = uniform_unit(rng) * cumulative.back();
  for (std::size_t k = 0; k + 1 < cumulative.size(); ++k)
    if (u < cumulative[k]) return k;
  return cumulative.size() - 1;
}

/// `count` distinct indices in [0, n), via partial Fisher-Yates shuffle.
inline std::vector<std::int64_t> sample_distinct(Rng& rng, std::int64_t n, std::int64_t count) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), std::int64_t{0});
  for (std::int64_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace mvkm
