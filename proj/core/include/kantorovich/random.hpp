#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "kantorovich/measures.hpp"
#include "kantorovich/power.hpp"

namespace kantorovich {

/// Seedable generator with platform-independent derived draws (the
/// standard distributions are implementation-defined, so they are not used).
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/splitmix64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform on {lo, ..., hi}.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Deterministic child seed for (seed, a, b), so that parallel and serial
/// trial orders draw the same streams.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Distinct integer points of the line in [0, span).
EuclideanSpace random_line(Rng& rng, std::size_t n, std::int64_t span = 20);
/// Distinct integer points of [-range, range]^dim.
EuclideanSpace random_euclidean(Rng& rng, std::size_t n, std::size_t dim, Norm norm,
                                std::int64_t range = 5);

/// Rational measure with support size in [1, max_support] and denominator
/// at most max(max_den, support size).
DiscreteMeasure random_rational_measure(Rng& rng, const SpacePtr& space, std::size_t max_support,
                                        std::uint64_t max_den);
DiscreteMeasure random_float_measure(Rng& rng, const SpacePtr& space, std::size_t max_support);

std::vector<Index> random_indices(Rng& rng, std::size_t roster, std::size_t n);
/// Random composition of `total` into `parts` positive integers.
std::vector<std::uint64_t> random_composition(Rng& rng, std::uint64_t total, std::size_t parts);

}  // namespace kantorovich
