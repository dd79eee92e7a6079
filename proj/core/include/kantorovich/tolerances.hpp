#pragma once

#include <cstddef>

namespace kantorovich {

/// Tolerances threaded through every floating-point comparison.
struct Tolerances {
  double metric = 1e-9;   // distance comparisons (triangle, shortness)
  double weight = 1e-9;   // probability weights
  double solver = 1e-8;   // optimal-value agreement and duality gaps
};

inline constexpr Tolerances kDefaultTolerances{};

/// Maximum number of distance-table entries a product construction may
/// allocate.
inline constexpr std::size_t kDefaultProductCap = 1'000'000;

}  // namespace kantorovich
