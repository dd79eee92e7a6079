#pragma once

// Slow reference implementations that share no code with the solvers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "kantorovich/measures.hpp"
#include "kantorovich/power.hpp"
#include "kantorovich/random.hpp"

namespace oracle {

using kantorovich::DiscreteMeasure;
using kantorovich::Index;

// Minimum over all permutations of (1/n) sum d(a_i, b_sigma(i)).
inline double multiset_min(const kantorovich::MultiSet& a, const kantorovich::MultiSet& b) {
  const auto& d = *a.space;
  std::vector<std::size_t> sigma(a.size());
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) s += d(a.entries[i], b.entries[sigma[i]]);
    best = std::min(best, s);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best / static_cast<double>(a.size());
}

// Uniform multiset of length den whose empirical measure is p.
inline std::vector<Index> expand(const DiscreteMeasure& p, std::uint64_t den) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& r = *p.rational();
    out.insert(out.end(), r.num[i] * (den / r.den), p.support()[i]);
  }
  return out;
}

// W1 between rational measures through the multiset identification.
inline double w1_by_permutation(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  const auto den = std::lcm(p.rational()->den, q.rational()->den);
  return multiset_min(kantorovich::MultiSet(p.space(), expand(p, den)),
                      kantorovich::MultiSet(q.space(), expand(q, den)));
}

// Same shared denominator for both measures, which keeps permutations small.
inline DiscreteMeasure rational_with_den(kantorovich::Rng& rng, const kantorovich::SpacePtr& space,
                                         std::uint64_t den) {
  const std::size_t k = 1 + rng.below(std::min<std::uint64_t>(den, space->size()));
  std::vector<Index> pts(space->size());
  std::iota(pts.begin(), pts.end(), Index{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(pts[i], pts[i + rng.below(pts.size() - i)]);
  pts.resize(k);
  return DiscreteMeasure::from_rational(space, pts, kantorovich::random_composition(rng, den, k), den);
}

inline kantorovich::SpacePtr random_space(kantorovich::Rng& rng, std::size_t max_points) {
  const std::size_t n = 1 + rng.below(max_points);
  if (rng.below(2) == 0) return kantorovich::random_line(rng, n, 40).to_metric_space();
  static constexpr kantorovich::Norm kNorms[] = {kantorovich::Norm::L1, kantorovich::Norm::L2,
                                                 kantorovich::Norm::LInf};
  return kantorovich::random_euclidean(rng, n, 2, kNorms[rng.below(3)], 5).to_metric_space();
}

}  // namespace oracle
