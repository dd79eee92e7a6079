#include "kantorovich/random.hpp"

#include <algorithm>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

EuclideanSpace random_line(Rng& rng, std::size_t n, std::int64_t span) {
  if (span < static_cast<std::int64_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "span too small for the requested number of points");
  }
  std::vector<double> coords;
  while (coords.size() < n) {
    const double c = static_cast<double>(rng.between(0, span - 1));
    if (std::find(coords.begin(), coords.end(), c) == coords.end()) coords.push_back(c);
  }
  return line(std::move(coords));
}

EuclideanSpace random_euclidean(Rng& rng, std::size_t n, std::size_t dim, Norm norm,
                                std::int64_t range) {
  double capacity = 1.0;
  for (std::size_t c = 0; c < dim; ++c) capacity *= static_cast<double>(2 * range + 1);
  if (range < 0 || capacity < static_cast<double>(n)) {
    throw Error(ErrorCode::InvalidArgument, "grid too small for the requested number of points");
  }
  EuclideanSpace e{dim, norm, {}};
  while (e.roster.size() < n) {
    Point p(dim);
    for (auto& c : p) c = static_cast<double>(rng.between(-range, range));
    if (std::find(e.roster.begin(), e.roster.end(), p) == e.roster.end()) e.roster.push_back(p);
  }
  return e;
}

std::vector<Index> random_indices(Rng& rng, std::size_t roster, std::size_t n) {
  std::vector<Index> out(n);
  for (auto& x : out) x = rng.below(roster);
  return out;
}

std::vector<std::uint64_t> random_composition(Rng& rng, std::uint64_t total, std::size_t parts) {
  if (parts == 0 || parts > total) throw Error(ErrorCode::InvalidArgument, "bad composition");
  // Choose parts-1 distinct cut points in {1, ..., total-1}.
  std::vector<std::uint64_t> cuts;
  while (cuts.size() + 1 < parts) {
    const std::uint64_t c = 1 + rng.below(total - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> out;
  std::uint64_t last = 0;
  for (auto c : cuts) {
    out.push_back(c - last);
    last = c;
  }
  out.push_back(total - last);
  return out;
}

namespace {

std::vector<Index> random_support(Rng& rng, std::size_t roster, std::size_t k) {
  std::vector<Index> all(roster);
  for (Index i = 0; i < roster; ++i) all[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(roster - i)]);
  all.resize(k);
  return all;
}

}  // namespace

DiscreteMeasure random_rational_measure(Rng& rng, const SpacePtr& space, std::size_t max_support,
                                        std::uint64_t max_den) {
  const std::size_t k = 1 + rng.below(std::min(max_support, space->size()));
  const std::uint64_t den = std::max<std::uint64_t>(k, k + rng.below(std::max<std::uint64_t>(max_den, k) - k + 1));
  return DiscreteMeasure::from_rational(space, random_support(rng, space->size(), k),
                                        random_composition(rng, den, k), den);
}

DiscreteMeasure random_float_measure(Rng& rng, const SpacePtr& space, std::size_t max_support) {
  const std::size_t k = 1 + rng.below(std::min(max_support, space->size()));
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) total += (v = 0.05 + rng.uniform01());
  for (auto& v : w) v /= total;
  return DiscreteMeasure::from_weights(space, random_support(rng, space->size(), k), std::move(w));
}

}  // namespace kantorovich
