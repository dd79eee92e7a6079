#include "kantorovich/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kantorovich/error.hpp"
#include "kantorovich/monad.hpp"
#include "kantorovich/random.hpp"

namespace kantorovich {

ApproximationReport rationalize(const DiscreteMeasure& p, double eps, const TransportOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const double grid = std::ceil(1.0 / eps);
  if (grid > 0x1p62) throw Error(ErrorCode::DenominatorTooLarge, "eps too small for a 64-bit grid");
  const auto big_n = static_cast<std::uint64_t>(grid);

  const std::size_t n = p.size();
  std::vector<std::uint64_t> num(n, 0);
  std::uint64_t used = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (const auto& r = p.rational()) {
      num[i] = static_cast<std::uint64_t>(uint128{r->num[i]} * big_n / r->den);
    } else {
      // The tiny inflation keeps products such as 0.3 * 10 from landing just
      // below an integer; it cannot push q_i above p_i by more than 1e-12 N.
      num[i] = static_cast<std::uint64_t>(std::floor(p.weights()[i] * grid * (1.0 + 1e-12)));
      num[i] = std::min(num[i], big_n - used);
    }
    used += num[i];
  }
  num[n - 1] = big_n - used;

  std::vector<Index> support(p.support().begin(), p.support().end());
  auto q = DiscreteMeasure::from_rational(p.space(), std::move(support), std::move(num), big_n);
  const double error = wasserstein(p, q, options).cost;
  const double diam = p.space()->diameter(p.support());
  return {p, std::move(q), error, static_cast<double>(n - 1) * eps * diam, eps, std::nullopt, std::nullopt};
}

ApproximationReport truncate_to_ball(const DiscreteMeasure& p, Index x0, double rho,
                                     const TransportOptions& options) {
  if (!(rho >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  const auto& space = *p.space();
  if (x0 >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "center outside the roster");

  std::vector<Index> support(p.support().begin(), p.support().end());
  double formula = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double d = space(support[i], x0);
    if (d > rho) {
      formula += p.weights()[i] * d;
      support[i] = x0;
    }
  }
  auto truncated = p.is_rational()
                       ? DiscreteMeasure::from_rational(p.space(), std::move(support), p.rational()->num,
                                                        p.rational()->den)
                       : DiscreteMeasure::from_weights(
                             p.space(), std::move(support),
                             std::vector<double>(p.weights().begin(), p.weights().end()));
  const double error = wasserstein(p, truncated, options).cost;
  return {p, std::move(truncated), error, formula, std::nullopt, rho, std::nullopt};
}

MultiSet sample_empirical(const DiscreteMeasure& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
  std::vector<double> cdf;
  cdf.reserve(p.size());
  double running = 0.0;
  for (double w : p.weights()) cdf.push_back(running += w);

  Rng rng(seed);
  std::vector<Index> draws;
  draws.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform01() * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto slot = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), p.size() - 1);
    draws.push_back(p.support()[slot]);
  }
  return MultiSet(p.space(), std::move(draws));
}

std::vector<ConvergenceRow> convergence_study(const DiscreteMeasure& p, const std::vector<std::size_t>& sizes,
                                              std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw Error(ErrorCode::InvalidArgument, "sizes must be ascending");
  }
  std::vector<ConvergenceRow> rows;
  std::vector<double> distances(trials);
  for (std::size_t n : sizes) {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto sample = sample_empirical(p, n, split_seed(seed, n, t));
      distances[t] = wasserstein(empirical_sym(sample), p).cost;
    }
    std::sort(distances.begin(), distances.end());
    const double median = trials % 2 == 1 ? distances[trials / 2]
                                          : 0.5 * (distances[trials / 2 - 1] + distances[trials / 2]);
    rows.push_back({n, median});
  }
  return rows;
}

std::size_t count_inversions(const std::vector<ConvergenceRow>& rows, double slack) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].median_w1 > rows[i - 1].median_w1 + slack) ++count;
  }
  return count;
}

}  // namespace kantorovich
