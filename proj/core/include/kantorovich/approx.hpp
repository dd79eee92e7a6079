#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kantorovich/measures.hpp"
#include "kantorovich/power.hpp"
#include "kantorovich/transport.hpp"

namespace kantorovich {

struct ApproximationReport {
  DiscreteMeasure target;
  DiscreteMeasure approximant;
  double w1_error = 0.0;
  /// Closed-form bound or identity value; +inf when none applies.
  double bound = 0.0;
  std::optional<double> eps;
  std::optional<double> rho;
  std::optional<std::size_t> n;
};

/// Rational weights q with q_i <= p_i and p_i - q_i < eps for every entry but
/// the last, which absorbs the remainder. The grid is 1/N with N = ceil(1/eps).
/// bound = (n - 1) eps D, D the diameter of supp p.
ApproximationReport rationalize(const DiscreteMeasure& p, double eps,
                                const TransportOptions& options = {});

/// Moves the mass outside the closed ball B(x0, rho) onto x0. bound holds the
/// closed form sum_{d(x_i, x0) > rho} w_i d(x_i, x0); w1_error comes from the
/// transport solver.
ApproximationReport truncate_to_ball(const DiscreteMeasure& p, Index x0, double rho,
                                     const TransportOptions& options = {});

/// n i.i.d. draws by inverse CDF over the support order.
MultiSet sample_empirical(const DiscreteMeasure& p, std::size_t n, std::uint64_t seed);

struct ConvergenceRow {
  std::size_t n = 0;
  double median_w1 = 0.0;
};

/// Median over `trials` of W1(iota_n(sample), p) for each size. Trial seeds are
/// split per (n, trial), so the table does not depend on evaluation order.
std::vector<ConvergenceRow> convergence_study(const DiscreteMeasure& p,
                                              const std::vector<std::size_t>& sizes,
                                              std::size_t trials, std::uint64_t seed);

/// Number of i with rows[i+1].median_w1 > rows[i].median_w1 + slack.
std::size_t count_inversions(const std::vector<ConvergenceRow>& rows, double slack = 0.0);

}  // namespace kantorovich
