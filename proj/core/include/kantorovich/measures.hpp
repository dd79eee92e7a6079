#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kantorovich/spaces.hpp"

namespace kantorovich {

__extension__ typedef unsigned __int128 uint128;

/// Exact weights num[i] / den with a shared denominator, reduced so that
/// gcd(den, num...) == 1. Two equal rational vectors have identical blocks.
struct RationalBlock {
  std::uint64_t den = 1;
  std::vector<std::uint64_t> num;

  friend bool operator==(const RationalBlock&, const RationalBlock&) = default;
};

/// A point of the simplex: float weights plus, when known, their exact
/// rational form.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  /// Throws Error{NotOnSimplex} if an entry is negative or the sum is off
  /// by more than tau_weight.
  static ProbabilityVector from_doubles(std::vector<double> values,
                                        double tau_weight = kDefaultTolerances.weight);
  /// Throws Error{NotOnSimplex} unless sum(num) == den exactly.
  static ProbabilityVector from_rational(std::vector<std::uint64_t> num, std::uint64_t den);
  static ProbabilityVector uniform(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::optional<RationalBlock>& exact() const noexcept { return exact_; }
  bool is_rational() const noexcept { return exact_.has_value(); }

  /// Indices of strictly positive entries.
  std::vector<std::size_t> positive_entries() const;
  /// Sub-vector on `entries`; only valid when the dropped entries are zero.
  ProbabilityVector select(std::span<const std::size_t> entries) const;

 private:
  friend class WeightAccumulator;
  std::vector<double> values_;
  std::optional<RationalBlock> exact_;
};

/// Sums weighted contributions into buckets, exactly when every
/// contribution is rational and nothing overflows 64 bits, in floating
/// point otherwise.
class WeightAccumulator {
 public:
  explicit WeightAccumulator(std::size_t buckets);

  /// Adds num/den to `bucket`; `value` is its float counterpart, used once
  /// the exact path has been abandoned.
  void add_exact(std::size_t bucket, uint128 num, uint128 den, double value);
  void add_float(std::size_t bucket, double value);

  /// Packages the sums; zero buckets are kept.
  ProbabilityVector finish(double tau_weight = kDefaultTolerances.weight) &&;

 private:
  std::vector<double> values_;
  std::vector<uint128> num_;
  uint128 den_ = 1;
  bool exact_ = true;
};

/// A finitely supported probability measure on a space roster, kept in
/// canonical form: strictly increasing support, positive weights.
class DiscreteMeasure {
 public:
  static DiscreteMeasure from_weights(SpacePtr space, std::vector<Index> support,
                                      std::vector<double> weights,
                                      double tau_weight = kDefaultTolerances.weight);
  static DiscreteMeasure from_rational(SpacePtr space, std::vector<Index> support,
                                       std::vector<std::uint64_t> num, std::uint64_t den);
  /// Canonicalizes (merges duplicate indices, drops zero weights).
  static DiscreteMeasure from_vector(SpacePtr space, std::vector<Index> support,
                                     const ProbabilityVector& weights);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const Index> support() const noexcept { return support_; }
  std::span<const double> weights() const noexcept { return weights_.values(); }
  const ProbabilityVector& probabilities() const noexcept { return weights_; }
  bool is_rational() const noexcept { return weights_.is_rational(); }
  const std::optional<RationalBlock>& rational() const noexcept { return weights_.exact(); }

  std::size_t size() const noexcept { return support_.size(); }
  /// Mass at roster point x (0 off the support).
  double mass(Index x) const;

 private:
  DiscreteMeasure(SpacePtr space, std::vector<Index> support, ProbabilityVector weights)
      : space_(std::move(space)), support_(std::move(support)), weights_(std::move(weights)) {}

  SpacePtr space_;
  std::vector<Index> support_;
  ProbabilityVector weights_;
};

DiscreteMeasure dirac(const SpacePtr& space, Index x);

/// f_* p for an index map f from p's roster into `target`.
DiscreteMeasure pushforward(std::span<const Index> f, const SpacePtr& target,
                            const DiscreteMeasure& p);

/// sum_i coeffs_i p_i. Exact when the coefficients and all measures are
/// rational.
DiscreteMeasure mixture(const ProbabilityVector& coeffs, std::span<const DiscreteMeasure> measures,
                        double tau_weight = kDefaultTolerances.weight);

/// Expected distance from x0.
double first_moment(const DiscreteMeasure& p, Index x0);

/// Same support set, weights within tau_weight. Exact comparison when both
/// are rational.
bool measures_equal(const DiscreteMeasure& p, const DiscreteMeasure& q,
                    double tau_weight = kDefaultTolerances.weight);

/// Largest pointwise weight difference over the union of supports; 0 exactly
/// when both are rational and equal.
double weight_discrepancy(const DiscreteMeasure& p, const DiscreteMeasure& q);

/// Strict weak order on canonical measures (support, then weights).
bool measure_less(const DiscreteMeasure& p, const DiscreteMeasure& q);

void require_same_space(const DiscreteMeasure& p, const DiscreteMeasure& q);

}  // namespace kantorovich
