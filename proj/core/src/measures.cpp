#include "kantorovich/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

constexpr uint128 kMax64 = std::numeric_limits<std::uint64_t>::max();

uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    const uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Divides den and all numerators by their common gcd.
RationalBlock reduce(std::vector<uint128> num, uint128 den) {
  uint128 g = den;
  for (auto v : num) g = gcd128(g, v);
  if (g == 0) g = 1;
  RationalBlock block;
  block.den = static_cast<std::uint64_t>(den / g);
  block.num.reserve(num.size());
  for (auto v : num) block.num.push_back(static_cast<std::uint64_t>(v / g));
  return block;
}

}  // namespace

ProbabilityVector ProbabilityVector::from_doubles(std::vector<double> values, double tau_weight) {
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NotOnSimplex, "weights must be finite and nonnegative");
    }
    total += v;
  }
  if (values.empty() || std::abs(total - 1.0) > tau_weight) {
    throw Error(ErrorCode::NotOnSimplex, "weights do not sum to 1");
  }
  ProbabilityVector out;
  out.values_ = std::move(values);
  return out;
}

ProbabilityVector ProbabilityVector::from_rational(std::vector<std::uint64_t> num,
                                                   std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::NotOnSimplex, "zero denominator");
  uint128 total = 0;
  for (auto v : num) total += v;
  if (num.empty() || total != den) {
    throw Error(ErrorCode::NotOnSimplex, "rational weights do not sum to 1");
  }
  ProbabilityVector out;
  out.exact_ = reduce(std::vector<uint128>(num.begin(), num.end()), den);
  out.values_.reserve(num.size());
  for (auto v : out.exact_->num) {
    out.values_.push_back(static_cast<double>(v) / static_cast<double>(out.exact_->den));
  }
  return out;
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  return from_rational(std::vector<std::uint64_t>(n, 1), n);
}

std::vector<std::size_t> ProbabilityVector::positive_entries() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const bool positive = exact_ ? exact_->num[i] > 0 : values_[i] > 0.0;
    if (positive) out.push_back(i);
  }
  return out;
}

ProbabilityVector ProbabilityVector::select(std::span<const std::size_t> entries) const {
  ProbabilityVector out;
  out.values_.reserve(entries.size());
  for (auto i : entries) out.values_.push_back(values_.at(i));
  if (exact_) {
    RationalBlock block{exact_->den, {}};
    for (auto i : entries) block.num.push_back(exact_->num.at(i));
    out.exact_ = std::move(block);
  }
  return out;
}

WeightAccumulator::WeightAccumulator(std::size_t buckets)
    : values_(buckets, 0.0), num_(buckets, 0) {}

void WeightAccumulator::add_float(std::size_t bucket, double value) {
  values_.at(bucket) += value;
  exact_ = false;
}

void WeightAccumulator::add_exact(std::size_t bucket, uint128 num, uint128 den, double value) {
  values_.at(bucket) += value;
  if (!exact_) return;
  if (den == 0 || den > kMax64) {
    exact_ = false;
    return;
  }
  const uint128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  const uint128 common = den_ / gcd128(den_, den) * den;
  if (common > kMax64) {
    exact_ = false;
    return;
  }
  if (common != den_) {
    const uint128 scale = common / den_;
    for (auto& v : num_) v *= scale;
    den_ = common;
  }
  num_[bucket] += num * (common / den);
}

ProbabilityVector WeightAccumulator::finish(double tau_weight) && {
  if (!exact_) return ProbabilityVector::from_doubles(std::move(values_), tau_weight);
  uint128 total = 0;
  for (auto v : num_) total += v;
  if (total != den_) throw Error(ErrorCode::NotOnSimplex, "rational weights do not sum to 1");
  ProbabilityVector out;
  out.exact_ = reduce(std::move(num_), den_);
  out.values_.reserve(out.exact_->num.size());
  for (auto v : out.exact_->num) {
    out.values_.push_back(static_cast<double>(v) / static_cast<double>(out.exact_->den));
  }
  return out;
}

DiscreteMeasure DiscreteMeasure::from_vector(SpacePtr space, std::vector<Index> support,
                                             const ProbabilityVector& weights) {
  if (!space) throw Error(ErrorCode::InvalidMeasure, "measure needs a space");
  if (support.size() != weights.size()) {
    throw Error(ErrorCode::ShapeMismatch, "support and weights differ in length");
  }
  for (Index x : support) {
    if (x >= space->size()) throw Error(ErrorCode::IndexOutOfRange, "support index out of range");
  }

  std::vector<Index> order(support.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return support[a] < support[b]; });
  std::vector<Index> keys;
  std::vector<std::size_t> bucket_of(support.size());
  for (Index k : order) {
    if (keys.empty() || keys.back() != support[k]) keys.push_back(support[k]);
    bucket_of[k] = keys.size() - 1;
  }

  WeightAccumulator acc(keys.size());
  const auto& exact = weights.exact();
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (exact) {
      acc.add_exact(bucket_of[k], exact->num[k], exact->den, weights[k]);
    } else {
      acc.add_float(bucket_of[k], weights[k]);
    }
  }
  auto merged = std::move(acc).finish(std::numeric_limits<double>::infinity());
  const auto keep = merged.positive_entries();
  if (keep.empty()) throw Error(ErrorCode::InvalidMeasure, "measure has empty support");
  std::vector<Index> canonical;
  canonical.reserve(keep.size());
  for (auto i : keep) canonical.push_back(keys[i]);
  return DiscreteMeasure(std::move(space), std::move(canonical), merged.select(keep));
}

DiscreteMeasure DiscreteMeasure::from_weights(SpacePtr space, std::vector<Index> support,
                                              std::vector<double> weights, double tau_weight) {
  return from_vector(std::move(space), std::move(support),
                     ProbabilityVector::from_doubles(std::move(weights), tau_weight));
}

DiscreteMeasure DiscreteMeasure::from_rational(SpacePtr space, std::vector<Index> support,
                                               std::vector<std::uint64_t> num, std::uint64_t den) {
  return from_vector(std::move(space), std::move(support),
                     ProbabilityVector::from_rational(std::move(num), den));
}

double DiscreteMeasure::mass(Index x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return 0.0;
  return weights_[static_cast<std::size_t>(it - support_.begin())];
}

void require_same_space(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  if (p.space() != q.space()) {
    throw Error(ErrorCode::MismatchedSpaces, "measures live on different spaces");
  }
}

DiscreteMeasure dirac(const SpacePtr& space, Index x) {
  return DiscreteMeasure::from_rational(space, {x}, {1}, 1);
}

DiscreteMeasure pushforward(std::span<const Index> f, const SpacePtr& target,
                            const DiscreteMeasure& p) {
  if (f.size() != p.space()->size()) {
    throw Error(ErrorCode::ShapeMismatch, "map must be total on the source roster");
  }
  std::vector<Index> image;
  image.reserve(p.size());
  for (Index x : p.support()) image.push_back(f[x]);
  return DiscreteMeasure::from_vector(target, std::move(image), p.probabilities());
}

DiscreteMeasure mixture(const ProbabilityVector& coeffs, std::span<const DiscreteMeasure> measures,
                        double tau_weight) {
  if (measures.empty() || coeffs.size() != measures.size()) {
    throw Error(ErrorCode::ShapeMismatch, "one coefficient per measure required");
  }
  const auto& space = measures.front().space();
  for (const auto& m : measures) require_same_space(measures.front(), m);

  // Bucket by roster index, then canonicalize.
  std::vector<Index> support;
  for (const auto& m : measures) support.insert(support.end(), m.support().begin(), m.support().end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  auto bucket = [&](Index x) {
    return static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), x) -
                                    support.begin());
  };

  WeightAccumulator acc(support.size());
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const auto& m = measures[i];
    for (std::size_t k = 0; k < m.size(); ++k) {
      const double value = coeffs[i] * m.weights()[k];
      if (coeffs.is_rational() && m.is_rational()) {
        acc.add_exact(bucket(m.support()[k]),
                      uint128(coeffs.exact()->num[i]) * m.rational()->num[k],
                      uint128(coeffs.exact()->den) * m.rational()->den, value);
      } else {
        acc.add_float(bucket(m.support()[k]), value);
      }
    }
  }
  return DiscreteMeasure::from_vector(space, std::move(support), std::move(acc).finish(tau_weight));
}

double first_moment(const DiscreteMeasure& p, Index x0) {
  const auto& space = *p.space();
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) acc += p.weights()[k] * space.at(x0, p.support()[k]);
  return acc;
}

double weight_discrepancy(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  require_same_space(p, q);
  if (p.is_rational() && q.is_rational() && *p.rational() == *q.rational() &&
      std::equal(p.support().begin(), p.support().end(), q.support().begin(), q.support().end())) {
    return 0.0;
  }
  double worst = 0.0;
  for (Index x : p.support()) worst = std::max(worst, std::abs(p.mass(x) - q.mass(x)));
  for (Index x : q.support()) worst = std::max(worst, std::abs(p.mass(x) - q.mass(x)));
  return worst;
}

bool measures_equal(const DiscreteMeasure& p, const DiscreteMeasure& q, double tau_weight) {
  require_same_space(p, q);
  if (!std::equal(p.support().begin(), p.support().end(), q.support().begin(),
                  q.support().end())) {
    return false;
  }
  if (p.is_rational() && q.is_rational()) return *p.rational() == *q.rational();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::abs(p.weights()[k] - q.weights()[k]) > tau_weight) return false;
  }
  return true;
}

bool measure_less(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  if (!std::equal(p.support().begin(), p.support().end(), q.support().begin(),
                  q.support().end())) {
    return std::lexicographical_compare(p.support().begin(), p.support().end(),
                                        q.support().begin(), q.support().end());
  }
  return std::lexicographical_compare(p.weights().begin(), p.weights().end(),
                                      q.weights().begin(), q.weights().end());
}

}  // namespace kantorovich
