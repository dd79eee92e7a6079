#include "kantorovich/monad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

// Sorts `items` with `less`, merges runs that `equal` identifies (adding
// their weights, exactly when possible) and drops zero weights.
template <class T, class Less, class Equal>
std::pair<std::vector<T>, ProbabilityVector> canonical_roster(std::vector<T> items,
                                                              const ProbabilityVector& weights,
                                                              Less less, Equal equal,
                                                              double tau_weight) {
  if (items.empty() || items.size() != weights.size()) {
    throw Error(ErrorCode::ShapeMismatch, "one weight per inner element required");
  }
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return less(items[a], items[b]); });

  std::vector<std::size_t> representative;
  std::vector<std::size_t> bucket(items.size());
  for (auto k : order) {
    if (representative.empty() || !equal(items[representative.back()], items[k])) {
      representative.push_back(k);
    }
    bucket[k] = representative.size() - 1;
  }

  WeightAccumulator acc(representative.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (weights.is_rational()) {
      acc.add_exact(bucket[k], weights.exact()->num[k], weights.exact()->den, weights[k]);
    } else {
      acc.add_float(bucket[k], weights[k]);
    }
  }
  auto merged = std::move(acc).finish(tau_weight);
  const auto keep = merged.positive_entries();
  if (keep.empty()) throw Error(ErrorCode::InvalidMeasure, "nested measure has empty support");
  std::vector<T> out;
  out.reserve(keep.size());
  for (auto b : keep) out.push_back(std::move(items[representative[b]]));
  return {std::move(out), merged.select(keep)};
}

bool nested_less(const NestedMeasure& a, const NestedMeasure& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (measure_less(a.inner()[k], b.inner()[k])) return true;
    if (measure_less(b.inner()[k], a.inner()[k])) return false;
  }
  return std::lexicographical_compare(a.outer().values().begin(), a.outer().values().end(),
                                      b.outer().values().begin(), b.outer().values().end());
}

// Product weights outer_i * inner_ij for a flattened two-level roster.
class ProductWeights {
 public:
  explicit ProductWeights(std::size_t n) : acc_(n) {}

  void add(std::size_t bucket, const ProbabilityVector& outer, std::size_t i,
           const ProbabilityVector& inner, std::size_t j) {
    const double value = outer[i] * inner[j];
    if (outer.is_rational() && inner.is_rational()) {
      acc_.add_exact(bucket, uint128(outer.exact()->num[i]) * inner.exact()->num[j],
                     uint128(outer.exact()->den) * inner.exact()->den, value);
    } else {
      acc_.add_float(bucket, value);
    }
  }
  ProbabilityVector finish(double tau_weight) && { return std::move(acc_).finish(tau_weight); }

 private:
  WeightAccumulator acc_;
};

ProbabilityVector counts_over(const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  return ProbabilityVector::from_rational(counts, n);
}

}  // namespace

NestedMeasure NestedMeasure::create(std::vector<DiscreteMeasure> inner,
                                    const ProbabilityVector& outer, double tau_weight) {
  for (const auto& m : inner) require_same_space(inner.front(), m);
  auto [items, weights] = canonical_roster(
      std::move(inner), outer, measure_less,
      [tau_weight](const DiscreteMeasure& a, const DiscreteMeasure& b) {
        return measures_equal(a, b, tau_weight);
      },
      tau_weight);
  return NestedMeasure(std::move(items), std::move(weights));
}

TripleMeasure TripleMeasure::create(std::vector<NestedMeasure> inner,
                                    const ProbabilityVector& outer, double tau_weight) {
  auto [items, weights] = canonical_roster(
      std::move(inner), outer, nested_less,
      [tau_weight](const NestedMeasure& a, const NestedMeasure& b) {
        return nested_equal(a, b, tau_weight);
      },
      tau_weight);
  return TripleMeasure(std::move(items), std::move(weights));
}

double nested_discrepancy(const NestedMeasure& a, const NestedMeasure& b, double tau_weight) {
  if (a.space() != b.space()) throw Error(ErrorCode::MismatchedSpaces, "different spaces");
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!measures_equal(a.inner()[k], b.inner()[k], tau_weight)) {
      return std::numeric_limits<double>::infinity();
    }
  }
  if (a.outer().is_rational() && b.outer().is_rational() && *a.outer().exact() == *b.outer().exact()) {
    return 0.0;
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a.outer()[k] - b.outer()[k]));
  }
  return worst;
}

bool nested_equal(const NestedMeasure& a, const NestedMeasure& b, double tau_weight) {
  return nested_discrepancy(a, b, tau_weight) <= tau_weight;
}

DiscreteMeasure empirical(const Tuple& t) {
  return DiscreteMeasure::from_rational(t.space, t.entries,
                                        std::vector<std::uint64_t>(t.size(), 1), t.size());
}

DiscreteMeasure empirical_sym(const MultiSet& m) {
  return DiscreteMeasure::from_rational(m.space, m.entries,
                                        std::vector<std::uint64_t>(m.size(), 1), m.size());
}

MultiSet empirical_witness(const DiscreteMeasure& p) {
  if (!p.is_rational()) throw Error(ErrorCode::NotRational, "witness needs rational weights");
  std::vector<Index> entries;
  entries.reserve(p.rational()->den);
  for (std::size_t k = 0; k < p.size(); ++k) {
    entries.insert(entries.end(), p.rational()->num[k], p.support()[k]);
  }
  return MultiSet(p.space(), std::move(entries));
}

DiscreteMeasure expectation(const NestedMeasure& mu) { return mixture(mu.outer(), mu.inner()); }

NestedMeasure unit_P(const DiscreteMeasure& p) {
  return NestedMeasure::create({p}, ProbabilityVector::uniform(1));
}

NestedMeasure map_P(const Kernel& kernel, const DiscreteMeasure& p) {
  std::vector<DiscreteMeasure> inner;
  inner.reserve(p.size());
  for (Index x : p.support()) inner.push_back(kernel(x));
  return NestedMeasure::create(std::move(inner), p.probabilities());
}

NestedMeasure map_P_dirac(const DiscreteMeasure& p) {
  const auto space = p.space();
  return map_P([&space](Index x) { return dirac(space, x); }, p);
}

NestedMeasure expectation_outer(const TripleMeasure& m) {
  std::size_t total = 0;
  for (const auto& nested : m.inner()) total += nested.size();
  std::vector<DiscreteMeasure> inner;
  inner.reserve(total);
  ProductWeights weights(total);
  for (std::size_t i = 0; i < m.inner().size(); ++i) {
    const auto& nested = m.inner()[i];
    for (std::size_t j = 0; j < nested.size(); ++j) {
      weights.add(inner.size(), m.outer(), i, nested.outer(), j);
      inner.push_back(nested.inner()[j]);
    }
  }
  return NestedMeasure::create(std::move(inner), std::move(weights).finish(kDefaultTolerances.weight));
}

NestedMeasure map_expectation(const TripleMeasure& m) {
  std::vector<DiscreteMeasure> inner;
  inner.reserve(m.inner().size());
  for (const auto& nested : m.inner()) inner.push_back(expectation(nested));
  return NestedMeasure::create(std::move(inner), m.outer());
}

NestedMeasure nested_empirical(const NestedMultiSet& nm) {
  std::vector<DiscreteMeasure> inner;
  inner.reserve(nm.outer());
  for (std::size_t k = 0; k < nm.outer(); ++k) inner.push_back(empirical_sym(nm.row(k)));
  return NestedMeasure::create(std::move(inner), ProbabilityVector::uniform(nm.outer()));
}

double check_iota_isometry(const MultiSet& a, const MultiSet& b) {
  TransportOptions flow_only;
  flow_only.solver = Solver::Flow;
  const double w1 = wasserstein(empirical_sym(a), empirical_sym(b), flow_only).cost;
  return std::abs(w1 - multiset_distance(a, b));
}

bool check_ppx_square(const NestedMultiSet& nm) {
  // Other way round: first the outer empirical measure on X_m (rows are
  // canonical and sorted, so equal rows are adjacent), then push along iota_m.
  std::vector<DiscreteMeasure> distinct;
  std::vector<std::uint64_t> counts;
  for (std::size_t k = 0; k < nm.outer(); ++k) {
    if (k > 0 && nm.rows[k] == nm.rows[k - 1]) {
      ++counts.back();
      continue;
    }
    distinct.push_back(empirical_sym(nm.row(k)));
    counts.push_back(1);
  }
  const auto pushed = NestedMeasure::create(std::move(distinct), counts_over(counts, nm.outer()));
  return nested_discrepancy(nested_empirical(nm), pushed) == 0.0;
}

double check_expectation_square(const NestedMultiSet& nm) {
  return weight_discrepancy(expectation(nested_empirical(nm)), empirical_sym(flatten_multiset(nm)));
}

namespace {

DiscreteMeasure sample_measure(Rng& rng, const SpacePtr& space, const LawSampler& s) {
  return s.rational ? random_rational_measure(rng, space, s.max_support, s.max_den)
                    : random_float_measure(rng, space, s.max_support);
}

ProbabilityVector sample_weights(Rng& rng, std::size_t k, const LawSampler& s) {
  if (s.rational) {
    const std::uint64_t den = k + rng.below(std::max<std::uint64_t>(s.max_den, k) - k + 1);
    return ProbabilityVector::from_rational(random_composition(rng, den, k), den);
  }
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) total += (v = 0.05 + rng.uniform01());
  for (auto& v : w) v /= total;
  return ProbabilityVector::from_doubles(std::move(w));
}

}  // namespace

NestedMeasure random_nested(Rng& rng, const SpacePtr& space, const LawSampler& s) {
  const std::size_t k = 1 + rng.below(s.max_outer);
  std::vector<DiscreteMeasure> inner;
  for (std::size_t i = 0; i < k; ++i) inner.push_back(sample_measure(rng, space, s));
  return NestedMeasure::create(std::move(inner), sample_weights(rng, k, s));
}

TripleMeasure random_triple(Rng& rng, const SpacePtr& space, const LawSampler& s) {
  const std::size_t k = 1 + rng.below(s.max_outer);
  std::vector<NestedMeasure> inner;
  for (std::size_t i = 0; i < k; ++i) inner.push_back(random_nested(rng, space, s));
  return TripleMeasure::create(std::move(inner), sample_weights(rng, k, s));
}

std::vector<LawResult> check_monad_laws(const LawSampler& sampler, std::size_t trials,
                                        std::uint64_t seed) {
  const double tol = sampler.rational ? 0.0 : 1e-12;
  const std::string suffix = sampler.rational ? ".rational" : ".float";
  LawResult left{"monad.left_unit" + suffix, 0, 0.0, tol, true};
  LawResult right{"monad.right_unit" + suffix, 0, 0.0, tol, true};
  LawResult assoc{"monad.associativity" + suffix, 0, 0.0, tol, true};

  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, 0x6d6f6e6164, trial));
    const std::size_t points = 1 + rng.below(sampler.max_points);
    const auto space = random_line(rng, points, std::max<std::int64_t>(20, 2 * static_cast<std::int64_t>(points))).to_metric_space();
    const auto p = sample_measure(rng, space, sampler);
    record(left, weight_discrepancy(expectation(unit_P(p)), p));
    record(right, weight_discrepancy(expectation(map_P_dirac(p)), p));
    const auto t = random_triple(rng, space, sampler);
    record(assoc, weight_discrepancy(expectation(expectation_outer(t)),
                                     expectation(map_expectation(t))));
  }
  return {left, right, assoc};
}

}  // namespace kantorovich
