#pragma once

#include <functional>
#include <vector>

#include "kantorovich/graded.hpp"
#include "kantorovich/measures.hpp"
#include "kantorovich/random.hpp"
#include "kantorovich/report.hpp"
#include "kantorovich/transport.hpp"

namespace kantorovich {

/// A finitely supported measure on PX: distinct canonical inner measures
/// with positive outer weights.
class NestedMeasure {
 public:
  /// Sorts the inner roster, merges equal inner measures (adding their
  /// weights) and drops zero-weight entries.
  static NestedMeasure create(std::vector<DiscreteMeasure> inner, const ProbabilityVector& outer,
                              double tau_weight = kDefaultTolerances.weight);

  const SpacePtr& space() const noexcept { return inner_.front().space(); }
  const std::vector<DiscreteMeasure>& inner() const noexcept { return inner_; }
  const ProbabilityVector& outer() const noexcept { return outer_; }
  std::size_t size() const noexcept { return inner_.size(); }

 private:
  NestedMeasure(std::vector<DiscreteMeasure> inner, ProbabilityVector outer)
      : inner_(std::move(inner)), outer_(std::move(outer)) {}

  std::vector<DiscreteMeasure> inner_;
  ProbabilityVector outer_;
};

/// A finitely supported measure on PPX, the third level needed by the
/// associativity law.
class TripleMeasure {
 public:
  static TripleMeasure create(std::vector<NestedMeasure> inner, const ProbabilityVector& outer,
                              double tau_weight = kDefaultTolerances.weight);

  const std::vector<NestedMeasure>& inner() const noexcept { return inner_; }
  const ProbabilityVector& outer() const noexcept { return outer_; }

 private:
  TripleMeasure(std::vector<NestedMeasure> inner, ProbabilityVector outer)
      : inner_(std::move(inner)), outer_(std::move(outer)) {}

  std::vector<NestedMeasure> inner_;
  ProbabilityVector outer_;
};

bool nested_equal(const NestedMeasure& a, const NestedMeasure& b,
                  double tau_weight = kDefaultTolerances.weight);
/// Largest outer-weight difference when the inner rosters agree, +inf when
/// they do not. Exact 0 for equal rational inputs.
double nested_discrepancy(const NestedMeasure& a, const NestedMeasure& b,
                          double tau_weight = kDefaultTolerances.weight);

/// Uniform measure on the entries of a tuple (iota^S) or multiset (iota_n);
/// rational with denominator n before reduction.
DiscreteMeasure empirical(const Tuple& t);
DiscreteMeasure empirical_sym(const MultiSet& m);

/// Constructive preimage under iota_n: the multiset of length den(p) whose
/// empirical measure is p. Throws Error{NotRational} for float measures.
MultiSet empirical_witness(const DiscreteMeasure& p);

/// E: PPX -> PX, the expected distribution.
DiscreteMeasure expectation(const NestedMeasure& mu);

/// delta_{PX}(p).
NestedMeasure unit_P(const DiscreteMeasure& p);

using Kernel = std::function<DiscreteMeasure(Index)>;

/// P applied to a kernel X -> PX: the image of p in PPX.
NestedMeasure map_P(const Kernel& kernel, const DiscreteMeasure& p);
/// P(delta)(p).
NestedMeasure map_P_dirac(const DiscreteMeasure& p);

/// E_{PX}: PPPX -> PPX, flattening the outer two layers.
NestedMeasure expectation_outer(const TripleMeasure& m);
/// P(E): PPPX -> PPX, applying E inside.
NestedMeasure map_expectation(const TripleMeasure& m);

/// Outer empirical measure of the inner empirical measures,
/// iota_n((iota_m)_n(nm)), as an element of PPX.
NestedMeasure nested_empirical(const NestedMultiSet& nm);

/// |W1(iota a, iota b) - d_{X_n}(a, b)| with the flow solver on one side
/// and the assignment solver on the other.
double check_iota_isometry(const MultiSet& a, const MultiSet& b);

/// The square in which both ways from (X_m)_n to PPX agree.
bool check_ppx_square(const NestedMultiSet& nm);

/// E(iota_n (iota_m)_n nm) against iota_{mn}(E_{m,n} nm); weight discrepancy.
double check_expectation_square(const NestedMultiSet& nm);

struct LawSampler {
  std::size_t max_points = 6;
  std::size_t max_support = 4;
  std::uint64_t max_den = 6;
  std::size_t max_outer = 3;
  bool rational = true;
};

NestedMeasure random_nested(Rng& rng, const SpacePtr& space, const LawSampler& s);
TripleMeasure random_triple(Rng& rng, const SpacePtr& space, const LawSampler& s);

/// Left unit, right unit and associativity over `trials` random instances.
/// Tolerance 0 on the rational path, 1e-12 on the float path.
std::vector<LawResult> check_monad_laws(const LawSampler& sampler, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace kantorovich
