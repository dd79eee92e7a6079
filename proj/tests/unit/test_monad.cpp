#include <doctest.h>

#include "kantorovich/error.hpp"
#include "kantorovich/monad.hpp"
#include "kantorovich/random.hpp"

using namespace kantorovich;

TEST_SUITE("monad") {

TEST_CASE("empirical measures") {
  const auto x = line({0, 1, 2, 3}).to_metric_space();
  const auto p = empirical_sym(MultiSet(x, {0, 0, 3}));
  REQUIRE(p.size() == 2);
  CHECK(p.rational()->den == 3);
  CHECK(p.rational()->num == std::vector<std::uint64_t>{2, 1});
  CHECK(measures_equal(empirical(Tuple(x, {3, 0, 0})), p));
}

TEST_CASE("empirical witness") {
  const auto x = line({0, 1, 2, 3}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {1, 3}, {1, 3}, 4);
  const auto w = empirical_witness(p);
  CHECK(w.entries == std::vector<Index>{1, 3, 3, 3});
  CHECK(measures_equal(empirical_sym(w), p));
  CHECK_THROWS_AS(empirical_witness(DiscreteMeasure::from_weights(x, {0, 1}, {0.3, 0.7})), Error);
}

TEST_CASE("expectation") {
  const auto x = line({0, 1, 2}).to_metric_space();
  const auto a = dirac(x, 0);
  const auto b = DiscreteMeasure::from_rational(x, {0, 2}, {1, 1}, 2);
  const auto mu = NestedMeasure::create({a, b}, ProbabilityVector::from_rational({1, 1}, 2));
  const auto e = expectation(mu);
  REQUIRE(e.rational().has_value());
  CHECK(e.rational()->den == 4);
  CHECK(e.rational()->num == std::vector<std::uint64_t>{3, 1});
  CHECK(e.support()[1] == 2);
}

TEST_CASE("nested measures merge equal inner measures") {
  const auto x = line({0, 1}).to_metric_space();
  const auto mu = NestedMeasure::create({dirac(x, 1), dirac(x, 0), dirac(x, 1)},
                                        ProbabilityVector::from_rational({1, 1, 2}, 4));
  REQUIRE(mu.size() == 2);
  CHECK(mu.inner()[0].support()[0] == 0);
  CHECK(mu.outer().values()[1] == 0.75);
  CHECK_THROWS_AS(NestedMeasure::create({dirac(x, 0), dirac(line({0}).to_metric_space(), 0)},
                                        ProbabilityVector::uniform(2)),
                  Error);
}

TEST_CASE("unit laws on examples") {
  Rng rng(3);
  const auto x = random_line(rng, 5).to_metric_space();
  for (int t = 0; t < 30; ++t) {
    const auto p = random_rational_measure(rng, x, 4, 8);
    CHECK(weight_discrepancy(expectation(unit_P(p)), p) == 0.0);
    CHECK(weight_discrepancy(expectation(map_P_dirac(p)), p) == 0.0);
    const auto u = unit_P(p);
    CHECK(u.size() == 1);
    CHECK(u.outer().values()[0] == 1.0);
  }
  const auto d = dirac(x, 2);
  CHECK(nested_discrepancy(map_P_dirac(d), unit_P(d)) == 0.0);
}

TEST_CASE("iota is an isometry") {
  const auto r = line({0, 0.5, 1, 3}).to_metric_space();
  const MultiSet a(r, {0, 2}), b(r, {1, 3});
  CHECK(wasserstein(empirical_sym(a), empirical_sym(b)).cost == doctest::Approx(1.25));
  CHECK(check_iota_isometry(a, b) <= 1e-12);
  Rng rng(19);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_euclidean(rng, 5, 2, Norm::L2).to_metric_space();
    const std::size_t n = 1 + rng.below(5);
    CHECK(check_iota_isometry(MultiSet(x, random_indices(rng, 5, n)), MultiSet(x, random_indices(rng, 5, n))) <=
          1e-9);
  }
}

TEST_CASE("ppx and expectation squares") {
  const auto x = line({0, 1}).to_metric_space();
  const NestedMultiSet nm(x, {{0, 1}, {0, 1}});
  CHECK(check_ppx_square(nm));
  const auto e = nested_empirical(nm);
  CHECK(e.size() == 1);
  CHECK(check_expectation_square(nm) == 0.0);
  Rng rng(23);
  const auto y = random_line(rng, 4).to_metric_space();
  for (int t = 0; t < 40; ++t) {
    std::vector<std::vector<Index>> rows(1 + rng.below(3));
    const std::size_t m = 1 + rng.below(3);
    for (auto& row : rows) row = random_indices(rng, 4, m);
    const NestedMultiSet g(y, rows);
    CHECK(check_ppx_square(g));
    CHECK(check_expectation_square(g) == 0.0);
  }
}

TEST_CASE("monad laws on both weight paths") {
  LawSampler rational;
  LawSampler floating;
  floating.rational = false;
  for (const auto& r : check_monad_laws(rational, 50, 1)) {
    INFO(r.law);
    CHECK(r.pass);
    CHECK(r.worst_discrepancy == 0.0);
    CHECK(r.trials == 50);
  }
  for (const auto& r : check_monad_laws(floating, 50, 1)) {
    INFO(r.law);
    CHECK(r.pass);
    CHECK(r.worst_discrepancy <= 1e-12);
  }
}

}  // TEST_SUITE
