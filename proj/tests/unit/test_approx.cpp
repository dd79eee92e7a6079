#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kantorovich/approx.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/random.hpp"

using namespace kantorovich;

TEST_SUITE("approx") {

TEST_CASE("rationalize example") {
  const auto x = line({0, 2}).to_metric_space();
  const auto p = DiscreteMeasure::from_weights(x, {0, 1}, {0.35, 0.65});
  const auto r = rationalize(p, 0.1);
  REQUIRE(r.approximant.rational().has_value());
  CHECK(r.approximant.rational()->den == 10);
  CHECK(r.approximant.rational()->num == std::vector<std::uint64_t>{3, 7});
  CHECK(r.w1_error == doctest::Approx(0.1));
  CHECK(r.bound == doctest::Approx(0.2));
  CHECK(r.eps == 0.1);
}

TEST_CASE("rationalize edge cases") {
  const auto x = line({0, 1, 5}).to_metric_space();
  const auto single = rationalize(dirac(x, 2), 0.3);
  CHECK(single.w1_error == 0.0);
  CHECK(single.bound == 0.0);
  const auto exact = rationalize(DiscreteMeasure::from_rational(x, {0, 2}, {1, 3}, 4), 0.25);
  CHECK(exact.w1_error == 0.0);
  CHECK_THROWS_AS(rationalize(dirac(x, 0), 0.0), Error);
  CHECK_THROWS_AS(rationalize(dirac(x, 0), -1.0), Error);
  CHECK_THROWS_AS(rationalize(dirac(x, 0), 1e-300), Error);
}

TEST_CASE("rationalize stays within the bound") {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_euclidean(rng, 6, 2, Norm::L2).to_metric_space();
    const auto p = rng.below(2) ? random_float_measure(rng, x, 6) : random_rational_measure(rng, x, 6, 30);
    const double eps = std::pow(10.0, -rng.uniform(0.5, 4));
    const auto r = rationalize(p, eps);
    CHECK(r.w1_error <= r.bound + 1e-12);
    for (std::size_t i = 0; i + 1 < r.approximant.size(); ++i) CHECK(r.approximant.weights()[i] <= p.mass(r.approximant.support()[i]));
  }
}

TEST_CASE("truncate to ball") {
  const auto x = line({0, 1, 10}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 2}, {1, 1}, 2);
  const auto r = truncate_to_ball(p, 0, 2.0);
  CHECK(r.w1_error == doctest::Approx(5.0));
  CHECK(r.bound == doctest::Approx(5.0));
  CHECK(r.approximant.size() == 1);
  CHECK(truncate_to_ball(p, 0, 10.0).w1_error == 0.0);
  CHECK_THROWS_AS(truncate_to_ball(p, 0, -1.0), Error);
  CHECK_THROWS_AS(truncate_to_ball(p, 3, 1.0), Error);

  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto y = random_euclidean(rng, 7, 2, Norm::L1).to_metric_space();
    const auto q = random_rational_measure(rng, y, 5, 12);
    const auto tr = truncate_to_ball(q, rng.below(7), rng.uniform(0, 8));
    CHECK(std::abs(tr.w1_error - tr.bound) <= 1e-8);
  }
}

TEST_CASE("empirical sampling") {
  const auto x = line({0, 1}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 1}, {1, 3}, 4);
  const auto s = sample_empirical(p, 4000, 99);
  CHECK(s.size() == 4000);
  const auto ones = std::count(s.entries.begin(), s.entries.end(), Index{1});
  // Binomial(4000, 3/4) has standard deviation about 27.
  CHECK(std::abs(static_cast<double>(ones) - 3000.0) < 150.0);
  CHECK(sample_empirical(p, 50, 5) == sample_empirical(p, 50, 5));
  CHECK_THROWS_AS(sample_empirical(p, 0, 1), Error);
}

TEST_CASE("convergence study") {
  const auto x = line({0, 1, 2, 4}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 1, 3}, {1, 2, 1}, 4);
  const auto rows = convergence_study(p, {8, 16, 32, 64, 128}, 50, 3);
  REQUIRE(rows.size() == 5);
  CHECK(rows.front().n == 8);
  CHECK(count_inversions(rows) <= 1);
  CHECK(rows.back().median_w1 < rows.front().median_w1);
  const auto again = convergence_study(p, {8, 16, 32, 64, 128}, 50, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].median_w1 == again[i].median_w1);
  CHECK_THROWS_AS(convergence_study(p, {8}, 0, 1), Error);
  CHECK_THROWS_AS(convergence_study(p, {16, 8}, 5, 1), Error);
}

TEST_CASE("inversion counting") {
  const std::vector<ConvergenceRow> rows{{1, 3.0}, {2, 2.0}, {3, 2.5}, {4, 1.0}, {5, 1.05}};
  CHECK(count_inversions(rows) == 2);
  CHECK(count_inversions(rows, 0.1) == 1);
}

}  // TEST_SUITE
