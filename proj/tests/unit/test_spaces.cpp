#include <doctest.h>

#include "kantorovich/error.hpp"
#include "kantorovich/power.hpp"
#include "kantorovich/random.hpp"
#include "kantorovich/spaces.hpp"

using namespace kantorovich;

namespace {

bool has_axiom(const ValidationReport& r, MetricAxiom a) {
  for (const auto& v : r.violations) {
    if (v.axiom == a) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("spaces") {

TEST_CASE("two-point space validates") {
  const auto s = FiniteMetricSpace::unchecked({{0, 1}, {1, 0}});
  CHECK(validate_metric(s).ok());
}

TEST_CASE("triangle violation names the offending triple") {
  const auto s = FiniteMetricSpace::unchecked({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
  const auto report = validate_metric(s);
  REQUIRE(has_axiom(report, MetricAxiom::Triangle));
  for (const auto& v : report.violations) {
    if (v.axiom != MetricAxiom::Triangle) continue;
    CHECK(v.excess == doctest::Approx(3.0));
    CHECK(v.k == 2);
  }
  CHECK_THROWS_AS(make_space({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}}), Error);
}

TEST_CASE("nonzero diagonal is a reflexivity violation") {
  const auto s = FiniteMetricSpace::unchecked({{0.1, 1}, {1, 0}});
  CHECK(has_axiom(validate_metric(s), MetricAxiom::Reflexivity));
}

TEST_CASE("asymmetry, separation and non-finite entries are reported") {
  CHECK(has_axiom(validate_metric(FiniteMetricSpace::unchecked({{0, 1}, {2, 0}})), MetricAxiom::Symmetry));
  CHECK(has_axiom(validate_metric(FiniteMetricSpace::unchecked({{0, 0}, {0, 0}})), MetricAxiom::Separation));
  CHECK(validate_metric(FiniteMetricSpace::unchecked({{0, 0}, {0, 0}}, true)).ok());
  CHECK(has_axiom(validate_metric(FiniteMetricSpace::unchecked({{0, -1}, {-1, 0}})), MetricAxiom::Finite));
  CHECK_THROWS_AS(FiniteMetricSpace::unchecked({{0, 1}}), Error);
}

TEST_CASE("euclidean rosters give valid tables under every norm") {
  Rng rng(11);
  for (Norm n : {Norm::L1, Norm::L2, Norm::LInf}) {
    for (int t = 0; t < 20; ++t) {
      const auto e = random_euclidean(rng, 1 + rng.below(8), 1 + rng.below(4), n);
      CHECK(validate_metric(*e.to_metric_space()).ok());
    }
  }
  const EuclideanSpace plane{2, Norm::L2, {{0, 0}, {3, 4}}};
  CHECK((*plane.to_metric_space())(0, 1) == doctest::Approx(5.0));
  const EuclideanSpace taxi{2, Norm::L1, {{0, 0}, {3, 4}}};
  CHECK((*taxi.to_metric_space())(0, 1) == 7.0);
  const EuclideanSpace sup{2, Norm::LInf, {{0, 0}, {3, 4}}};
  CHECK((*sup.to_metric_space())(0, 1) == 4.0);
  CHECK(parse_norm("linf") == Norm::LInf);
  CHECK_FALSE(parse_norm("l3").has_value());
}

TEST_CASE("tensor product adds distances") {
  const auto x = make_space({{0, 1}, {1, 0}});
  const auto y = make_space({{0, 2}, {2, 0}});
  const auto xy = tensor_product(*x, *y);
  CHECK((*xy)(0 * 2 + 0, 1 * 2 + 1) == 3.0);
  CHECK((*xy)(0 * 2 + 0, 1 * 2 + 0) == 1.0);

  const auto point = make_space({{0}});
  const auto copy = tensor_product(*x, *point);
  CHECK(copy->table() == x->table());

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_line(rng, 1 + rng.below(5)).to_metric_space();
    const auto b = random_euclidean(rng, 1 + rng.below(5), 2, Norm::L2).to_metric_space();
    const auto ab = tensor_product(*a, *b);
    for (Index i = 0; i < ab->size(); ++i) {
      for (Index j = 0; j < ab->size(); ++j) {
        const auto xi = i / b->size(), yi = i % b->size(), xj = j / b->size(), yj = j % b->size();
        CHECK((*ab)(i, j) == (*a)(xi, xj) + (*b)(yi, yj));
      }
    }
  }
  CHECK_THROWS_AS(tensor_product(*x, *y, 15), Error);
}

TEST_CASE("convex combination of spaces") {
  const auto x = make_space({{0, 2}, {2, 0}});
  const double half[] = {0.5, 0.5};
  const SpacePtr two[] = {x, x};
  const auto mixed = convex_combination_space(half, two);
  CHECK((*mixed)(0, 3) == 2.0);
  CHECK_FALSE(mixed->pseudometric_ok());

  const double one[] = {1.0};
  const SpacePtr single[] = {x};
  CHECK(convex_combination_space(one, single)->table() == x->table());

  const double degenerate[] = {0.0, 1.0};
  const auto pseudo = convex_combination_space(degenerate, two);
  CHECK(pseudo->pseudometric_ok());
  CHECK((*pseudo)(0, 2) == 0.0);  // (0,0) vs (1,0): differ only in the first coordinate
  CHECK((*pseudo)(1, 3) == 0.0);

  const double off[] = {0.5, 0.6};
  CHECK_THROWS_AS(convex_combination_space(off, two), Error);
  const double negative[] = {1.5, -0.5};
  CHECK_THROWS_AS(convex_combination_space(negative, two), Error);
}

TEST_CASE("uniform convex combination matches the tuple metric") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_line(rng, 1 + rng.below(4)).to_metric_space();
    const std::size_t n = 1 + rng.below(3);
    const std::vector<double> lambda(n, 1.0 / static_cast<double>(n));
    const std::vector<SpacePtr> copies(n, x);
    const auto k = convex_combination_space(lambda, copies);
    const std::vector<std::size_t> sizes(n, x->size());
    for (Index i = 0; i < k->size(); ++i) {
      for (Index j = 0; j < k->size(); ++j) {
        const Tuple a(x, product_coords(sizes, i)), b(x, product_coords(sizes, j));
        CHECK((*k)(i, j) == doctest::Approx(tuple_distance(a, b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("product index round trip") {
  const std::vector<std::size_t> sizes{3, 4, 2};
  for (Index i = 0; i < 24; ++i) CHECK(product_index(sizes, product_coords(sizes, i)) == i);
  CHECK_THROWS_AS(product_coords(sizes, 24), Error);
}

TEST_CASE("short and isometric maps") {
  const auto x = line({0, 4}).to_metric_space();
  const auto y = line({0, 2}).to_metric_space();
  const IndexMap id{0, 1};
  CHECK(check_short(id, *x, *x));
  CHECK(check_isometric(id, *x, *x));
  CHECK(check_short(id, *x, *y));       // halving
  CHECK_FALSE(check_isometric(id, *x, *y));
  const auto unit = line({0, 1}).to_metric_space();
  CHECK_FALSE(check_short(id, *unit, *y));  // doubling
  const IndexMap bad{0, 5};
  CHECK_THROWS_AS(check_short(bad, *x, *y), Error);
}

TEST_CASE("metric quotient collapses zero-distance classes") {
  const auto s = make_space({{0, 0, 3}, {0, 0, 3}, {3, 3, 0}}, true);
  const auto q = metric_quotient(*s);
  CHECK(q.space->size() == 2);
  CHECK(q.classes[0] == q.classes[1]);
  CHECK(q.classes[0] != q.classes[2]);
  CHECK(validate_metric(*q.space).ok());
}

}  // TEST_SUITE
