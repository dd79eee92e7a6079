#include <doctest.h>

#include <cmath>

#include "kantorovich/algebras.hpp"
#include "kantorovich/error.hpp"

using namespace kantorovich;

namespace {

bool all_pass_named(const std::vector<LawResult>& results, const std::string& prefix) {
  bool any = false;
  for (const auto& r : results) {
    if (r.law.rfind(prefix, 0) != 0) continue;
    any = true;
    if (!r.pass) return false;
  }
  return any;
}

}  // namespace

TEST_SUITE("algebras") {

TEST_CASE("barycenters") {
  const ConvexAlgebra a(2, Norm::L2, {{0, 0}, {2, 4}, {4, 0}});
  const auto m = symmetric_mean(a, MultiSet(a.space(), {0, 1}));
  CHECK(m == Point{1, 2});
  const auto p = DiscreteMeasure::from_rational(a.space(), {0, 2}, {3, 1}, 4);
  CHECK(barycenter(a, p) == Point{1, 0});
  CHECK(tuple_mean(a, Tuple(a.space(), {2, 0})) == Point{2, 0});
  CHECK_THROWS_AS(barycenter(a, dirac(line({0}).to_metric_space(), 0)), Error);
}

TEST_CASE("binary operation and conventions") {
  const ConvexAlgebra a(1, Norm::L1);
  CHECK(c_lambda(a, 0.25, {0}, {10}) == Point{7.5});
  CHECK(c_lambda(a, 0.25, {0}, {10}, Convention::SecondArgument) == Point{2.5});
  CHECK(c_lambda(a, 1.0, {3}, {10}) == Point{3});
  CHECK_THROWS_AS(c_lambda(a, 1.5, {0}, {1}), Error);
  CHECK(associativity_parameter(0.5, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(associativity_parameter(1.0, 1.0) == 0.5);
}

TEST_CASE("metric compatibility example") {
  const ConvexAlgebra a(1, Norm::L2);
  const auto u = c_lambda(a, 0.25, {0}, {10});
  const auto v = c_lambda(a, 0.25, {4}, {10});
  CHECK(a.distance(u, v) == doctest::Approx(1.0));
}

TEST_CASE("carriers") {
  const ConvexAlgebra cube(2, Norm::LInf, {}, Carrier::UnitCube);
  CHECK(cube.contains({0.5, 1.0}));
  CHECK_FALSE(cube.contains({0.5, 1.1}));
  const ConvexAlgebra simplex(2, Norm::L1, {}, Carrier::StandardSimplex);
  CHECK(simplex.contains({0.5, 0.5}));
  CHECK_FALSE(simplex.contains({0.6, 0.5}));
  CHECK_THROWS_AS(ConvexAlgebra(2, Norm::L1, {{2, 0}}, Carrier::UnitCube), Error);
  CHECK_THROWS_AS(ConvexAlgebra(0, Norm::L1), Error);
}

TEST_CASE("axioms hold on every norm, dimension and carrier") {
  for (Norm norm : {Norm::L1, Norm::L2, Norm::LInf}) {
    for (std::size_t d = 1; d <= 4; ++d) {
      for (Carrier c : {Carrier::Whole, Carrier::UnitCube, Carrier::StandardSimplex}) {
        Rng rng(split_seed(5, d, static_cast<std::uint64_t>(norm)));
        const ConvexAlgebra a(d, norm, random_carrier_points(rng, d, c, 5), c);
        for (const auto& r : check_convex_axioms(a, rng, 30)) CHECK_MESSAGE(r.pass, r.law);
        for (const auto& r : check_metric_compat(a, rng, 30)) CHECK_MESSAGE(r.pass, r.law);
        for (const auto& r : check_affine_morphisms(a, rng, 20)) CHECK_MESSAGE(r.pass, r.law);
        CHECK(check_klambda_shortness(a, rng, 20).pass);
        for (const auto& r : check_algebra_laws(d, norm, c, {}, 20, 11)) CHECK_MESSAGE(r.pass, r.law);
      }
    }
  }
}

TEST_CASE("the second-argument convention breaks associativity and compatibility") {
  Rng rng(4);
  const ConvexAlgebra a(2, Norm::L2, random_carrier_points(rng, 2, Carrier::Whole, 4));
  const auto axioms = check_convex_axioms(a, rng, 50, Convention::SecondArgument);
  CHECK_FALSE(all_pass_named(axioms, "convex.associativity"));
  const auto compat = check_metric_compat(a, rng, 50, Convention::SecondArgument);
  CHECK_FALSE(all_pass_named(compat, "metric_compat.binary_equality"));
}

TEST_CASE("free algebra") {
  LawSampler s;
  for (const auto& r : check_free_algebra_laws(s, 40, 3)) CHECK_MESSAGE(r.pass, r.law);
}

TEST_CASE("operator norms") {
  const AffineMap g{2, {1, 2, 3, 4}, {0, 0}};
  CHECK(operator_norm(g, Norm::L1) == doctest::Approx(6.0));
  CHECK(operator_norm(g, Norm::LInf) == doctest::Approx(7.0));
  CHECK(operator_norm(g, Norm::L2) == doctest::Approx(std::sqrt(15.0 + std::sqrt(221.0))).epsilon(1e-8));
  Rng rng(9);
  for (Norm n : {Norm::L1, Norm::L2, Norm::LInf}) CHECK(operator_norm(random_short_affine(rng, 3, n), n) <= 1.0 + 1e-9);
}

TEST_CASE("operad") {
  const auto w = operad_compose({0.5, 0.5}, {{1.0}, {0.3, 0.7}});
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.15));
  CHECK(w[2] == doctest::Approx(0.35));
  const std::size_t sigma[] = {2, 0, 1};
  CHECK(operad_permute(w, sigma) == SimplexWeights{w[2], w[0], w[1]});
  CHECK_THROWS_AS(operad_compose({0.5, 0.6}, {{1.0}, {1.0}}), Error);
  CHECK_THROWS_AS(operad_compose({1.0}, {{1.0}, {1.0}}), Error);
  Rng rng(12);
  for (const auto& r : check_operad_laws(rng, 50)) CHECK_MESSAGE(r.pass, r.law);
}

}  // TEST_SUITE
