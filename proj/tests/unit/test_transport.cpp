#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/random.hpp"
#include "kantorovich/transport.hpp"

using namespace kantorovich;

namespace {

DiscreteMeasure on(const SpacePtr& x, std::vector<Index> s, std::vector<double> w) {
  return DiscreteMeasure::from_weights(x, std::move(s), std::move(w));
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("small worked examples") {
  const auto x = line({0, 1, 2}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 2}, {1, 1}, 2);
  const auto r = wasserstein(p, dirac(x, 1));
  CHECK(r.cost == doctest::Approx(1.0));
  CHECK(r.gap >= 0.0);
  CHECK(r.gap <= 1e-12);

  const auto y = line({0, 1}).to_metric_space();
  CHECK(wasserstein(on(y, {0, 1}, {0.3, 0.7}), on(y, {0, 1}, {0.7, 0.3})).cost == doctest::Approx(0.4));
  CHECK(wasserstein(p, p).cost == 0.0);
}

TEST_CASE("dual value of a given potential") {
  const auto x = line({0, 1, 2, 3}).to_metric_space();
  const auto p = dirac(x, 0), q = dirac(x, 3);
  DualPotential up{{0, 3}, {0.0, 3.0}};
  DualPotential down{{0, 3}, {0.0, -3.0}};
  CHECK(w1_dual_value(p, q, up) == doctest::Approx(-3.0));
  CHECK(w1_dual_value(p, q, down) == doctest::Approx(3.0));
  DualPotential steep{{0, 3}, {0.0, 4.0}};
  CHECK_THROWS_AS(w1_dual_value(p, q, steep), Error);
}

TEST_CASE("reference couplings") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto x = oracle::random_space(rng, 6);
    const auto p = random_rational_measure(rng, x, 4, 9);
    const Index x0 = rng.below(x->size());
    const auto prod = product_coupling(p, dirac(x, x0));
    CHECK(validate_coupling(prod).ok);
    CHECK(coupling_cost(prod) == doctest::Approx(first_moment(p, x0)));
    CHECK(coupling_cost(diagonal_coupling(p)) == 0.0);
    CHECK(wasserstein(p, dirac(x, x0)).cost == doctest::Approx(first_moment(p, x0)));
  }
}

TEST_CASE("solvers agree") {
  Rng rng(21);
  TransportOptions assignment, flow, brute, flow_float;
  assignment.solver = Solver::Assignment;
  flow.solver = Solver::Flow;
  brute.solver = Solver::Brute;
  flow_float.solver = Solver::Flow;
  flow_float.max_integer_denominator = 0;
  for (int t = 0; t < 80; ++t) {
    const auto x = oracle::random_space(rng, 7);
    const std::uint64_t den = 1 + rng.below(6);
    const auto p = oracle::rational_with_den(rng, x, den);
    const auto q = oracle::rational_with_den(rng, x, den);
    const double expected = oracle::w1_by_permutation(p, q);
    const auto rf = wasserstein(p, q, flow);
    CHECK(rf.cost == doctest::Approx(expected).epsilon(1e-10));
    CHECK(rf.solver == "flow-integer");
    const auto rff = wasserstein(p, q, flow_float);
    CHECK(rff.solver == "flow-float");
    CHECK(std::abs(rff.cost - expected) <= 1e-9);
    CHECK(wasserstein(p, q, assignment).cost == doctest::Approx(expected).epsilon(1e-10));
    CHECK(wasserstein(p, q, brute).cost == doctest::Approx(expected).epsilon(1e-10));
    CHECK(w1_bruteforce(p, q) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("auto dispatch") {
  const auto x = line({0, 1, 2}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 1}, {1, 2}, 3);
  const auto q = DiscreteMeasure::from_rational(x, {1, 2}, {2, 1}, 3);
  CHECK(wasserstein(p, q).solver == "assignment");
  CHECK(wasserstein(p, on(x, {2}, {1.0})).solver.rfind("flow", 0) == 0);
  CHECK(wasserstein(on(x, {0, 2}, {0.1, 0.9}), q).solver == "flow-float");
}

TEST_CASE("brute force refuses large denominators") {
  const auto x = line({0, 1}).to_metric_space();
  const auto p = DiscreteMeasure::from_rational(x, {0, 1}, {1, 10}, 11);
  CHECK_THROWS_AS(w1_bruteforce(p, dirac(x, 0)), Error);
  CHECK_THROWS_AS(w1_bruteforce(on(x, {0, 1}, {0.3, 0.7}), dirac(x, 0)), Error);
}

TEST_CASE("couplings, potentials and the gap") {
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_space(rng, 8);
    const auto p = rng.below(2) ? random_rational_measure(rng, x, 5, 12) : random_float_measure(rng, x, 5);
    const auto q = rng.below(2) ? random_rational_measure(rng, x, 5, 12) : random_float_measure(rng, x, 5);
    const auto r = wasserstein(p, q);
    CHECK(validate_coupling(r.coupling).ok);
    CHECK(coupling_cost(r.coupling) == doctest::Approx(r.cost).epsilon(1e-12));
    CHECK(r.gap >= 0.0);
    CHECK(r.gap <= 1e-8);
    const double dual = w1_dual_value(p, q, r.dual);
    CHECK(std::abs(r.cost - dual - r.gap) <= 1e-9);
    // f is 1-Lipschitz on the joint support.
    for (std::size_t i = 0; i < r.dual.points.size(); ++i) {
      for (std::size_t j = 0; j < r.dual.points.size(); ++j) {
        CHECK(r.dual.values[i] - r.dual.values[j] <= (*x)(r.dual.points[i], r.dual.points[j]));
      }
    }
    CHECK(std::abs(r.dual.values.front()) <= 1e-9);
  }
}

TEST_CASE("mismatched spaces") {
  const auto x = line({0, 1}).to_metric_space();
  const auto y = line({0, 1}).to_metric_space();
  CHECK_THROWS_AS(wasserstein(dirac(x, 0), dirac(y, 0)), Error);
}

TEST_CASE("bistochastic relaxation") {
  const auto r = line({0, 0.5, 1, 3}).to_metric_space();
  CHECK(bistochastic_min(MultiSet(r, {0, 2}), MultiSet(r, {1, 3})) == doctest::Approx(1.25));
}

TEST_CASE("solver names") {
  CHECK(parse_solver("flow") == Solver::Flow);
  CHECK(parse_solver("assignment") == Solver::Assignment);
  CHECK(parse_solver("auto") == Solver::Auto);
  CHECK(parse_solver("brute") == Solver::Brute);
  CHECK_FALSE(parse_solver("simplex").has_value());
  CHECK(to_string(Solver::Flow) == "flow");
}

}  // TEST_SUITE
