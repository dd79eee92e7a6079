#include "kantorovich/algebras.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kantorovich/error.hpp"

namespace kantorovich {

std::string to_string(Carrier carrier) {
  switch (carrier) {
    case Carrier::Whole: return "whole";
    case Carrier::UnitCube: return "unit_cube";
    case Carrier::StandardSimplex: return "simplex";
  }
  return "?";
}

ConvexAlgebra::ConvexAlgebra(std::size_t dim, Norm norm, std::vector<Point> roster,
                             Carrier carrier)
    : dim_(dim), norm_(norm), carrier_(carrier), roster_(std::move(roster)) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "carrier dimension must be positive");
  for (const auto& p : roster_) {
    if (p.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "roster point has wrong dimension");
    if (!contains(p)) throw Error(ErrorCode::InvalidArgument, "roster point outside the carrier");
  }
  if (!roster_.empty()) space_ = EuclideanSpace{dim_, norm_, roster_}.to_metric_space(true);
}

double ConvexAlgebra::distance(const Point& a, const Point& b) const {
  return norm_distance(norm_, a, b);
}

bool ConvexAlgebra::contains(const Point& x, double tau) const {
  if (x.size() != dim_) return false;
  switch (carrier_) {
    case Carrier::Whole:
      return std::all_of(x.begin(), x.end(), [](double c) { return std::isfinite(c); });
    case Carrier::UnitCube:
      return std::all_of(x.begin(), x.end(), [tau](double c) { return c >= -tau && c <= 1 + tau; });
    case Carrier::StandardSimplex: {
      double total = 0.0;
      for (double c : x) {
        if (c < -tau) return false;
        total += c;
      }
      return total <= 1 + tau;
    }
  }
  return false;
}

Point barycenter(const ConvexAlgebra& a, std::span<const Point> points,
                 std::span<const double> weights) {
  if (points.size() != weights.size() || points.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "one weight per point required");
  }
  Point out(a.dim(), 0.0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != a.dim()) throw Error(ErrorCode::ShapeMismatch, "dimension mismatch");
    for (std::size_t c = 0; c < a.dim(); ++c) out[c] += weights[k] * points[k][c];
  }
  return out;
}

Point barycenter(const ConvexAlgebra& a, const DiscreteMeasure& p) {
  if (p.space() != a.space()) {
    throw Error(ErrorCode::MismatchedSpaces, "measure is not on the algebra's roster");
  }
  std::vector<Point> points;
  points.reserve(p.size());
  for (Index x : p.support()) points.push_back(a.roster()[x]);
  return barycenter(a, points, p.weights());
}

Point symmetric_mean(const ConvexAlgebra& a, const MultiSet& m) {
  return barycenter(a, empirical_sym(m));
}

Point tuple_mean(const ConvexAlgebra& a, const Tuple& t) { return barycenter(a, empirical(t)); }

Point c_lambda(const ConvexAlgebra& a, double lambda, const Point& x, const Point& y,
               Convention convention) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda outside [0,1]");
  const double wx = convention == Convention::FirstArgument ? lambda : 1.0 - lambda;
  const std::vector<Point> pts{x, y};
  const double w[] = {wx, 1.0 - wx};
  return barycenter(a, pts, w);
}

double associativity_parameter(double lambda, double mu) {
  if (lambda == 1.0 && mu == 1.0) return 0.5;
  return lambda * (1.0 - mu) / (1.0 - lambda * mu);
}

double max_abs_diff(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dimension mismatch");
  double worst = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) worst = std::max(worst, std::abs(a[c] - b[c]));
  return worst;
}

namespace {

double random_parameter(Rng& rng) {
  // Endpoints get their own share of the draws.
  const auto bucket = rng.below(10);
  if (bucket == 0) return 0.0;
  if (bucket == 1) return 1.0;
  return rng.uniform01();
}

std::vector<double> random_simplex_weights(Rng& rng, std::size_t k) {
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) total += (v = rng.below(8) == 0 ? 0.0 : rng.uniform01());
  if (total == 0.0) {
    w[rng.below(k)] = 1.0;
    return w;
  }
  for (auto& v : w) v /= total;
  return w;
}

Point random_point(Rng& rng, std::size_t dim, Carrier carrier) {
  return random_carrier_points(rng, dim, carrier, 1).front();
}

}  // namespace

std::vector<Point> random_carrier_points(Rng& rng, std::size_t dim, Carrier carrier, std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Point p(dim);
    switch (carrier) {
      case Carrier::Whole:
        for (auto& c : p) c = rng.uniform(-5.0, 5.0);
        break;
      case Carrier::UnitCube:
        for (auto& c : p) c = rng.uniform01();
        break;
      case Carrier::StandardSimplex: {
        // Exponential spacings give a uniform point of the (dim+1)-simplex.
        std::vector<double> e(dim + 1);
        double total = 0.0;
        for (auto& v : e) total += (v = -std::log1p(-rng.uniform01()));
        for (std::size_t c = 0; c < dim; ++c) p[c] = e[c] / total;
        break;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LawResult> check_convex_axioms(const ConvexAlgebra& a, Rng& rng, std::size_t trials,
                                           Convention convention, double tol) {
  LawResult unit{"convex.unitality", 0, 0.0, tol, true};
  LawResult idem{"convex.idempotency", 0, 0.0, tol, true};
  LawResult comm{"convex.commutativity", 0, 0.0, tol, true};
  LawResult assoc{"convex.associativity", 0, 0.0, tol, true};
  const double unit_parameter = convention == Convention::FirstArgument ? 1.0 : 0.0;

  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = random_point(rng, a.dim(), a.carrier());
    const Point y = random_point(rng, a.dim(), a.carrier());
    const Point z = random_point(rng, a.dim(), a.carrier());
    const double lambda = random_parameter(rng);
    const double mu = random_parameter(rng);

    record(unit, max_abs_diff(c_lambda(a, unit_parameter, x, y, convention), x));
    record(idem, max_abs_diff(c_lambda(a, lambda, x, x, convention), x));
    record(comm, max_abs_diff(c_lambda(a, lambda, x, y, convention),
                              c_lambda(a, 1.0 - lambda, y, x, convention)));
    const double nu = associativity_parameter(lambda, mu);
    record(assoc, max_abs_diff(c_lambda(a, lambda, c_lambda(a, mu, x, y, convention), z, convention),
                               c_lambda(a, lambda * mu, x, c_lambda(a, nu, y, z, convention),
                                        convention)));
  }
  return {unit, idem, comm, assoc};
}

std::vector<LawResult> check_metric_compat(const ConvexAlgebra& a, Rng& rng, std::size_t trials,
                                           Convention convention, double tol) {
  LawResult binary{"metric_compat.binary_equality", 0, 0.0, tol, true};
  LawResult general{"metric_compat.general_inequality", 0, 0.0, tol, true};
  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = random_point(rng, a.dim(), a.carrier());
    const Point y = random_point(rng, a.dim(), a.carrier());
    const Point z = random_point(rng, a.dim(), a.carrier());
    const double lambda = random_parameter(rng);
    const double lhs = a.distance(c_lambda(a, lambda, x, z, convention),
                                  c_lambda(a, lambda, y, z, convention));
    record(binary, std::abs(lhs - lambda * a.distance(x, y)));

    const std::size_t k = 1 + rng.below(5);
    const auto w = random_simplex_weights(rng, k);
    const auto xs = random_carrier_points(rng, a.dim(), a.carrier(), k);
    const auto ys = random_carrier_points(rng, a.dim(), a.carrier(), k);
    double rhs = 0.0;
    for (std::size_t i = 0; i < k; ++i) rhs += w[i] * a.distance(xs[i], ys[i]);
    const double glhs = a.distance(barycenter(a, xs, w), barycenter(a, ys, w));
    record(general, std::max(0.0, glhs - rhs));
  }
  return {binary, general};
}

std::vector<LawResult> check_algebra_laws(std::size_t dim, Norm norm, Carrier carrier,
                                          const AlgebraSampler& s, std::size_t trials,
                                          std::uint64_t seed, double tol) {
  LawResult unit{"algebra.unit", 0, 0.0, tol, true};
  LawResult mult{"algebra.multiplication", 0, 0.0, tol, true};
  LawResult sym_triangle{"algebra.symmetric_power.triangle", 0, 0.0, tol, true};
  LawResult sym_square{"algebra.symmetric_power.square", 0, 0.0, tol, true};
  LawResult pow_triangle{"algebra.power.triangle", 0, 0.0, tol, true};
  LawResult pow_square{"algebra.power.square", 0, 0.0, tol, true};
  LawResult member{"algebra.carrier_membership", 0, 0.0, 0.0, true};

  LawSampler nested_sampler;
  nested_sampler.max_support = s.max_support;
  nested_sampler.max_den = s.max_den;
  nested_sampler.max_outer = s.max_arity;
  nested_sampler.rational = s.rational;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, 0x616c67, trial));
    const std::size_t n_points = 1 + rng.below(s.max_points);
    const ConvexAlgebra a(dim, norm, random_carrier_points(rng, dim, carrier, n_points), carrier);
    const auto& space = a.space();
    auto check_member = [&](const Point& x) { record(member, a.contains(x, 1e-12) ? 0.0 : 1.0); };

    // e . delta = id
    double worst = 0.0;
    for (Index x = 0; x < n_points; ++x) {
      worst = std::max(worst, max_abs_diff(barycenter(a, dirac(space, x)), a.roster()[x]));
    }
    record(unit, worst);

    // e . E = e . Pe
    const auto mu = random_nested(rng, space, nested_sampler);
    std::vector<Point> inner_points;
    for (const auto& p : mu.inner()) inner_points.push_back(barycenter(a, p));
    const Point via_e = barycenter(a, expectation(mu));
    const Point via_pe = barycenter(a, inner_points, mu.outer().values());
    record(mult, max_abs_diff(via_e, via_pe));
    check_member(via_e);
    check_member(via_pe);

    // e_m = e_{mn} . repeat
    const std::size_t m = 1 + rng.below(s.max_arity);
    const std::size_t n = 1 + rng.below(s.max_arity);
    const MultiSet ms(space, random_indices(rng, n_points, m));
    record(sym_triangle, max_abs_diff(symmetric_mean(a, ms), symmetric_mean(a, repeat_embedding(ms, n))));

    // e_n . (e_m)_n = e_{mn} . E_{m,n}
    std::vector<std::vector<Index>> rows(n);
    for (auto& r : rows) r = random_indices(rng, n_points, m);
    const NestedMultiSet nm(space, rows);
    std::vector<Point> row_means;
    for (std::size_t k = 0; k < nm.outer(); ++k) row_means.push_back(symmetric_mean(a, nm.row(k)));
    const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    const Point square_lhs = barycenter(a, row_means, uniform);
    const Point square_rhs = symmetric_mean(a, flatten_multiset(nm));
    record(sym_square, max_abs_diff(square_lhs, square_rhs));
    check_member(square_lhs);

    // e^S . A^phi = e^T for phi: S -> T with uniform fibers
    const std::size_t t_size = 1 + rng.below(s.max_arity);
    const std::size_t fiber = 1 + rng.below(s.max_arity);
    std::vector<std::size_t> assignment;
    for (std::size_t t = 0; t < t_size; ++t) assignment.insert(assignment.end(), fiber, t);
    for (std::size_t i = assignment.size(); i > 1; --i) std::swap(assignment[i - 1], assignment[rng.below(i)]);
    const FinUnifMap phi(assignment, t_size);
    const Tuple tup(space, random_indices(rng, n_points, t_size));
    record(pow_triangle, max_abs_diff(tuple_mean(a, precompose(phi, tup)), tuple_mean(a, tup)));

    // e^T . (e^S)^T = e^{S x T} . E^{S,T}
    const NestedTuple nt(space, rows);
    std::vector<Point> tuple_means;
    for (std::size_t k = 0; k < nt.outer; ++k) tuple_means.push_back(tuple_mean(a, nt.row(k)));
    record(pow_square, max_abs_diff(barycenter(a, tuple_means, uniform),
                                    tuple_mean(a, curry_flatten(nt))));
  }
  return {unit, mult, sym_triangle, sym_square, pow_triangle, pow_square, member};
}

std::vector<LawResult> check_free_algebra_laws(const LawSampler& sampler, std::size_t trials,
                                               std::uint64_t seed) {
  const double tol = sampler.rational ? 0.0 : 1e-12;
  LawResult unit{"free_algebra.unit", 0, 0.0, tol, true};
  LawResult mult{"free_algebra.multiplication", 0, 0.0, tol, true};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, 0x66726565, trial));
    const std::size_t points = 1 + rng.below(sampler.max_points);
    const auto space = random_line(rng, points, std::max<std::int64_t>(20, 2 * static_cast<std::int64_t>(points))).to_metric_space();
    const auto mu = random_nested(rng, space, sampler);
    // e = E on PX: e(delta_{PX}(p)) = p for every inner p.
    double worst = 0.0;
    for (const auto& p : mu.inner()) worst = std::max(worst, weight_discrepancy(expectation(unit_P(p)), p));
    record(unit, worst);
    const auto t = random_triple(rng, space, sampler);
    record(mult, weight_discrepancy(expectation(map_expectation(t)),
                                    expectation(expectation_outer(t))));
  }
  return {unit, mult};
}

Point AffineMap::operator()(const Point& x) const {
  if (x.size() != dim) throw Error(ErrorCode::ShapeMismatch, "dimension mismatch");
  Point out = offset;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out[r] += matrix[r * dim + c] * x[c];
  }
  return out;
}

double operator_norm(const AffineMap& g, Norm norm) {
  const std::size_t d = g.dim;
  double best = 0.0;
  switch (norm) {
    case Norm::L1:
      for (std::size_t c = 0; c < d; ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < d; ++r) col += std::abs(g.matrix[r * d + c]);
        best = std::max(best, col);
      }
      return best;
    case Norm::LInf:
      for (std::size_t r = 0; r < d; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < d; ++c) row += std::abs(g.matrix[r * d + c]);
        best = std::max(best, row);
      }
      return best;
    case Norm::L2: {
      Point v(d, 1.0 / std::sqrt(static_cast<double>(d)));
      double sigma2 = 0.0;
      for (int iter = 0; iter < 500; ++iter) {
        Point mv(d, 0.0), w(d, 0.0);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) mv[r] += g.matrix[r * d + c] * v[c];
        }
        for (std::size_t c = 0; c < d; ++c) {
          for (std::size_t r = 0; r < d; ++r) w[c] += g.matrix[r * d + c] * mv[r];
        }
        const double len = norm_of(Norm::L2, w);
        if (len == 0.0) break;
        sigma2 = len;
        for (std::size_t c = 0; c < d; ++c) v[c] = w[c] / len;
      }
      return std::sqrt(sigma2);
    }
  }
  return best;
}

AffineMap random_short_affine(Rng& rng, std::size_t dim, Norm norm) {
  AffineMap g{dim, std::vector<double>(dim * dim), Point(dim)};
  for (auto& v : g.matrix) v = rng.uniform(-1.0, 1.0);
  for (auto& v : g.offset) v = rng.uniform(-2.0, 2.0);
  const double op = operator_norm(g, norm);
  // Power iteration approaches the l2 norm from below; leave some headroom.
  const double scale = op > 0.0 ? 1.0 / (op * (norm == Norm::L2 ? 1.0 + 1e-6 : 1.0)) : 1.0;
  const double shrink = std::min(1.0, scale);
  for (auto& v : g.matrix) v *= shrink;
  return g;
}

std::vector<LawResult> check_affine_morphisms(const ConvexAlgebra& a, Rng& rng,
                                              std::size_t trials, double tol) {
  LawResult commute{"affine.barycenter_commutes", 0, 0.0, tol, true};
  LawResult shortness{"affine.short", 0, 0.0, tol, true};
  if (a.roster().empty()) throw Error(ErrorCode::InvalidArgument, "algebra needs roster points");
  for (std::size_t t = 0; t < trials; ++t) {
    const auto g = random_short_affine(rng, a.dim(), a.norm());
    const auto p = random_rational_measure(rng, a.space(), 4, 8);
    std::vector<Point> images;
    for (Index x : p.support()) images.push_back(g(a.roster()[x]));
    record(commute, max_abs_diff(g(barycenter(a, p)), barycenter(a, images, p.weights())));

    const Point x = random_point(rng, a.dim(), a.carrier());
    const Point y = random_point(rng, a.dim(), a.carrier());
    record(shortness, std::max(0.0, a.distance(g(x), g(y)) - a.distance(x, y)));
  }
  return {commute, shortness};
}

LawResult check_klambda_shortness(const ConvexAlgebra& a, Rng& rng, std::size_t trials,
                                  double tol) {
  LawResult result{"metric_compat.klambda_short", 0, 0.0, tol, true};
  if (a.roster().empty()) throw Error(ErrorCode::InvalidArgument, "algebra needs roster points");
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = 1 + rng.below(3);
    const auto lambda = random_simplex_weights(rng, k);
    const std::vector<SpacePtr> copies(k, a.space());
    const auto product = convex_combination_space(lambda, copies);
    const std::vector<std::size_t> sizes(k, a.roster().size());
    const Index u = rng.below(product->size());
    const Index v = rng.below(product->size());
    const auto cu = product_coords(sizes, u);
    const auto cv = product_coords(sizes, v);
    std::vector<Point> xs, ys;
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(a.roster()[cu[i]]);
      ys.push_back(a.roster()[cv[i]]);
    }
    const double image = a.distance(barycenter(a, xs, lambda), barycenter(a, ys, lambda));
    record(result, std::max(0.0, image - (*product)(u, v)));
  }
  return result;
}

void require_simplex(std::span<const double> w, double tau_weight) {
  if (w.empty()) throw Error(ErrorCode::NotOnSimplex, "empty weight vector");
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw Error(ErrorCode::NotOnSimplex, "negative weight");
    total += v;
  }
  if (std::abs(total - 1.0) > tau_weight) throw Error(ErrorCode::NotOnSimplex, "weights do not sum to 1");
}

SimplexWeights operad_compose(const SimplexWeights& nu, const std::vector<SimplexWeights>& lambdas,
                              double tau_weight) {
  require_simplex(nu, tau_weight);
  if (nu.size() != lambdas.size()) throw Error(ErrorCode::ShapeMismatch, "arity mismatch");
  SimplexWeights out;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    require_simplex(lambdas[i], tau_weight);
    for (double l : lambdas[i]) out.push_back(nu[i] * l);
  }
  return out;
}

SimplexWeights operad_permute(const SimplexWeights& lambda, std::span<const std::size_t> sigma) {
  if (sigma.size() != lambda.size()) throw Error(ErrorCode::ShapeMismatch, "arity mismatch");
  SimplexWeights out(lambda.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) out[k] = lambda.at(sigma[k]);
  return out;
}

std::vector<LawResult> check_operad_laws(Rng& rng, std::size_t trials, double tau_weight) {
  LawResult unit{"operad.unit", 0, 0.0, tau_weight, true};
  LawResult assoc{"operad.associativity", 0, 0.0, tau_weight, true};
  LawResult equiv{"operad.equivariance", 0, 0.0, tau_weight, true};
  auto diff = [](const SimplexWeights& a, const SimplexWeights& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
  };
  auto arity = [&rng] { return 1 + static_cast<std::size_t>(rng.below(3)); };

  for (std::size_t t = 0; t < trials; ++t) {
    const auto nu = random_simplex_weights(rng, arity());
    std::vector<SimplexWeights> lambdas;
    std::vector<std::vector<SimplexWeights>> mus;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      lambdas.push_back(random_simplex_weights(rng, arity()));
      std::vector<SimplexWeights> row;
      for (std::size_t j = 0; j < lambdas.back().size(); ++j) row.push_back(random_simplex_weights(rng, arity()));
      mus.push_back(std::move(row));
    }

    const SimplexWeights one{1.0};
    std::vector<SimplexWeights> ones(nu.size(), one);
    record(unit, std::max(diff(operad_compose(one, {nu}), nu), diff(operad_compose(nu, ones), nu)));

    std::vector<SimplexWeights> all_mus;
    std::vector<SimplexWeights> inner_composites;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      all_mus.insert(all_mus.end(), mus[i].begin(), mus[i].end());
      inner_composites.push_back(operad_compose(lambdas[i], mus[i]));
    }
    record(assoc, diff(operad_compose(operad_compose(nu, lambdas), all_mus),
                       operad_compose(nu, inner_composites)));

    std::vector<std::size_t> sigma(nu.size());
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    for (std::size_t i = sigma.size(); i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
    std::vector<SimplexWeights> permuted_lambdas;
    for (auto s : sigma) permuted_lambdas.push_back(lambdas[s]);
    const auto composed = operad_compose(nu, lambdas);
    std::vector<std::size_t> offsets{0};
    for (const auto& l : lambdas) offsets.push_back(offsets.back() + l.size());
    SimplexWeights block_permuted;
    for (auto s : sigma) {
      block_permuted.insert(block_permuted.end(), composed.begin() + static_cast<std::ptrdiff_t>(offsets[s]),
                            composed.begin() + static_cast<std::ptrdiff_t>(offsets[s + 1]));
    }
    record(equiv, diff(operad_compose(operad_permute(nu, sigma), permuted_lambdas), block_permuted));
  }
  return {unit, assoc, equiv};
}

}  // namespace kantorovich
