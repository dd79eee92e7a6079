#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kantorovich/graded.hpp"
#include "kantorovich/monad.hpp"
#include "kantorovich/random.hpp"
#include "kantorovich/report.hpp"

namespace kantorovich {

/// Which argument the parameter of the binary operation weights.
///   FirstArgument:  c_l(x, y) = l x + (1 - l) y, so c_1(x, y) = x.
///   SecondArgument: c_l(x, y) = (1 - l) x + l y, so c_0(x, y) = x.
/// The metric compatibility bound l d(x, y) and the associativity
/// parameter nu = l(1 - m) / (1 - l m) both assume FirstArgument.
enum class Convention { FirstArgument, SecondArgument };

/// Closed convex subsets offered as carriers.
enum class Carrier { Whole, UnitCube, StandardSimplex };

std::string to_string(Carrier carrier);

/// A convex subset of a finite-dimensional normed space with its
/// barycenter map. Registered roster points back the finite metric space
/// that measures refer to.
class ConvexAlgebra {
 public:
  ConvexAlgebra(std::size_t dim, Norm norm, std::vector<Point> roster = {},
                Carrier carrier = Carrier::Whole);

  std::size_t dim() const noexcept { return dim_; }
  Norm norm() const noexcept { return norm_; }
  Carrier carrier() const noexcept { return carrier_; }
  const std::vector<Point>& roster() const noexcept { return roster_; }
  /// Metric space on the roster (null when the roster is empty).
  const SpacePtr& space() const noexcept { return space_; }

  double distance(const Point& a, const Point& b) const;
  bool contains(const Point& x, double tau = 1e-12) const;

 private:
  std::size_t dim_;
  Norm norm_;
  Carrier carrier_;
  std::vector<Point> roster_;
  SpacePtr space_;
};

/// sum_i w_i x_i, componentwise.
Point barycenter(const ConvexAlgebra& a, std::span<const Point> points,
                 std::span<const double> weights);
/// Barycenter of a measure on the registered roster.
Point barycenter(const ConvexAlgebra& a, const DiscreteMeasure& p);

/// e_n: barycenter of the empirical measure of a multiset (uniform mean).
Point symmetric_mean(const ConvexAlgebra& a, const MultiSet& m);
/// e^S on tuples.
Point tuple_mean(const ConvexAlgebra& a, const Tuple& t);

Point c_lambda(const ConvexAlgebra& a, double lambda, const Point& x, const Point& y,
               Convention convention = Convention::FirstArgument);

/// nu such that c_l(c_m(x, y), z) = c_{l m}(x, c_nu(y, z)); any value works
/// when l = m = 1, and 1/2 is returned then.
double associativity_parameter(double lambda, double mu);

/// Largest componentwise |a_i - b_i|.
double max_abs_diff(const Point& a, const Point& b);

/// Unitality, idempotency, parametric commutativity and parametric
/// associativity at random parameters and points.
std::vector<LawResult> check_convex_axioms(const ConvexAlgebra& a, Rng& rng, std::size_t trials,
                                           Convention convention = Convention::FirstArgument,
                                           double tol = 1e-10);

/// Binary compatibility d(c_l(x,z), c_l(y,z)) = l d(x,y) (equality on normed
/// carriers) and the n-ary inequality with weights on the simplex.
std::vector<LawResult> check_metric_compat(const ConvexAlgebra& a, Rng& rng, std::size_t trials,
                                           Convention convention = Convention::FirstArgument,
                                           double tol = 1e-10);

struct AlgebraSampler {
  std::size_t max_points = 6;
  std::size_t max_support = 4;
  std::uint64_t max_den = 6;
  std::size_t max_arity = 3;
  bool rational = true;
};

/// Random roster points inside the carrier.
std::vector<Point> random_carrier_points(Rng& rng, std::size_t dim, Carrier carrier, std::size_t n);

/// The unit and multiplication laws of e: PA -> A, both diagrams for the
/// symmetric-power presentation (e_n), both for the FinUnif presentation
/// (e^S), and carrier membership of every output.
std::vector<LawResult> check_algebra_laws(std::size_t dim, Norm norm, Carrier carrier,
                                          const AlgebraSampler& sampler, std::size_t trials,
                                          std::uint64_t seed, double tol = 1e-10);

/// The free algebra PX with e = E.
std::vector<LawResult> check_free_algebra_laws(const LawSampler& sampler, std::size_t trials,
                                               std::uint64_t seed);

/// Affine map x -> M x + b, row-major M.
struct AffineMap {
  std::size_t dim = 0;
  std::vector<double> matrix;
  Point offset;

  Point operator()(const Point& x) const;
};

/// Operator norm of M for the given norm: exact column / row sums for l1 /
/// linf, power iteration on M^T M for l2.
double operator_norm(const AffineMap& g, Norm norm);
/// Random affine map rescaled so that its linear part has operator norm <= 1.
AffineMap random_short_affine(Rng& rng, std::size_t dim, Norm norm);

/// g(e(p)) = e(g_* p), plus shortness of g on random pairs.
std::vector<LawResult> check_affine_morphisms(const ConvexAlgebra& a, Rng& rng,
                                              std::size_t trials, double tol = 1e-10);

/// Shortness of (x_1..x_n) -> sum l_i x_i from the weighted product space
/// k_l(A, ..., A) to A, over random weight vectors and tuples of roster points.
LawResult check_klambda_shortness(const ConvexAlgebra& a, Rng& rng, std::size_t trials,
                                  double tol = 1e-10);

using SimplexWeights = std::vector<double>;

/// Throws Error{NotOnSimplex} unless w is on the simplex within tau_weight.
void require_simplex(std::span<const double> w, double tau_weight = kDefaultTolerances.weight);

/// Operadic composition (nu_1 l_11, ..., nu_1 l_1m1, ..., nu_n l_nmn).
SimplexWeights operad_compose(const SimplexWeights& nu, const std::vector<SimplexWeights>& lambdas,
                              double tau_weight = kDefaultTolerances.weight);
/// Symmetric action: (l_sigma(1), ..., l_sigma(n)).
SimplexWeights operad_permute(const SimplexWeights& lambda, std::span<const std::size_t> sigma);

/// Unit, associativity over random 3-level weight trees, and equivariance.
std::vector<LawResult> check_operad_laws(Rng& rng, std::size_t trials,
                                         double tau_weight = kDefaultTolerances.weight);

}  // namespace kantorovich
