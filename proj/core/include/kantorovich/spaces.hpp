#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kantorovich/tolerances.hpp"

namespace kantorovich {

using Index = std::size_t;
using Point = std::vector<double>;

/// A finite (pseudo)metric space given by an explicit symmetric distance
/// table over the roster {0, ..., n-1}. Immutable once built.
class FiniteMetricSpace {
 public:
  /// Builds a space without checking the metric axioms; the table must be
  /// square. Use make_space() for the validated path.
  static FiniteMetricSpace unchecked(std::vector<std::vector<double>> table,
                                     bool pseudometric_ok = false);

  std::size_t size() const noexcept { return n_; }
  bool pseudometric_ok() const noexcept { return pseudometric_ok_; }

  double operator()(Index i, Index j) const noexcept { return dist_[i * n_ + j]; }
  double at(Index i, Index j) const;

  std::vector<std::vector<double>> table() const;
  std::span<const double> row(Index i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }

  /// Largest distance among the given points (0 for fewer than two).
  double diameter(std::span<const Index> points) const;
  double diameter() const;

 private:
  FiniteMetricSpace(std::size_t n, std::vector<double> dist, bool pseudo)
      : n_(n), dist_(std::move(dist)), pseudometric_ok_(pseudo) {}

  std::size_t n_ = 0;
  std::vector<double> dist_;
  bool pseudometric_ok_ = false;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

enum class MetricAxiom { Square, Finite, Reflexivity, Symmetry, Triangle, Separation };

struct AxiomViolation {
  MetricAxiom axiom;
  Index i = 0;
  Index j = 0;
  Index k = 0;        // third point of a triangle violation
  double excess = 0;  // amount by which the axiom fails
  std::string describe() const;
};

/// One entry per violated axiom, carrying its worst offender.
struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_metric(const FiniteMetricSpace& space,
                                 double tau_metric = kDefaultTolerances.metric);

/// Validates and wraps a table; throws Error{InvalidMetric} listing the
/// violations.
SpacePtr make_space(std::vector<std::vector<double>> table,
                    bool pseudometric_ok = false,
                    double tau_metric = kDefaultTolerances.metric);

enum class Norm { L1, L2, LInf };

std::string to_string(Norm norm);
std::optional<Norm> parse_norm(std::string_view name);

double norm_of(Norm norm, std::span<const double> v);
double norm_distance(Norm norm, std::span<const double> a, std::span<const double> b);

/// A roster of points in R^dim under one of the l1, l2, linf norms.
struct EuclideanSpace {
  std::size_t dim = 0;
  Norm norm = Norm::L2;
  std::vector<Point> roster;

  /// Distance table of the roster. Distinct points must be distinct
  /// vectors unless pseudometric_ok is set.
  SpacePtr to_metric_space(bool pseudometric_ok = false) const;
};

/// Points of the real line as a 1-dimensional Euclidean roster.
EuclideanSpace line(std::vector<double> coordinates);

/// l1 tensor product. Carrier element (x, y) has index x * |Y| + y.
SpacePtr tensor_product(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        std::size_t cap = kDefaultProductCap);

/// Weighted combination of pseudometrics over the cartesian product of the
/// carriers. Tuple (x_1, ..., x_n) is indexed in mixed radix, last
/// coordinate fastest; see product_index().
SpacePtr convex_combination_space(std::span<const double> lambda,
                                  std::span<const SpacePtr> spaces,
                                  const Tolerances& tol = kDefaultTolerances,
                                  std::size_t cap = kDefaultProductCap);

Index product_index(std::span<const std::size_t> sizes, std::span<const Index> coords);
std::vector<Index> product_coords(std::span<const std::size_t> sizes, Index index);

using IndexMap = std::vector<Index>;

bool check_short(std::span<const Index> f, const FiniteMetricSpace& x,
                 const FiniteMetricSpace& y, double tau_metric = kDefaultTolerances.metric);
bool check_isometric(std::span<const Index> f, const FiniteMetricSpace& x,
                     const FiniteMetricSpace& y,
                     double tau_metric = kDefaultTolerances.metric);

/// Metric quotient of a pseudometric space: points at distance <= tau are
/// identified. `classes[i]` is the quotient index of point i; each class is
/// represented by its lowest-index member.
struct MetricQuotient {
  SpacePtr space;
  IndexMap classes;
};
MetricQuotient metric_quotient(const FiniteMetricSpace& space,
                               double tau_metric = kDefaultTolerances.metric);

}  // namespace kantorovich
