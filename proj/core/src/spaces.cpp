#include "kantorovich/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kantorovich/error.hpp"

namespace kantorovich {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::ShapeMismatch: return "shape_mismatch";
    case ErrorCode::NotOnSimplex: return "not_on_simplex";
    case ErrorCode::MismatchedSpaces: return "mismatched_spaces";
    case ErrorCode::InvalidMetric: return "invalid_metric";
    case ErrorCode::InvalidMeasure: return "invalid_measure";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::SizeOverflow: return "size_overflow";
    case ErrorCode::NotUniformFibers: return "not_uniform_fibers";
    case ErrorCode::NotRational: return "not_rational";
    case ErrorCode::DenominatorTooLarge: return "denominator_too_large";
    case ErrorCode::LipschitzViolation: return "lipschitz_violation";
  }
  return "unknown";
}

FiniteMetricSpace FiniteMetricSpace::unchecked(std::vector<std::vector<double>> table,
                                               bool pseudometric_ok) {
  const std::size_t n = table.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) {
      throw Error(ErrorCode::ShapeMismatch, "distance table is not square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return FiniteMetricSpace(n, std::move(flat), pseudometric_ok);
}

double FiniteMetricSpace::at(Index i, Index j) const {
  if (i >= n_ || j >= n_) {
    throw Error(ErrorCode::IndexOutOfRange, "point index out of range");
  }
  return (*this)(i, j);
}

std::vector<std::vector<double>> FiniteMetricSpace::table() const {
  std::vector<std::vector<double>> out(n_);
  for (Index i = 0; i < n_; ++i) {
    auto r = row(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

double FiniteMetricSpace::diameter(std::span<const Index> points) const {
  double best = 0.0;
  for (Index a : points) {
    for (Index b : points) best = std::max(best, at(a, b));
  }
  return best;
}

double FiniteMetricSpace::diameter() const {
  return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

std::string AxiomViolation::describe() const {
  std::ostringstream os;
  switch (axiom) {
    case MetricAxiom::Square: os << "table is not square"; break;
    case MetricAxiom::Finite:
      os << "d(" << i << "," << j << ") is negative or not finite";
      break;
    case MetricAxiom::Reflexivity: os << "d(" << i << "," << i << ") = " << excess << " != 0"; break;
    case MetricAxiom::Symmetry:
      os << "d(" << i << "," << j << ") != d(" << j << "," << i << "), |diff| = " << excess;
      break;
    case MetricAxiom::Triangle:
      os << "d(" << i << "," << j << ") exceeds d(" << i << "," << k << ") + d(" << k << ","
         << j << ") by " << excess;
      break;
    case MetricAxiom::Separation:
      os << "distinct points " << i << " and " << j << " are at distance 0";
      break;
  }
  return os.str();
}

ValidationReport validate_metric(const FiniteMetricSpace& space, double tau_metric) {
  ValidationReport report;
  const std::size_t n = space.size();

  std::optional<AxiomViolation> finite, reflexive, symmetric, triangle, separation;
  auto keep_worst = [](std::optional<AxiomViolation>& slot, AxiomViolation v) {
    if (!slot || v.excess > slot->excess) slot = v;
  };

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double d = space(i, j);
      if (!std::isfinite(d) || d < 0) {
        keep_worst(finite, {MetricAxiom::Finite, i, j, 0, std::isfinite(d) ? -d : INFINITY});
        continue;
      }
      if (i == j && d > tau_metric) keep_worst(reflexive, {MetricAxiom::Reflexivity, i, i, 0, d});
      if (i < j) {
        const double asym = std::abs(d - space(j, i));
        if (asym > tau_metric) keep_worst(symmetric, {MetricAxiom::Symmetry, i, j, 0, asym});
        if (!space.pseudometric_ok() && d <= tau_metric) {
          keep_worst(separation, {MetricAxiom::Separation, i, j, 0, tau_metric - d});
        }
      }
    }
  }
  if (!finite) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
          const double excess = space(i, j) - space(i, k) - space(k, j);
          if (excess > tau_metric) keep_worst(triangle, {MetricAxiom::Triangle, i, j, k, excess});
        }
      }
    }
  }
  for (auto* slot : {&finite, &reflexive, &symmetric, &triangle, &separation}) {
    if (*slot) report.violations.push_back(**slot);
  }
  return report;
}

SpacePtr make_space(std::vector<std::vector<double>> table, bool pseudometric_ok,
                    double tau_metric) {
  auto space = FiniteMetricSpace::unchecked(std::move(table), pseudometric_ok);
  if (space.size() == 0) throw Error(ErrorCode::InvalidMetric, "space has no points");
  const auto report = validate_metric(space, tau_metric);
  if (!report.ok()) {
    std::string msg = "metric axioms violated:";
    for (const auto& v : report.violations) msg += " " + v.describe() + ";";
    throw Error(ErrorCode::InvalidMetric, msg);
  }
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::LInf: return "linf";
  }
  return "?";
}

std::optional<Norm> parse_norm(std::string_view name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  if (name == "linf") return Norm::LInf;
  return std::nullopt;
}

double norm_of(Norm norm, std::span<const double> v) {
  double acc = 0.0;
  switch (norm) {
    case Norm::L1:
      for (double c : v) acc += std::abs(c);
      return acc;
    case Norm::L2:
      for (double c : v) acc = std::hypot(acc, c);
      return acc;
    case Norm::LInf:
      for (double c : v) acc = std::max(acc, std::abs(c));
      return acc;
  }
  return acc;
}

double norm_distance(Norm norm, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dimension mismatch");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return norm_of(norm, diff);
}

SpacePtr EuclideanSpace::to_metric_space(bool pseudometric_ok) const {
  for (const auto& p : roster) {
    if (p.size() != dim) throw Error(ErrorCode::ShapeMismatch, "roster vector has wrong dimension");
  }
  const std::size_t n = roster.size();
  std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      table[i][j] = table[j][i] = norm_distance(norm, roster[i], roster[j]);
    }
  }
  return make_space(std::move(table), pseudometric_ok);
}

EuclideanSpace line(std::vector<double> coordinates) {
  EuclideanSpace e{1, Norm::L1, {}};
  e.roster.reserve(coordinates.size());
  for (double c : coordinates) e.roster.push_back({c});
  return e;
}

namespace {

void check_cap(std::size_t carrier, std::size_t cap) {
  if (carrier != 0 && carrier > cap / carrier) {
    throw Error(ErrorCode::SizeOverflow, "product distance table exceeds the configured cap");
  }
}

}  // namespace

SpacePtr tensor_product(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        std::size_t cap) {
  const std::size_t nx = x.size(), ny = y.size();
  if (ny != 0 && nx > cap / ny) {
    throw Error(ErrorCode::SizeOverflow, "product carrier exceeds the configured cap");
  }
  const std::size_t n = nx * ny;
  check_cap(n, cap);
  std::vector<std::vector<double>> table(n, std::vector<double>(n));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      table[a][b] = x(a / ny, b / ny) + y(a % ny, b % ny);
    }
  }
  return std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::unchecked(
      std::move(table), x.pseudometric_ok() || y.pseudometric_ok()));
}

Index product_index(std::span<const std::size_t> sizes, std::span<const Index> coords) {
  if (sizes.size() != coords.size()) throw Error(ErrorCode::ShapeMismatch, "coordinate arity");
  Index idx = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (coords[k] >= sizes[k]) throw Error(ErrorCode::IndexOutOfRange, "coordinate out of range");
    idx = idx * sizes[k] + coords[k];
  }
  return idx;
}

std::vector<Index> product_coords(std::span<const std::size_t> sizes, Index index) {
  std::vector<Index> coords(sizes.size());
  std::size_t total = 1;
  for (std::size_t n : sizes) total *= n;
  if (index >= total) throw Error(ErrorCode::IndexOutOfRange, "product index out of range");
  for (std::size_t k = sizes.size(); k-- > 0;) {
    coords[k] = index % sizes[k];
    index /= sizes[k];
  }
  return coords;
}

SpacePtr convex_combination_space(std::span<const double> lambda,
                                  std::span<const SpacePtr> spaces, const Tolerances& tol,
                                  std::size_t cap) {
  if (lambda.size() != spaces.size() || lambda.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "one weight per space required");
  }
  double total = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0)) throw Error(ErrorCode::NotOnSimplex, "negative combination weight");
    total += l;
  }
  if (std::abs(total - 1.0) > tol.weight) {
    throw Error(ErrorCode::NotOnSimplex, "combination weights do not sum to 1");
  }

  std::vector<std::size_t> sizes;
  std::size_t carrier = 1;
  bool pseudo = false;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    sizes.push_back(spaces[k]->size());
    if (sizes.back() != 0 && carrier > cap / sizes.back()) {
      throw Error(ErrorCode::SizeOverflow, "product carrier exceeds the configured cap");
    }
    carrier *= sizes.back();
    pseudo = pseudo || spaces[k]->pseudometric_ok() || lambda[k] == 0.0;
  }
  check_cap(carrier, cap);

  std::vector<std::vector<Index>> coords(carrier);
  for (Index a = 0; a < carrier; ++a) coords[a] = product_coords(sizes, a);

  std::vector<std::vector<double>> table(carrier, std::vector<double>(carrier));
  for (Index a = 0; a < carrier; ++a) {
    for (Index b = a; b < carrier; ++b) {
      double d = 0.0;
      for (std::size_t k = 0; k < spaces.size(); ++k) {
        d += lambda[k] * (*spaces[k])(coords[a][k], coords[b][k]);
      }
      table[a][b] = table[b][a] = d;
    }
  }
  return std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::unchecked(std::move(table), pseudo));
}

namespace {

template <class Pred>
bool all_pairs(std::span<const Index> f, const FiniteMetricSpace& x, const FiniteMetricSpace& y,
               Pred pred) {
  if (f.size() != x.size()) throw Error(ErrorCode::ShapeMismatch, "map must be total on X");
  for (Index v : f) {
    if (v >= y.size()) throw Error(ErrorCode::IndexOutOfRange, "map image out of range");
  }
  for (Index a = 0; a < x.size(); ++a) {
    for (Index b = a + 1; b < x.size(); ++b) {
      if (!pred(y(f[a], f[b]), x(a, b))) return false;
    }
  }
  return true;
}

}  // namespace

bool check_short(std::span<const Index> f, const FiniteMetricSpace& x,
                 const FiniteMetricSpace& y, double tau_metric) {
  return all_pairs(f, x, y, [tau_metric](double dy, double dx) { return dy <= dx + tau_metric; });
}

bool check_isometric(std::span<const Index> f, const FiniteMetricSpace& x,
                     const FiniteMetricSpace& y, double tau_metric) {
  return all_pairs(f, x, y,
                   [tau_metric](double dy, double dx) { return std::abs(dy - dx) <= tau_metric; });
}

MetricQuotient metric_quotient(const FiniteMetricSpace& space, double tau_metric) {
  const std::size_t n = space.size();
  IndexMap classes(n);
  std::vector<Index> reps;
  for (Index i = 0; i < n; ++i) {
    auto it = std::find_if(reps.begin(), reps.end(),
                           [&](Index r) { return space(i, r) <= tau_metric; });
    if (it == reps.end()) {
      classes[i] = reps.size();
      reps.push_back(i);
    } else {
      classes[i] = static_cast<Index>(it - reps.begin());
    }
  }
  std::vector<std::vector<double>> table(reps.size(), std::vector<double>(reps.size()));
  for (Index a = 0; a < reps.size(); ++a) {
    for (Index b = 0; b < reps.size(); ++b) table[a][b] = space(reps[a], reps[b]);
  }
  return {std::make_shared<const FiniteMetricSpace>(
              FiniteMetricSpace::unchecked(std::move(table), false)),
          std::move(classes)};
}

}  // namespace kantorovich
