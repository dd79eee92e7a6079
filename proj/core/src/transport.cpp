#include "kantorovich/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>

#include "kantorovich/assignment.hpp"
#include "kantorovich/error.hpp"

namespace kantorovich {

std::string to_string(Solver solver) {
  switch (solver) {
    case Solver::Auto: return "auto";
    case Solver::Assignment: return "assignment";
    case Solver::Flow: return "flow";
    case Solver::Brute: return "brute";
  }
  return "?";
}

std::optional<Solver> parse_solver(std::string_view name) {
  if (name == "auto") return Solver::Auto;
  if (name == "assignment") return Solver::Assignment;
  if (name == "flow") return Solver::Flow;
  if (name == "brute") return Solver::Brute;
  return std::nullopt;
}

double DualPotential::at(Index x) const {
  auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.end() || *it != x) {
    throw Error(ErrorCode::IndexOutOfRange, "potential undefined outside the joint support");
  }
  return values[static_cast<std::size_t>(it - points.begin())];
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Successive shortest paths for a dense transportation problem. Sources
// 0..n-1 carry `supply`, sinks 0..m-1 absorb `demand`; arcs source->sink are
// uncapacitated with the given costs. Dijkstra on reduced costs, ties broken
// toward the lowest node index.
template <class Cap>
std::vector<Cap> transport_ssp(std::vector<Cap> supply, std::vector<Cap> demand,
                               const std::vector<double>& cost) {
  const std::size_t n = supply.size(), m = demand.size(), v = n + m;
  const Cap eps = std::is_floating_point_v<Cap> ? Cap(1e-15) : Cap(0);
  std::vector<Cap> flow(n * m, Cap(0));
  std::vector<double> pi(v, 0.0), dist(v);
  std::vector<std::size_t> prev(v);
  std::vector<char> done(v);

  auto remaining = [&] {
    return std::any_of(supply.begin(), supply.end(), [&](Cap s) { return s > eps; });
  };

  while (remaining()) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (supply[i] > eps) {
        dist[i] = 0.0;
        prev[i] = i;
      }
    }
    for (std::size_t iter = 0; iter < v; ++iter) {
      std::size_t u = v;
      for (std::size_t w = 0; w < v; ++w) {
        if (!done[w] && dist[w] < kInf && (u == v || dist[w] < dist[u])) u = w;
      }
      if (u == v) break;
      done[u] = 1;
      if (u < n) {
        for (std::size_t j = 0; j < m; ++j) {
          const double rc = std::max(0.0, cost[u * m + j] + pi[u] - pi[n + j]);
          if (dist[u] + rc < dist[n + j]) {
            dist[n + j] = dist[u] + rc;
            prev[n + j] = u;
          }
        }
      } else {
        const std::size_t j = u - n;
        for (std::size_t i = 0; i < n; ++i) {
          if (flow[i * m + j] <= eps) continue;
          const double rc = std::max(0.0, -cost[i * m + j] + pi[u] - pi[i]);
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            prev[i] = u;
          }
        }
      }
    }

    std::size_t target = v;
    for (std::size_t j = 0; j < m; ++j) {
      if (demand[j] > eps && dist[n + j] < kInf &&
          (target == v || dist[n + j] < dist[target])) {
        target = n + j;
      }
    }
    if (target == v) break;  // float round-off left a sliver of supply

    const double reach = dist[target];
    for (std::size_t w = 0; w < v; ++w) pi[w] += std::min(dist[w], reach);

    Cap bottleneck = demand[target - n];
    std::size_t w = target;
    while (true) {
      const std::size_t u = prev[w];
      if (u == w) break;
      if (u >= n) bottleneck = std::min(bottleneck, flow[w * m + (u - n)]);
      w = u;
    }
    bottleneck = std::min(bottleneck, supply[w]);

    supply[w] -= bottleneck;
    demand[target - n] -= bottleneck;
    w = target;
    while (true) {
      const std::size_t u = prev[w];
      if (u == w) break;
      if (u < n) {
        flow[u * m + (w - n)] += bottleneck;
      } else {
        flow[w * m + (u - n)] -= bottleneck;
      }
      w = u;
    }
  }
  return flow;
}

std::vector<double> support_costs(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  const auto& d = *p.space();
  std::vector<double> cost(p.size() * q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) cost[i * q.size() + j] = d(p.support()[i], q.support()[j]);
  }
  return cost;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const uint128 l = uint128(a / std::gcd(a, b)) * b;
  return l > cap ? 0 : static_cast<std::uint64_t>(l);
}

// Both measures expanded to uniform multisets of size D.
struct Expansion {
  std::uint64_t den = 0;
  std::vector<std::size_t> a;  // support positions of p, with multiplicity
  std::vector<std::size_t> b;
};

Expansion expand(const DiscreteMeasure& p, const DiscreteMeasure& q, std::uint64_t cap,
                 ErrorCode too_large) {
  if (!p.is_rational() || !q.is_rational()) {
    throw Error(ErrorCode::NotRational, "exact expansion needs rational weights");
  }
  Expansion e;
  e.den = checked_lcm(p.rational()->den, q.rational()->den, cap);
  if (e.den == 0) throw Error(too_large, "common denominator exceeds the solver cap");
  auto fill = [&](const DiscreteMeasure& m, std::vector<std::size_t>& out) {
    const std::uint64_t scale = e.den / m.rational()->den;
    for (std::size_t k = 0; k < m.size(); ++k) out.insert(out.end(), m.rational()->num[k] * scale, k);
  };
  fill(p, e.a);
  fill(q, e.b);
  return e;
}

Coupling coupling_from_pairs(const DiscreteMeasure& p, const DiscreteMeasure& q,
                             const Expansion& e, const std::vector<std::size_t>& partner) {
  Coupling c{p, q, std::vector<double>(p.size() * q.size(), 0.0)};
  std::vector<std::uint64_t> counts(c.r.size(), 0);
  for (std::size_t k = 0; k < e.a.size(); ++k) ++counts[e.a[k] * q.size() + e.b[partner[k]]];
  for (std::size_t k = 0; k < counts.size(); ++k) {
    c.r[k] = static_cast<double>(counts[k]) / static_cast<double>(e.den);
  }
  return c;
}

bool float_lipschitz(const DualPotential& f, const FiniteMetricSpace& d) {
  for (std::size_t a = 0; a < f.points.size(); ++a) {
    for (std::size_t b = 0; b < f.points.size(); ++b) {
      if (a != b && f.values[a] - f.values[b] > d(f.points[a], f.points[b])) return false;
    }
  }
  return true;
}

// The c-transform is 1-Lipschitz in exact arithmetic, but rounding (and
// float metrics that miss the triangle inequality by an ulp) can break
// f(a) - f(b) <= d(a, b) as evaluated in floating point. Lowering values
// shortest-path style repairs that; it terminates because every cycle has
// nonnegative length. The zero at the first point is restored when the
// shift keeps the check intact, and otherwise is off by round-off only.
void enforce_float_lipschitz(DualPotential& f, const FiniteMetricSpace& d) {
  if (float_lipschitz(f, d)) return;
  const std::size_t k = f.points.size();
  for (std::size_t pass = 0; pass <= 4 * k + 8; ++pass) {
    bool changed = false;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double bound = d(f.points[a], f.points[b]);
        if (a == b || f.values[a] - f.values[b] <= bound) continue;
        f.values[a] = f.values[b] + bound;
        while (f.values[a] - f.values[b] > bound) f.values[a] = std::nextafter(f.values[a], -kInf);
        changed = true;
      }
    }
    if (!changed) break;
  }
  DualPotential shifted = f;
  for (auto& v : shifted.values) v -= f.values.front();
  if (float_lipschitz(shifted, d)) f = std::move(shifted);
}

// Sum over the coupling of r_ij (d_ij - (f_i - f_j)). With the marginals of r
// equal to p and q this is cost - (E_p f - E_q f); every term is a product of
// nonnegative floats once f passes the floating-point Lipschitz check.
double duality_slack(const Coupling& c, const DualPotential& f) {
  const auto& d = *c.p.space();
  double total = 0.0;
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    const Index x = c.p.support()[i];
    const double fx = f.at(x);
    for (std::size_t j = 0; j < c.q.size(); ++j) {
      const double r = c.at(i, j);
      if (r == 0.0) continue;
      const Index y = c.q.support()[j];
      total += r * (d(x, y) - (fx - f.at(y)));
    }
  }
  return total;
}

TransportResult finish(Coupling coupling, double cost, std::string solver, double tau_metric) {
  TransportResult result{cost, std::move(coupling), {}, 0.0, std::move(solver)};
  result.dual = dual_from_coupling(result.coupling);
  // Rejects potentials that are not 1-Lipschitz within tau_metric.
  w1_dual_value(result.coupling.p, result.coupling.q, result.dual, tau_metric);
  result.gap = duality_slack(result.coupling, result.dual);
  return result;
}

struct BrutePlan {
  double cost;
  Expansion expansion;
  std::vector<std::size_t> partner;
};

BrutePlan brute_plan(const DiscreteMeasure& p, const DiscreteMeasure& q, std::size_t max_den) {
  require_same_space(p, q);
  auto e = expand(p, q, max_den, ErrorCode::DenominatorTooLarge);
  const auto cost = support_costs(p, q);
  const std::size_t n = e.a.size();
  // Permuting the (sorted) expansion of q enumerates each distinct pairing once.
  std::vector<std::size_t> perm = e.b;
  double best = kInf;
  std::vector<std::size_t> best_perm = perm;
  do {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += cost[e.a[k] * q.size() + perm[k]];
    if (total < best) {
      best = total;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Translate the winning arrangement into positions of e.b.
  std::vector<std::size_t> partner(n);
  std::vector<char> used(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!used[t] && e.b[t] == best_perm[k]) {
        used[t] = 1;
        partner[k] = t;
        break;
      }
    }
  }
  return {best / static_cast<double>(n), std::move(e), std::move(partner)};
}

TransportResult solve_assignment_route(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                       const TransportOptions& options) {
  require_same_space(p, q);
  auto e = expand(p, q, options.max_assignment_size, ErrorCode::DenominatorTooLarge);
  const auto cost = support_costs(p, q);
  const std::size_t n = e.a.size();
  std::vector<double> matrix(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) matrix[i * n + j] = cost[e.a[i] * q.size() + e.b[j]];
  }
  const auto assignment = solve_assignment(matrix, n);
  auto coupling = coupling_from_pairs(p, q, e, assignment.row_to_col);
  return finish(std::move(coupling), assignment.cost / static_cast<double>(n), "assignment",
                options.tol.metric);
}

}  // namespace

double w1_bruteforce(const DiscreteMeasure& p, const DiscreteMeasure& q,
                     std::size_t max_denominator) {
  return brute_plan(p, q, max_denominator).cost;
}

TransportResult w1_flow(const DiscreteMeasure& p, const DiscreteMeasure& q,
                        const TransportOptions& options) {
  require_same_space(p, q);
  const auto cost = support_costs(p, q);
  Coupling coupling{p, q, std::vector<double>(p.size() * q.size(), 0.0)};

  std::uint64_t den = 0;
  if (p.is_rational() && q.is_rational()) {
    den = checked_lcm(p.rational()->den, q.rational()->den, options.max_integer_denominator);
  }
  if (den != 0) {
    std::vector<std::int64_t> supply, demand;
    for (auto v : p.rational()->num) supply.push_back(static_cast<std::int64_t>(v * (den / p.rational()->den)));
    for (auto v : q.rational()->num) demand.push_back(static_cast<std::int64_t>(v * (den / q.rational()->den)));
    const auto flow = transport_ssp(std::move(supply), std::move(demand), cost);
    double total = 0.0;
    for (std::size_t k = 0; k < flow.size(); ++k) {
      coupling.r[k] = static_cast<double>(flow[k]) / static_cast<double>(den);
      total += static_cast<double>(flow[k]) * cost[k];
    }
    return finish(std::move(coupling), total / static_cast<double>(den), "flow-integer",
                  options.tol.metric);
  }

  std::vector<double> supply(p.weights().begin(), p.weights().end());
  std::vector<double> demand(q.weights().begin(), q.weights().end());
  coupling.r = transport_ssp(std::move(supply), std::move(demand), cost);
  const double total = coupling_cost(coupling);
  return finish(std::move(coupling), total, "flow-float", options.tol.metric);
}

TransportResult wasserstein(const DiscreteMeasure& p, const DiscreteMeasure& q,
                            const TransportOptions& options) {
  switch (options.solver) {
    case Solver::Assignment:
      return solve_assignment_route(p, q, options);
    case Solver::Brute: {
      auto plan = brute_plan(p, q, options.max_brute_denominator);
      auto coupling = coupling_from_pairs(p, q, plan.expansion, plan.partner);
      return finish(std::move(coupling), plan.cost, "brute", options.tol.metric);
    }
    case Solver::Flow:
      return w1_flow(p, q, options);
    case Solver::Auto:
      if (p.is_rational() && q.is_rational() && p.rational()->den == q.rational()->den &&
          p.rational()->den <= options.max_assignment_size) {
        return solve_assignment_route(p, q, options);
      }
      return w1_flow(p, q, options);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown solver");
}

double coupling_cost(const Coupling& c) {
  if (c.r.size() != c.p.size() * c.q.size()) throw Error(ErrorCode::ShapeMismatch, "coupling shape");
  require_same_space(c.p, c.q);
  const auto& d = *c.p.space();
  double total = 0.0;
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    for (std::size_t j = 0; j < c.q.size(); ++j) {
      total += c.at(i, j) * d(c.p.support()[i], c.q.support()[j]);
    }
  }
  return total;
}

CouplingReport validate_coupling(const Coupling& c, double tau_weight) {
  if (c.r.size() != c.p.size() * c.q.size()) throw Error(ErrorCode::ShapeMismatch, "coupling shape");
  CouplingReport report;
  report.min_entry = c.r.empty() ? 0.0 : *std::min_element(c.r.begin(), c.r.end());
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < c.q.size(); ++j) row += c.at(i, j);
    report.max_row_error = std::max(report.max_row_error, std::abs(row - c.p.weights()[i]));
  }
  for (std::size_t j = 0; j < c.q.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < c.p.size(); ++i) col += c.at(i, j);
    report.max_col_error = std::max(report.max_col_error, std::abs(col - c.q.weights()[j]));
  }
  report.ok = report.min_entry >= 0.0 && report.max_row_error <= tau_weight &&
              report.max_col_error <= tau_weight;
  return report;
}

Coupling product_coupling(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  require_same_space(p, q);
  Coupling c{p, q, std::vector<double>(p.size() * q.size())};
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) c.r[i * q.size() + j] = p.weights()[i] * q.weights()[j];
  }
  return c;
}

Coupling diagonal_coupling(const DiscreteMeasure& p) {
  Coupling c{p, p, std::vector<double>(p.size() * p.size(), 0.0)};
  for (std::size_t i = 0; i < p.size(); ++i) c.r[i * p.size() + i] = p.weights()[i];
  return c;
}

DualPotential dual_from_coupling(const Coupling& c) {
  const auto& d = *c.p.space();
  const std::size_t n = c.p.size(), m = c.q.size(), v = n + m;
  const auto cost = support_costs(c.p, c.q);

  // Residual graph of the coupling: i -> j always (cost c_ij), j -> i when
  // r_ij > 0 (cost -c_ij). Shortest distances from a virtual root give
  // phi_i = -dist_i, psi_j = dist_j with phi_i + psi_j <= c_ij, tight on
  // the support of r.
  std::vector<double> dist(v, 0.0);
  const double slack = 1e-14 * std::max(1.0, d.diameter());
  for (std::size_t round = 0; round <= v; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double c_ij = cost[i * m + j];
        if (dist[i] + c_ij < dist[n + j] - slack) {
          dist[n + j] = dist[i] + c_ij;
          changed = true;
        }
        if (c.at(i, j) > 0.0 && dist[n + j] - c_ij < dist[i] - slack) {
          dist[i] = dist[n + j] - c_ij;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  DualPotential f;
  f.points.assign(c.p.support().begin(), c.p.support().end());
  f.points.insert(f.points.end(), c.q.support().begin(), c.q.support().end());
  std::sort(f.points.begin(), f.points.end());
  f.points.erase(std::unique(f.points.begin(), f.points.end()), f.points.end());

  // c-transform of psi: f(x) = min_j d(x, y_j) - psi_j is 1-Lipschitz.
  f.values.resize(f.points.size());
  for (std::size_t k = 0; k < f.points.size(); ++k) {
    double best = kInf;
    for (std::size_t j = 0; j < m; ++j) best = std::min(best, d(f.points[k], c.q.support()[j]) - dist[n + j]);
    f.values[k] = best;
  }
  const double shift = f.values.front();
  for (auto& value : f.values) value -= shift;
  enforce_float_lipschitz(f, d);
  return f;
}

double w1_dual_value(const DiscreteMeasure& p, const DiscreteMeasure& q, const DualPotential& f,
                     double tau_metric) {
  require_same_space(p, q);
  const auto& d = *p.space();
  if (f.points.size() != f.values.size()) throw Error(ErrorCode::ShapeMismatch, "potential shape");
  for (std::size_t a = 0; a < f.points.size(); ++a) {
    for (std::size_t b = a + 1; b < f.points.size(); ++b) {
      if (std::abs(f.values[a] - f.values[b]) > d(f.points[a], f.points[b]) + tau_metric) {
        throw Error(ErrorCode::LipschitzViolation, "potential is not 1-Lipschitz on the support");
      }
    }
  }
  double value = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) value += p.weights()[i] * f.at(p.support()[i]);
  for (std::size_t j = 0; j < q.size(); ++j) value -= q.weights()[j] * f.at(q.support()[j]);
  return value;
}

double bistochastic_min(const MultiSet& a, const MultiSet& b) {
  if (a.space != b.space) throw Error(ErrorCode::MismatchedSpaces, "elements of different spaces");
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "length mismatch");
  const auto& d = *a.space;
  const std::size_t n = a.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = d(a.entries[i], b.entries[j]);
  }
  const auto flow = transport_ssp(std::vector<std::int64_t>(n, 1), std::vector<std::int64_t>(n, 1), cost);
  double total = 0.0;
  for (std::size_t k = 0; k < flow.size(); ++k) total += static_cast<double>(flow[k]) * cost[k];
  return total / static_cast<double>(n);
}

}  // namespace kantorovich
