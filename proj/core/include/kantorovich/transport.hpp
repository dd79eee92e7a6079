#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kantorovich/measures.hpp"
#include "kantorovich/power.hpp"

namespace kantorovich {

enum class Solver { Auto, Assignment, Flow, Brute };

std::string to_string(Solver solver);
std::optional<Solver> parse_solver(std::string_view name);

/// A joint measure with marginals p (rows) and q (columns); r is row-major
/// over the canonical supports.
struct Coupling {
  DiscreteMeasure p;
  DiscreteMeasure q;
  std::vector<double> r;

  double at(std::size_t i, std::size_t j) const { return r[i * q.size() + j]; }
};

/// Kantorovich potential on the joint support, normalized to 0 at the
/// lowest roster index of supp p union supp q.
struct DualPotential {
  std::vector<Index> points;  // ascending roster indices
  std::vector<double> values;

  double at(Index x) const;
};

struct TransportResult {
  double cost = 0.0;
  Coupling coupling;
  DualPotential dual;
  /// sum_ij r_ij (d_ij - f_i + f_j), which is cost - (E_p f - E_q f) and is
  /// nonnegative term by term.
  double gap = 0.0;
  std::string solver;   // which route produced the coupling
};

struct TransportOptions {
  Solver solver = Solver::Auto;
  Tolerances tol = kDefaultTolerances;
  std::uint64_t max_integer_denominator = 1'000'000;
  std::size_t max_assignment_size = 256;
  std::size_t max_brute_denominator = 8;
};

/// Expands both measures into uniform multisets over their common
/// denominator D and minimizes over all D! pairings. Test oracle.
double w1_bruteforce(const DiscreteMeasure& p, const DiscreteMeasure& q,
                     std::size_t max_denominator = 8);

/// Min-cost flow on the bipartite support graph. Exact integer capacities
/// when both measures are rational with a common denominator within
/// `max_integer_denominator`, floating capacities otherwise.
TransportResult w1_flow(const DiscreteMeasure& p, const DiscreteMeasure& q,
                        const TransportOptions& options = {});

/// Solver dispatch per options.solver; Auto picks the assignment route for
/// two rational measures with the same denominator, the flow otherwise.
TransportResult wasserstein(const DiscreteMeasure& p, const DiscreteMeasure& q,
                            const TransportOptions& options = {});

/// E_p[f] - E_q[f]; throws Error{LipschitzViolation} if f is not
/// 1-Lipschitz on the joint support within tau_metric.
double w1_dual_value(const DiscreteMeasure& p, const DiscreteMeasure& q, const DualPotential& f,
                     double tau_metric = kDefaultTolerances.metric);

double coupling_cost(const Coupling& c);

struct CouplingReport {
  double max_row_error = 0.0;
  double max_col_error = 0.0;
  double min_entry = 0.0;
  bool ok = true;
};
CouplingReport validate_coupling(const Coupling& c, double tau_weight = kDefaultTolerances.weight);

Coupling product_coupling(const DiscreteMeasure& p, const DiscreteMeasure& q);
Coupling diagonal_coupling(const DiscreteMeasure& p);

/// Optimal potential for an optimal coupling: shortest paths in the
/// residual graph followed by the c-transform over the joint support.
/// f is 1-Lipschitz as evaluated in floating point and vanishes at the
/// lowest joint-support index (up to round-off on float metrics).
DualPotential dual_from_coupling(const Coupling& c);

/// Relaxed assignment LP over n x n bistochastic matrices, solved as an
/// integer transportation problem on the unmerged multisets.
double bistochastic_min(const MultiSet& a, const MultiSet& b);

}  // namespace kantorovich
