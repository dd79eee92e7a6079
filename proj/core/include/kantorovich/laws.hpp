#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kantorovich/report.hpp"
#include "kantorovich/transport.hpp"

namespace kantorovich {

struct LawConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  std::size_t max_points = 6;
  std::size_t max_support = 4;
  /// Tolerance for the floating-point checks; exact laws always use 0.
  double tolerance = 1e-8;
  Solver solver = Solver::Auto;
};

// Each family draws from its own stream derived from config.seed, so adding
// or skipping a family leaves the others unchanged.

/// Flow solver against permutation brute force on rosters of <= 8 points
/// with a shared denominator <= 7.
LawResult check_solver_agreement(const LawConfig& config);
/// Duality gap in [0, tolerance]; the two results cover the sign and the size.
std::vector<LawResult> check_strong_duality(const LawConfig& config);
/// Assignment optimum, bistochastic flow optimum and permutation brute force
/// agree on multisets of length <= 6.
LawResult check_multiset_equivalence(const LawConfig& config);
/// Symmetry, triangle inequality and identity of W1 on random triples.
std::vector<LawResult> check_w1_metric(const LawConfig& config);

/// delta, iota_n, repetition embeddings, FinUnif precomposition and
/// curry-flattening preserve distances.
std::vector<LawResult> check_isometries(const LawConfig& config);
/// W1(delta(x0), p) = first moment, and mixing with a common component
/// scales distances by lambda.
std::vector<LawResult> check_closed_forms(const LawConfig& config);
/// Pushforward along short maps is short; along isometric embeddings it
/// preserves W1.
std::vector<LawResult> check_functoriality(const LawConfig& config);
/// Unit triangles, associativity squares, the double-quotient square, the
/// expectation square on nested multisets and the PPX square. All exact.
std::vector<LawResult> check_graded_coherence(const LawConfig& config);

/// Every family above plus the monad laws on both weight paths.
std::vector<LawResult> run_law_suite(const LawConfig& config);

/// Permutation brute force for the multiset metric; n <= 9.
double multiset_distance_bruteforce(const MultiSet& a, const MultiSet& b);

}  // namespace kantorovich
