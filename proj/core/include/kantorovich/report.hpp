#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kantorovich {

/// Outcome of one executable law over a batch of random trials.
struct LawResult {
  std::string law;
  std::size_t trials = 0;
  double worst_discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Folds one trial's discrepancy into a running result.
inline void record(LawResult& r, double discrepancy) {
  ++r.trials;
  if (!(discrepancy <= r.worst_discrepancy)) r.worst_discrepancy = discrepancy;
  r.pass = r.pass && discrepancy <= r.tolerance;
}

inline bool all_pass(const std::vector<LawResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace kantorovich
