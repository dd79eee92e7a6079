#pragma once

#include <cstddef>
#include <vector>

namespace kantorovich {

struct AssignmentResult {
  double cost = 0.0;                  // sum of selected entries
  std::vector<std::size_t> row_to_col;
};

/// Minimum-cost perfect matching on a dense n x n cost matrix (row-major),
/// O(n^3) shortest-augmenting-path Hungarian method. Ties resolve toward
/// the lowest column index.
AssignmentResult solve_assignment(const std::vector<double>& cost, std::size_t n);

}  // namespace kantorovich
