#pragma once

#include <cstddef>
#include <vector>

#include "kantorovich/power.hpp"

namespace kantorovich {

/// An element of (X^m)^n: n rows of m indices each, stored row-major.
struct NestedTuple {
  SpacePtr space;
  std::size_t outer = 0;
  std::size_t inner = 0;
  std::vector<Index> grid;

  /// Throws Error{ShapeMismatch} on ragged input.
  NestedTuple(SpacePtr s, const std::vector<std::vector<Index>>& rows);
  Tuple row(std::size_t k) const;
};

/// An element of (X_m)_n: sorted rows, rows in lexicographic order.
struct NestedMultiSet {
  SpacePtr space;
  std::vector<std::vector<Index>> rows;

  /// Canonicalizes both layers; throws on ragged input.
  NestedMultiSet(SpacePtr s, std::vector<std::vector<Index>> rows);
  std::size_t outer() const noexcept { return rows.size(); }
  std::size_t inner() const noexcept { return rows.empty() ? 0 : rows.front().size(); }
  MultiSet row(std::size_t k) const { return MultiSet(space, rows[k]); }
  friend bool operator==(const NestedMultiSet& a, const NestedMultiSet& b) {
    return a.space == b.space && a.rows == b.rows;
  }
};

/// Three-deep nesting ((X^n)^m)^l, indexed [outer][middle][inner].
struct NestedTuple3 {
  SpacePtr space;
  std::vector<std::vector<std::vector<Index>>> cells;
};

/// Three-deep symmetrized nesting ((X_n)_m)_l, canonical at every layer.
struct NestedMultiSet3 {
  SpacePtr space;
  std::vector<std::vector<std::vector<Index>>> cells;

  NestedMultiSet3(SpacePtr s, std::vector<std::vector<std::vector<Index>>> cells);
};

/// Currying map E^{S,T}: row-major concatenation.
Tuple curry_flatten(const NestedTuple& t);

/// Union over the outer layer, E_{m,n}.
MultiSet flatten_multiset(const NestedMultiSet& nm);

/// q_n applied to the rows, then to the outer layer.
NestedMultiSet nested_quotient(const NestedTuple& t);

/// Distance in (X^m)^n: the power metric applied twice.
double nested_tuple_distance(const NestedTuple& a, const NestedTuple& b);

/// 1 x m and m x 1 nestings of a tuple.
NestedTuple as_single_row(const Tuple& t);
NestedTuple as_single_column(const Tuple& t);
NestedMultiSet as_single_row(const MultiSet& m);
NestedMultiSet as_single_column(const MultiSet& m);

/// Both unit triangles; number of mismatched positions (0 on success).
double check_unit_triangles(const Tuple& t);
double check_unit_triangles(const MultiSet& m);

/// Associativity square: flatten inner-then-outer against outer-then-inner.
/// Returns the number of positions where the two results differ.
double check_assoc_square(const NestedTuple3& grid);
double check_assoc_square(const NestedMultiSet3& grid);

/// flatten_multiset(nested_quotient(t)) == quotient(curry_flatten(t)).
bool check_double_quotient(const NestedTuple& t);

}  // namespace kantorovich
