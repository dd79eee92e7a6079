#include "kantorovich/graded.hpp"

#include <algorithm>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

template <class Rows>
void require_rectangular(const Rows& rows) {
  if (rows.empty()) throw Error(ErrorCode::ShapeMismatch, "nesting has no rows");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size() || r.empty()) {
      throw Error(ErrorCode::ShapeMismatch, "ragged nesting");
    }
  }
}

double mismatches(const std::vector<Index>& a, const std::vector<Index>& b) {
  double count = static_cast<double>(a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) count += a[i] != b[i];
  return count;
}

}  // namespace

NestedTuple::NestedTuple(SpacePtr s, const std::vector<std::vector<Index>>& rows)
    : space(std::move(s)) {
  require_rectangular(rows);
  outer = rows.size();
  inner = rows.front().size();
  grid.reserve(outer * inner);
  for (const auto& r : rows) {
    for (Index x : r) {
      if (x >= space->size()) throw Error(ErrorCode::IndexOutOfRange, "entry out of range");
      grid.push_back(x);
    }
  }
}

Tuple NestedTuple::row(std::size_t k) const {
  return Tuple(space, std::vector<Index>(grid.begin() + k * inner, grid.begin() + (k + 1) * inner));
}

NestedMultiSet::NestedMultiSet(SpacePtr s, std::vector<std::vector<Index>> r)
    : space(std::move(s)), rows(std::move(r)) {
  require_rectangular(rows);
  for (auto& row : rows) {
    for (Index x : row) {
      if (x >= space->size()) throw Error(ErrorCode::IndexOutOfRange, "entry out of range");
    }
    std::sort(row.begin(), row.end());
  }
  std::sort(rows.begin(), rows.end());
}

NestedMultiSet3::NestedMultiSet3(SpacePtr s, std::vector<std::vector<std::vector<Index>>> c)
    : space(std::move(s)), cells(std::move(c)) {
  require_rectangular(cells);
  for (auto& middle : cells) {
    require_rectangular(middle);
    if (middle.front().size() != cells.front().front().size()) {
      throw Error(ErrorCode::ShapeMismatch, "ragged nesting");
    }
    for (auto& inner : middle) std::sort(inner.begin(), inner.end());
    std::sort(middle.begin(), middle.end());
  }
  std::sort(cells.begin(), cells.end());
}

Tuple curry_flatten(const NestedTuple& t) { return Tuple(t.space, t.grid); }

MultiSet flatten_multiset(const NestedMultiSet& nm) {
  std::vector<Index> all;
  for (const auto& r : nm.rows) all.insert(all.end(), r.begin(), r.end());
  return MultiSet(nm.space, std::move(all));
}

NestedMultiSet nested_quotient(const NestedTuple& t) {
  std::vector<std::vector<Index>> rows;
  rows.reserve(t.outer);
  for (std::size_t k = 0; k < t.outer; ++k) rows.push_back(quotient(t.row(k)).entries);
  return NestedMultiSet(t.space, std::move(rows));
}

double nested_tuple_distance(const NestedTuple& a, const NestedTuple& b) {
  if (a.outer != b.outer || a.inner != b.inner) {
    throw Error(ErrorCode::ShapeMismatch, "nesting shapes differ");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < a.outer; ++k) acc += tuple_distance(a.row(k), b.row(k));
  return acc / static_cast<double>(a.outer);
}

NestedTuple as_single_row(const Tuple& t) { return NestedTuple(t.space, {t.entries}); }

NestedTuple as_single_column(const Tuple& t) {
  std::vector<std::vector<Index>> rows;
  for (Index x : t.entries) rows.push_back({x});
  return NestedTuple(t.space, rows);
}

NestedMultiSet as_single_row(const MultiSet& m) { return NestedMultiSet(m.space, {m.entries}); }

NestedMultiSet as_single_column(const MultiSet& m) {
  std::vector<std::vector<Index>> rows;
  for (Index x : m.entries) rows.push_back({x});
  return NestedMultiSet(m.space, std::move(rows));
}

double check_unit_triangles(const Tuple& t) {
  return mismatches(curry_flatten(as_single_row(t)).entries, t.entries) +
         mismatches(curry_flatten(as_single_column(t)).entries, t.entries);
}

double check_unit_triangles(const MultiSet& m) {
  return mismatches(flatten_multiset(as_single_row(m)).entries, m.entries) +
         mismatches(flatten_multiset(as_single_column(m)).entries, m.entries);
}

double check_assoc_square(const NestedTuple3& g) {
  require_rectangular(g.cells);
  for (const auto& middle : g.cells) {
    require_rectangular(middle);
    if (middle.size() != g.cells.front().size() ||
        middle.front().size() != g.cells.front().front().size()) {
      throw Error(ErrorCode::ShapeMismatch, "ragged nesting");
    }
  }
  // Inner pair first: each outer cell (X^n)^m -> X^{mn}, then (X^{mn})^l -> X^{lmn}.
  std::vector<std::vector<Index>> inner_first;
  for (const auto& middle : g.cells) {
    inner_first.push_back(curry_flatten(NestedTuple(g.space, middle)).entries);
  }
  const auto path_a = curry_flatten(NestedTuple(g.space, inner_first)).entries;

  // Outer pair first: ((X^n)^m)^l -> (X^n)^{lm}, then -> X^{lmn}.
  std::vector<std::vector<Index>> outer_first;
  for (const auto& middle : g.cells) {
    for (const auto& inner : middle) outer_first.push_back(inner);
  }
  const auto path_b = curry_flatten(NestedTuple(g.space, outer_first)).entries;
  return mismatches(path_a, path_b);
}

double check_assoc_square(const NestedMultiSet3& g) {
  std::vector<std::vector<Index>> inner_first;
  for (const auto& middle : g.cells) {
    inner_first.push_back(flatten_multiset(NestedMultiSet(g.space, middle)).entries);
  }
  const auto path_a = flatten_multiset(NestedMultiSet(g.space, inner_first)).entries;

  std::vector<std::vector<Index>> outer_first;
  for (const auto& middle : g.cells) {
    for (const auto& inner : middle) outer_first.push_back(inner);
  }
  const auto path_b = flatten_multiset(NestedMultiSet(g.space, outer_first)).entries;
  return mismatches(path_a, path_b);
}

bool check_double_quotient(const NestedTuple& t) {
  return flatten_multiset(nested_quotient(t)) == quotient(curry_flatten(t));
}

}  // namespace kantorovich
