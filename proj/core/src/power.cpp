#include "kantorovich/power.hpp"

#include <algorithm>

#include "kantorovich/assignment.hpp"
#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

void check_entries(const SpacePtr& space, const std::vector<Index>& entries) {
  if (!space) throw Error(ErrorCode::InvalidArgument, "tuple needs a space");
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "tuples have length >= 1");
  for (Index x : entries) {
    if (x >= space->size()) throw Error(ErrorCode::IndexOutOfRange, "entry out of range");
  }
}

void check_comparable(const SpacePtr& sa, std::size_t na, const SpacePtr& sb, std::size_t nb) {
  if (sa != sb) throw Error(ErrorCode::MismatchedSpaces, "elements of different spaces");
  if (na != nb) throw Error(ErrorCode::ShapeMismatch, "length mismatch");
}

}  // namespace

Tuple::Tuple(SpacePtr s, std::vector<Index> e) : space(std::move(s)), entries(std::move(e)) {
  check_entries(space, entries);
}

MultiSet::MultiSet(SpacePtr s, std::vector<Index> e) : space(std::move(s)), entries(std::move(e)) {
  check_entries(space, entries);
  std::sort(entries.begin(), entries.end());
}

double tuple_distance(const Tuple& a, const Tuple& b) {
  check_comparable(a.space, a.size(), b.space, b.size());
  const auto& d = *a.space;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += d(a.entries[i], b.entries[i]);
  return acc / static_cast<double>(a.size());
}

double multiset_distance(const MultiSet& a, const MultiSet& b) {
  check_comparable(a.space, a.size(), b.space, b.size());
  const auto& d = *a.space;
  const std::size_t n = a.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = d(a.entries[i], b.entries[j]);
  }
  return solve_assignment(cost, n).cost / static_cast<double>(n);
}

MultiSet quotient(const Tuple& t) { return MultiSet(t.space, t.entries); }

MultiSet repeat_embedding(const MultiSet& m, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "repetition count must be >= 1");
  std::vector<Index> out;
  out.reserve(m.size() * n);
  for (Index x : m.entries) out.insert(out.end(), n, x);
  return MultiSet(m.space, std::move(out));
}

bool validate_finunif(std::span<const std::size_t> assignment, std::size_t codomain) {
  if (codomain == 0 || assignment.empty() || assignment.size() % codomain != 0) return false;
  std::vector<std::size_t> fiber(codomain, 0);
  for (auto t : assignment) {
    if (t >= codomain) return false;
    ++fiber[t];
  }
  const std::size_t expected = assignment.size() / codomain;
  return std::all_of(fiber.begin(), fiber.end(), [&](std::size_t c) { return c == expected; });
}

FinUnifMap::FinUnifMap(std::vector<std::size_t> assignment, std::size_t codomain)
    : assignment_(std::move(assignment)), codomain_(codomain) {
  if (!validate_finunif(assignment_, codomain_)) {
    throw Error(ErrorCode::NotUniformFibers, "map fibers are not of uniform cardinality");
  }
}

Tuple precompose(const FinUnifMap& phi, const Tuple& t) {
  if (t.size() != phi.codomain()) {
    throw Error(ErrorCode::ShapeMismatch, "tuple length must equal the codomain size");
  }
  std::vector<Index> out(phi.domain());
  for (std::size_t s = 0; s < phi.domain(); ++s) out[s] = t.entries[phi(s)];
  return Tuple(t.space, std::move(out));
}

}  // namespace kantorovich
