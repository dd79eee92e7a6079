#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kantorovich/spaces.hpp"

namespace kantorovich {

/// An element of the power X^n: an ordered list of roster indices.
struct Tuple {
  SpacePtr space;
  std::vector<Index> entries;

  Tuple(SpacePtr s, std::vector<Index> e);
  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const Tuple& a, const Tuple& b) {
    return a.space == b.space && a.entries == b.entries;
  }
};

/// An element of the symmetrized power X_n, stored in ascending order.
struct MultiSet {
  SpacePtr space;
  std::vector<Index> entries;

  /// Sorts `e` into canonical form.
  MultiSet(SpacePtr s, std::vector<Index> e);
  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const MultiSet& a, const MultiSet& b) {
    return a.space == b.space && a.entries == b.entries;
  }
};

/// Rescaled l1 distance (1/n) sum_i d(a_i, b_i).
double tuple_distance(const Tuple& a, const Tuple& b);

/// Minimum over permutations of the rescaled tuple distance, via the
/// assignment solver.
double multiset_distance(const MultiSet& a, const MultiSet& b);

/// Forgets the ordering of a tuple.
MultiSet quotient(const Tuple& t);

/// n-fold repetition X_m -> X_{mn}.
MultiSet repeat_embedding(const MultiSet& m, std::size_t n);

bool validate_finunif(std::span<const std::size_t> assignment, std::size_t codomain);

/// A morphism of the skeleton of FinUnif: {0..|S|-1} -> {0..|T|-1} with
/// every fiber of size |S|/|T|.
class FinUnifMap {
 public:
  /// Throws Error{NotUniformFibers} when the fibers are not equal-sized or
  /// the map is not surjective.
  FinUnifMap(std::vector<std::size_t> assignment, std::size_t codomain);

  std::size_t domain() const noexcept { return assignment_.size(); }
  std::size_t codomain() const noexcept { return codomain_; }
  std::size_t fiber_size() const noexcept { return assignment_.size() / codomain_; }
  std::size_t operator()(std::size_t s) const { return assignment_.at(s); }
  std::span<const std::size_t> assignment() const noexcept { return assignment_; }

 private:
  std::vector<std::size_t> assignment_;
  std::size_t codomain_;
};

/// X^phi : X^T -> X^S, entry s becomes t[phi(s)].
Tuple precompose(const FinUnifMap& phi, const Tuple& t);

}  // namespace kantorovich
