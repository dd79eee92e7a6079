#include <doctest.h>

#include "kantorovich/error.hpp"
#include "kantorovich/graded.hpp"
#include "kantorovich/random.hpp"

using namespace kantorovich;

TEST_SUITE("graded") {

TEST_CASE("curry flatten") {
  const auto r = line({0, 1, 2, 3}).to_metric_space();
  const NestedTuple t(r, {{0, 1}, {2, 3}});
  CHECK(curry_flatten(t).entries == std::vector<Index>{0, 1, 2, 3});
  const NestedTuple a(r, {{0}, {2}}), b(r, {{1}, {3}});
  CHECK(nested_tuple_distance(a, b) == 1.0);
  CHECK(tuple_distance(curry_flatten(a), curry_flatten(b)) == 1.0);
  CHECK_THROWS_AS(NestedTuple(r, {{0, 1}, {2}}), Error);
  CHECK_THROWS_AS(NestedTuple(r, {}), Error);
}

TEST_CASE("flatten multiset") {
  const auto r = line({0, 1, 2, 3}).to_metric_space();
  CHECK(flatten_multiset(NestedMultiSet(r, {{0, 1}, {2, 3}})).entries == std::vector<Index>{0, 1, 2, 3});
  CHECK(flatten_multiset(NestedMultiSet(r, {{2}})).entries == std::vector<Index>{2});
  CHECK(flatten_multiset(NestedMultiSet(r, {{1, 1}, {1, 2}})).entries == std::vector<Index>{1, 1, 1, 2});
  // Canonical order: sorted inside, rows sorted lexicographically.
  const NestedMultiSet nm(r, {{3, 1}, {2, 0}});
  CHECK(nm.rows == std::vector<std::vector<Index>>{{0, 2}, {1, 3}});
}

TEST_CASE("unit triangles") {
  Rng rng(2);
  const auto r = random_line(rng, 5).to_metric_space();
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.below(4);
    CHECK(check_unit_triangles(Tuple(r, random_indices(rng, 5, n))) == 0.0);
    CHECK(check_unit_triangles(MultiSet(r, random_indices(rng, 5, n))) == 0.0);
  }
}

TEST_CASE("associativity squares") {
  const auto r = line({0, 1, 2, 3, 4, 5, 6, 7}).to_metric_space();
  CHECK(check_assoc_square(NestedTuple3{r, {{{3}}}}) == 0.0);
  CHECK(check_assoc_square(NestedMultiSet3(r, {{{3}}})) == 0.0);
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<std::vector<Index>>> cells(2 + rng.below(2));
    for (auto& middle : cells) {
      middle.resize(2);
      for (auto& inner : middle) inner = random_indices(rng, 8, 2);
    }
    CHECK(check_assoc_square(NestedTuple3{r, cells}) == 0.0);
    CHECK(check_assoc_square(NestedMultiSet3(r, cells)) == 0.0);
  }
  CHECK_THROWS_AS(check_assoc_square(NestedTuple3{r, {{{0, 1}}, {{0}}}}), Error);
}

TEST_CASE("double quotient") {
  const auto r = line({0, 1, 2, 3}).to_metric_space();
  const NestedTuple t(r, {{3, 1}, {2, 0}});
  CHECK(check_double_quotient(t));
  CHECK(flatten_multiset(nested_quotient(t)).entries == std::vector<Index>{0, 1, 2, 3});
  CHECK(check_double_quotient(NestedTuple(r, {{2}})));
  CHECK(flatten_multiset(nested_quotient(NestedTuple(r, {{2, 0}, {3, 1}}))) ==
        flatten_multiset(nested_quotient(t)));
}

TEST_CASE("curry flatten is an isometry") {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const auto r = random_euclidean(rng, 6, 2, Norm::L1).to_metric_space();
    const std::size_t rows = 1 + rng.below(3), cols = 1 + rng.below(3);
    std::vector<std::vector<Index>> ga(rows), gb(rows);
    for (auto& g : ga) g = random_indices(rng, 6, cols);
    for (auto& g : gb) g = random_indices(rng, 6, cols);
    const NestedTuple a(r, ga), b(r, gb);
    CHECK(tuple_distance(curry_flatten(a), curry_flatten(b)) == doctest::Approx(nested_tuple_distance(a, b)));
  }
}

}  // TEST_SUITE
