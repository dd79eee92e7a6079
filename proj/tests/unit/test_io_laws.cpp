#include <doctest.h>

#include "kantorovich/error.hpp"
#include "kantorovich/io.hpp"
#include "kantorovich/laws.hpp"

using namespace kantorovich;
using nlohmann::json;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const IoError& e) {
    return e.code();
  } catch (const Error& e) {
    return "invariant." + std::string(to_string(e.code()));
  }
  return "none";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("spaces from json") {
  const auto x = parse_space(json::parse(R"({"kind":"matrix","dist":[[0,1],[1,0]]})"));
  CHECK(x->size() == 2);
  CHECK((*x)(0, 1) == 1.0);
  const auto e = parse_space(json::parse(R"({"kind":"euclidean","norm":"l1","points":[[0,0],[3,4]]})"));
  CHECK((*e)(0, 1) == 7.0);
  const auto l2 = parse_space(json::parse(R"({"kind":"euclidean","points":[[0,0],[3,4]]})"));
  CHECK((*l2)(0, 1) == 5.0);
  CHECK(code_of([] { parse_space(json::parse(R"({"kind":"torus"})")); }) == "parse.space");
  CHECK(code_of([] { parse_space(json::parse(R"({"kind":"matrix","dist":"x"})")); }) == "parse.space");
  CHECK(code_of([] { parse_space(json::parse("[1,2]")); }) == "parse.space");
  CHECK(code_of([] { parse_space(json::parse(R"({"kind":"matrix","dist":[[0,5,1],[5,0,1],[1,1,0]]})")); })
            .rfind("invariant.", 0) == 0);
}

TEST_CASE("spaces from csv") {
  const auto x = parse_space_csv("0,2\n2,0\n");
  CHECK((*x)(1, 0) == 2.0);
  CHECK(code_of([] { parse_space_csv("0,a\n1,0\n"); }) == "parse.space");
}

TEST_CASE("measures from json") {
  const auto x = line({0, 1, 2}).to_metric_space();
  const auto p = parse_measure(json::parse(R"({"support":[0,2],"weights":[0.5,0.5]})"), x);
  CHECK(p.size() == 2);
  const auto r = parse_measure(json::parse(R"({"support":[0,2],"den":3,"num":[1,2]})"), x);
  REQUIRE(r.is_rational());
  CHECK(r.rational()->den == 3);
  CHECK(code_of([&] { parse_measure(json::parse(R"({"support":[0]})"), x); }) == "parse.measure");
  CHECK(code_of([&] { parse_measure(json::parse(R"({"support":[0],"weights":["a"]})"), x); }) == "parse.measure");
  CHECK(code_of([&] { parse_measure(json::parse(R"({"support":[0.5],"weights":[1]})"), x); }) == "parse.measure");
  CHECK(code_of([&] { parse_measure(json::parse(R"({"support":[0],"den":-1,"num":[1]})"), x); }) == "parse.measure");
  CHECK(code_of([&] { parse_measure(json::parse(R"({"support":[7],"weights":[1]})"), x); }) ==
        "invariant.index_out_of_range");
}

TEST_CASE("index lists and files") {
  CHECK(parse_indices(json::parse("[3,1,2]")) == std::vector<Index>{3, 1, 2});
  CHECK(code_of([] { parse_indices(json::parse("[1,-2]")); }) == "parse.tuple");
  CHECK(code_of([] { parse_indices(json::parse(R"({"a":1})")); }) == "parse.tuple");
  CHECK(code_of([] { read_file("/nonexistent/space.json"); }) == "io.not_found");
}

TEST_CASE("digests") {
  CHECK(fnv1a64("") == "cbf29ce484222325");
  CHECK(fnv1a64("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64("a").size() == 16);
}

TEST_CASE("json output") {
  const auto x = line({0, 1, 2}).to_metric_space();
  const auto r = wasserstein(DiscreteMeasure::from_rational(x, {0, 2}, {1, 1}, 2), dirac(x, 1));
  const auto j = to_json(r);
  CHECK(j.at("cost").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("coupling").at("rows").size() == 2);
  CHECK(j.contains("dual"));
  LawResult bad{"x", 1, std::numeric_limits<double>::infinity(), 0.0, false};
  CHECK(to_json(bad).at("worst_discrepancy") == "inf");
}

}  // TEST_SUITE

TEST_SUITE("laws") {

TEST_CASE("the full suite passes") {
  LawConfig c;
  c.trials = 60;
  const auto results = run_law_suite(c);
  CHECK(results.size() >= 25);
  for (const auto& r : results) {
    CHECK_MESSAGE(r.pass, r.law);
    CHECK(r.trials > 0);
  }
}

TEST_CASE("suite is deterministic") {
  LawConfig c;
  c.trials = 20;
  const auto a = run_law_suite(c), b = run_law_suite(c);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].law == b[i].law);
    CHECK(a[i].worst_discrepancy == b[i].worst_discrepancy);
  }
}

TEST_CASE("multiset brute force") {
  const auto r = line({0, 0.5, 1, 3}).to_metric_space();
  CHECK(multiset_distance_bruteforce(MultiSet(r, {0, 2}), MultiSet(r, {1, 3})) == doctest::Approx(1.25));
  CHECK_THROWS_AS(multiset_distance_bruteforce(MultiSet(r, std::vector<Index>(10, 0)),
                                               MultiSet(r, std::vector<Index>(10, 1))),
                  Error);
}

TEST_CASE("invalid configurations") {
  LawConfig c;
  c.trials = 0;
  CHECK_THROWS_AS(run_law_suite(c), Error);
}

}  // TEST_SUITE
