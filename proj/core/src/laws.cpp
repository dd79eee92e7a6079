#include "kantorovich/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kantorovich/algebras.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/graded.hpp"
#include "kantorovich/monad.hpp"
#include "kantorovich/random.hpp"

namespace kantorovich {

namespace {

// Stream tags, one per family.
enum : std::uint64_t {
  kAgreement = 1,
  kDuality,
  kMultiset,
  kMetric,
  kIsometry,
  kClosedForm,
  kFunctor,
  kGraded,
  kMonadRational,
  kMonadFloat,
};

Rng family_rng(const LawConfig& c, std::uint64_t tag) { return Rng(split_seed(c.seed, tag)); }

Norm random_norm(Rng& rng) {
  static constexpr Norm kNorms[] = {Norm::L1, Norm::L2, Norm::LInf};
  return kNorms[rng.below(3)];
}

EuclideanSpace random_roster(Rng& rng, std::size_t n) {
  const auto spread = std::max<std::int64_t>(5, static_cast<std::int64_t>(n));
  if (rng.below(2) == 0) return random_line(rng, n, std::max<std::int64_t>(20, 2 * spread));
  return random_euclidean(rng, n, 1 + rng.below(3), random_norm(rng), spread);
}

SpacePtr random_space(Rng& rng, std::size_t max_points) {
  return random_roster(rng, 1 + rng.below(max_points)).to_metric_space();
}

DiscreteMeasure random_measure(Rng& rng, const SpacePtr& space, const LawConfig& c) {
  // Mostly rational, with a float share to exercise the float solver route.
  if (rng.below(4) == 0) return random_float_measure(rng, space, c.max_support);
  return random_rational_measure(rng, space, c.max_support, 12);
}

// Rational measure whose weights share the denominator den.
DiscreteMeasure measure_with_denominator(Rng& rng, const SpacePtr& space, std::uint64_t den) {
  const std::size_t k = 1 + rng.below(std::min<std::uint64_t>(den, space->size()));
  std::vector<Index> all(space->size());
  std::iota(all.begin(), all.end(), Index{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
  all.resize(k);
  return DiscreteMeasure::from_rational(space, std::move(all), random_composition(rng, den, k), den);
}

TransportOptions options_of(const LawConfig& c) {
  TransportOptions o;
  o.solver = c.solver;
  return o;
}

double w1(const DiscreteMeasure& p, const DiscreteMeasure& q, const LawConfig& c) {
  return wasserstein(p, q, options_of(c)).cost;
}

std::vector<std::vector<Index>> random_grid(Rng& rng, std::size_t roster, std::size_t rows,
                                            std::size_t cols) {
  std::vector<std::vector<Index>> out(rows);
  for (auto& r : out) r = random_indices(rng, roster, cols);
  return out;
}

std::size_t arity(Rng& rng) { return 1 + static_cast<std::size_t>(rng.below(3)); }

}  // namespace

double multiset_distance_bruteforce(const MultiSet& a, const MultiSet& b) {
  if (a.space != b.space) throw Error(ErrorCode::MismatchedSpaces, "elements of different spaces");
  if (a.size() != b.size() || a.size() == 0) throw Error(ErrorCode::ShapeMismatch, "length mismatch");
  if (a.size() > 9) throw Error(ErrorCode::SizeOverflow, "brute force limited to 9 entries");
  const auto& d = *a.space;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) total += d(a.entries[i], b.entries[perm[i]]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(a.size());
}

LawResult check_solver_agreement(const LawConfig& c) {
  LawResult r{"transport.flow_vs_brute", 0, 0.0, c.tolerance, true};
  Rng rng = family_rng(c, kAgreement);
  TransportOptions flow;
  flow.solver = Solver::Flow;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, 8);
    const std::uint64_t den = 1 + rng.below(7);
    const auto p = measure_with_denominator(rng, space, den);
    const auto q = measure_with_denominator(rng, space, den);
    record(r, std::abs(wasserstein(p, q, flow).cost - w1_bruteforce(p, q)));
  }
  return r;
}

std::vector<LawResult> check_strong_duality(const LawConfig& c) {
  LawResult size{"transport.duality_gap", 0, 0.0, c.tolerance, true};
  LawResult sign{"transport.duality_gap_nonnegative", 0, 0.0, 0.0, true};
  Rng rng = family_rng(c, kDuality);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, c.max_points);
    const auto p = random_measure(rng, space, c);
    const auto q = random_measure(rng, space, c);
    const auto result = wasserstein(p, q, options_of(c));
    record(size, std::abs(result.gap));
    record(sign, std::max(0.0, -result.gap));
  }
  return {size, sign};
}

LawResult check_multiset_equivalence(const LawConfig& c) {
  LawResult r{"power.multiset_metric_equivalence", 0, 0.0, c.tolerance, true};
  Rng rng = family_rng(c, kMultiset);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, c.max_points);
    const std::size_t n = 1 + rng.below(6);
    const MultiSet a(space, random_indices(rng, space->size(), n));
    const MultiSet b(space, random_indices(rng, space->size(), n));
    const double assignment = multiset_distance(a, b);
    const double flow = bistochastic_min(a, b);
    const double brute = multiset_distance_bruteforce(a, b);
    record(r, std::max(std::abs(assignment - brute), std::abs(flow - brute)));
  }
  return r;
}

std::vector<LawResult> check_w1_metric(const LawConfig& c) {
  LawResult identity{"w1.identity", 0, 0.0, c.tolerance, true};
  LawResult symmetry{"w1.symmetry", 0, 0.0, c.tolerance, true};
  LawResult triangle{"w1.triangle", 0, 0.0, c.tolerance, true};
  Rng rng = family_rng(c, kMetric);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, c.max_points);
    const auto p = random_measure(rng, space, c);
    const auto q = random_measure(rng, space, c);
    const auto s = random_measure(rng, space, c);
    record(identity, w1(p, p, c));
    const double pq = w1(p, q, c);
    record(symmetry, std::abs(pq - w1(q, p, c)));
    record(triangle, std::max(0.0, w1(p, s, c) - pq - w1(q, s, c)));
  }
  return {identity, symmetry, triangle};
}

std::vector<LawResult> check_isometries(const LawConfig& c) {
  LawResult delta{"isometry.delta", 0, 0.0, c.tolerance, true};
  LawResult iota{"isometry.iota", 0, 0.0, c.tolerance, true};
  LawResult repeat{"isometry.repeat_embedding", 0, 0.0, c.tolerance, true};
  LawResult pre{"isometry.finunif_precompose", 0, 0.0, c.tolerance, true};
  LawResult curry{"isometry.curry_flatten", 0, 0.0, c.tolerance, true};
  Rng rng = family_rng(c, kIsometry);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, c.max_points);
    const std::size_t size = space->size();

    const Index x = rng.below(size), y = rng.below(size);
    record(delta, std::abs(w1(dirac(space, x), dirac(space, y), c) - (*space)(x, y)));

    const std::size_t n = 1 + rng.below(6);
    const MultiSet a(space, random_indices(rng, size, n));
    const MultiSet b(space, random_indices(rng, size, n));
    const double dab = multiset_distance(a, b);
    record(iota, std::abs(w1(empirical_sym(a), empirical_sym(b), c) - dab));

    const std::size_t k = 1 + rng.below(3);
    record(repeat, std::abs(multiset_distance(repeat_embedding(a, k), repeat_embedding(b, k)) - dab));

    const std::size_t codomain = 1 + rng.below(4);
    const std::size_t fiber = 1 + rng.below(3);
    std::vector<std::size_t> assignment;
    for (std::size_t s = 0; s < codomain; ++s) assignment.insert(assignment.end(), fiber, s);
    for (std::size_t i = assignment.size(); i > 1; --i) std::swap(assignment[i - 1], assignment[rng.below(i)]);
    const FinUnifMap phi(assignment, codomain);
    const Tuple ta(space, random_indices(rng, size, codomain));
    const Tuple tb(space, random_indices(rng, size, codomain));
    record(pre, std::abs(tuple_distance(precompose(phi, ta), precompose(phi, tb)) - tuple_distance(ta, tb)));

    const std::size_t rows = arity(rng), cols = arity(rng);
    const NestedTuple na(space, random_grid(rng, size, rows, cols));
    const NestedTuple nb(space, random_grid(rng, size, rows, cols));
    record(curry, std::abs(tuple_distance(curry_flatten(na), curry_flatten(nb)) - nested_tuple_distance(na, nb)));
  }
  return {delta, iota, repeat, pre, curry};
}

std::vector<LawResult> check_closed_forms(const LawConfig& c) {
  LawResult moment{"closed_form.dirac_first_moment", 0, 0.0, c.tolerance, true};
  LawResult contract{"closed_form.common_component_contraction", 0, 0.0, c.tolerance, true};
  Rng rng = family_rng(c, kClosedForm);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, c.max_points);
    const auto p = random_measure(rng, space, c);
    const Index x0 = rng.below(space->size());
    record(moment, std::abs(w1(dirac(space, x0), p, c) - first_moment(p, x0)));

    const auto q1 = random_measure(rng, space, c);
    const auto q2 = random_measure(rng, space, c);
    const std::uint64_t a = rng.below(7);
    const auto lambda = ProbabilityVector::from_rational({a, 6 - a}, 6);
    const DiscreteMeasure left[] = {q1, p};
    const DiscreteMeasure right[] = {q2, p};
    const double mixed = w1(mixture(lambda, left), mixture(lambda, right), c);
    record(contract, std::abs(mixed - lambda[0] * w1(q1, q2, c)));
  }
  return {moment, contract};
}

std::vector<LawResult> check_functoriality(const LawConfig& c) {
  LawResult shortness{"functor.pushforward_short", 0, 0.0, c.tolerance, true};
  LawResult embedding{"functor.embedding_invariance", 0, 0.0, c.tolerance, true};
  Rng rng = family_rng(c, kFunctor);
  for (std::size_t t = 0; t < c.trials; ++t) {
    // A short map: coordinate projection, or an affine map of operator norm <= 1.
    const std::size_t dim = 1 + rng.below(3);
    const Norm norm = random_norm(rng);
    const std::size_t count = 1 + rng.below(c.max_points);
    const auto source = random_euclidean(rng, count, dim, norm, std::max<std::int64_t>(5, static_cast<std::int64_t>(count)));
    const auto x_space = source.to_metric_space();
    std::vector<Point> images;
    if (rng.below(2) == 0) {
      for (const auto& pt : source.roster) images.push_back({pt[0]});
    } else {
      const auto g = random_short_affine(rng, dim, norm);
      for (const auto& pt : source.roster) images.push_back(g(pt));
    }
    EuclideanSpace target{images.front().size(), norm, {}};
    IndexMap f;
    for (const auto& img : images) {
      auto it = std::find(target.roster.begin(), target.roster.end(), img);
      f.push_back(static_cast<Index>(it - target.roster.begin()));
      if (it == target.roster.end()) target.roster.push_back(img);
    }
    const auto y_space = target.to_metric_space();
    if (!check_short(f, *x_space, *y_space)) {
      record(shortness, std::numeric_limits<double>::infinity());
      continue;
    }
    const auto p = random_measure(rng, x_space, c);
    const auto q = random_measure(rng, x_space, c);
    const double image = w1(pushforward(f, y_space, p), pushforward(f, y_space, q), c);
    record(shortness, std::max(0.0, image - w1(p, q, c)));

    // An isometric embedding of a sub-roster into a larger roster.
    const std::size_t big = 2 + rng.below(c.max_points + 2);
    const auto ambient = random_roster(rng, big);
    const std::size_t small = 1 + rng.below(big - 1);
    std::vector<Index> pick(big);
    std::iota(pick.begin(), pick.end(), Index{0});
    for (std::size_t i = 0; i < small; ++i) std::swap(pick[i], pick[i + rng.below(big - i)]);
    pick.resize(small);
    EuclideanSpace sub{ambient.dim, ambient.norm, {}};
    for (Index i : pick) sub.roster.push_back(ambient.roster[i]);
    const auto sub_space = sub.to_metric_space();
    const auto amb_space = ambient.to_metric_space();
    const auto ps = random_measure(rng, sub_space, c);
    const auto qs = random_measure(rng, sub_space, c);
    const double pushed = w1(pushforward(pick, amb_space, ps), pushforward(pick, amb_space, qs), c);
    record(embedding, std::abs(pushed - w1(ps, qs, c)));
  }
  return {shortness, embedding};
}

std::vector<LawResult> check_graded_coherence(const LawConfig& c) {
  LawResult unit_t{"graded.unit_triangles.tuple", 0, 0.0, 0.0, true};
  LawResult unit_m{"graded.unit_triangles.multiset", 0, 0.0, 0.0, true};
  LawResult assoc_t{"graded.associativity.tuple", 0, 0.0, 0.0, true};
  LawResult assoc_m{"graded.associativity.multiset", 0, 0.0, 0.0, true};
  LawResult dquot{"graded.double_quotient", 0, 0.0, 0.0, true};
  LawResult esquare{"graded.expectation_square", 0, 0.0, 0.0, true};
  LawResult ppx{"graded.ppx_square", 0, 0.0, 0.0, true};
  Rng rng = family_rng(c, kGraded);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto space = random_space(rng, c.max_points);
    const std::size_t size = space->size();
    const std::size_t len = arity(rng);
    record(unit_t, check_unit_triangles(Tuple(space, random_indices(rng, size, len))));
    record(unit_m, check_unit_triangles(MultiSet(space, random_indices(rng, size, len))));

    const std::size_t l = arity(rng), m = arity(rng), n = arity(rng);
    std::vector<std::vector<std::vector<Index>>> cells(l);
    for (auto& middle : cells) middle = random_grid(rng, size, m, n);
    record(assoc_t, check_assoc_square(NestedTuple3{space, cells}));
    record(assoc_m, check_assoc_square(NestedMultiSet3(space, cells)));

    const auto grid = random_grid(rng, size, arity(rng), arity(rng));
    record(dquot, check_double_quotient(NestedTuple(space, grid)) ? 0.0 : 1.0);
    const NestedMultiSet nm(space, grid);
    record(esquare, check_expectation_square(nm));
    record(ppx, check_ppx_square(nm) ? 0.0 : 1.0);
  }
  return {unit_t, unit_m, assoc_t, assoc_m, dquot, esquare, ppx};
}

std::vector<LawResult> run_law_suite(const LawConfig& c) {
  if (c.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  if (c.max_points == 0 || c.max_support == 0) {
    throw Error(ErrorCode::InvalidArgument, "sampler sizes must be positive");
  }
  if (!(c.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  std::vector<LawResult> out;
  auto append = [&out](std::vector<LawResult> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  out.push_back(check_solver_agreement(c));
  append(check_strong_duality(c));
  out.push_back(check_multiset_equivalence(c));
  append(check_w1_metric(c));
  append(check_isometries(c));
  append(check_closed_forms(c));
  append(check_functoriality(c));
  append(check_graded_coherence(c));

  LawSampler sampler;
  sampler.max_points = c.max_points;
  sampler.max_support = c.max_support;
  append(check_monad_laws(sampler, c.trials, split_seed(c.seed, kMonadRational)));
  sampler.rational = false;
  append(check_monad_laws(sampler, c.trials, split_seed(c.seed, kMonadFloat)));
  return out;
}

}  // namespace kantorovich
