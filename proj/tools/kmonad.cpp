// kmonad: command-line front end for the kantorovich library.
//
// Exit codes: 0 success (JSON report on stdout), 1 invalid input or usage
// (JSON error on stderr), 2 a law check exceeded its tolerance.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kantorovich/algebras.hpp"
#include "kantorovich/approx.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/io.hpp"
#include "kantorovich/laws.hpp"
#include "kantorovich/monad.hpp"

namespace k = kantorovich;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kLawFailure = 2;

struct Common {
  std::string solver = "auto";
  double tolerance = 1e-8;
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  std::size_t max_points = 6;
  std::size_t max_support = 4;
  std::string out = "json";
};

struct Inputs {
  std::string space, p, q, a, b;
  std::string kind = "multiset";
  std::string mode = "rationalize";
  double eps = 0.1;
  std::size_t center = 0;
  double radius = 0.0;
  std::vector<std::size_t> sizes{8, 16, 32, 64, 128};
  std::size_t n = 16;
  std::size_t dim = 2;
  std::string norm = "l2";
  std::string carrier = "whole";
  std::string convention = "first";
};

// Raised for flag combinations that the parser alone cannot reject.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

k::TransportOptions transport_options(const Common& c) {
  const auto solver = k::parse_solver(c.solver);
  require(solver.has_value(), "unknown solver '" + c.solver + "'");
  require(c.tolerance > 0.0, "--tolerance must be positive");
  k::TransportOptions o;
  o.solver = *solver;
  o.tol.solver = c.tolerance;
  return o;
}

json header(const std::string& command, const Common& c) {
  return {{"command", command}, {"tolerance", c.tolerance}};
}

void emit(const json& report) { std::cout << report.dump(2) << '\n'; }

struct Pair {
  k::SpacePtr space;
  k::DiscreteMeasure p, q;
  json digests;
};

Pair load_pair(const Inputs& in) {
  require(!in.space.empty() && !in.p.empty() && !in.q.empty(), "--space, --p and --q are required");
  std::string ds, dp, dq;
  auto space = k::load_space(in.space, &ds);
  auto p = k::load_measure(in.p, space, &dp);
  auto q = k::load_measure(in.q, space, &dq);
  return {space, std::move(p), std::move(q), {{"space", ds}, {"p", dp}, {"q", dq}}};
}

int run_transport(const std::string& command, const Common& c, const Inputs& in) {
  const auto opts = transport_options(c);
  const auto pair = load_pair(in);
  const auto result = k::wasserstein(pair.p, pair.q, opts);
  json report = header(command, c);
  report["inputs"] = pair.digests;
  report["solver"] = result.solver;
  report["cost"] = result.cost;
  report["gap"] = result.gap;
  const auto full = k::to_json(result);
  if (command == "coupling") report["coupling"] = full["coupling"];
  if (command == "dual") {
    report["dual"] = full["dual"];
    report["dual_value"] = k::w1_dual_value(pair.p, pair.q, result.dual);
  }
  emit(report);
  return kOk;
}

int run_power_dist(const Common& c, const Inputs& in) {
  require(!in.space.empty() && !in.a.empty() && !in.b.empty(), "--space, --a and --b are required");
  require(in.kind == "tuple" || in.kind == "multiset", "--kind must be tuple or multiset");
  std::string ds, da, db;
  const auto space = k::load_space(in.space, &ds);
  auto a = k::load_indices(in.a, &da);
  auto b = k::load_indices(in.b, &db);
  json report = header("power-dist", c);
  report["inputs"] = {{"space", ds}, {"a", da}, {"b", db}};
  report["kind"] = in.kind;
  if (in.kind == "tuple") {
    report["solver"] = "direct";
    report["distance"] = k::tuple_distance(k::Tuple(space, std::move(a)), k::Tuple(space, std::move(b)));
  } else {
    report["solver"] = "assignment";
    report["distance"] = k::multiset_distance(k::MultiSet(space, std::move(a)), k::MultiSet(space, std::move(b)));
  }
  emit(report);
  return kOk;
}

int run_laws(const Common& c) {
  k::LawConfig config;
  config.trials = c.trials;
  config.seed = c.seed;
  config.max_points = c.max_points;
  config.max_support = c.max_support;
  config.tolerance = c.tolerance;
  config.solver = transport_options(c).solver;
  const auto results = k::run_law_suite(config);
  const bool pass = k::all_pass(results);
  json report = header("laws", c);
  report["solver"] = c.solver;
  report["seed"] = c.seed;
  report["trials"] = c.trials;
  report["rng"] = std::string(k::Rng::kAlgorithm);
  report["sampler"] = {{"max_points", c.max_points}, {"max_support", c.max_support}};
  report["results"] = k::to_json(results);
  report["pass"] = pass;
  emit(report);
  return pass ? kOk : kLawFailure;
}

int run_algebra_check(const Common& c, const Inputs& in) {
  const auto norm = k::parse_norm(in.norm);
  require(norm.has_value(), "unknown norm '" + in.norm + "'");
  require(in.dim >= 1, "--dim must be positive");
  require(c.tolerance > 0.0, "--tolerance must be positive");
  const std::map<std::string, k::Carrier> carriers{{"whole", k::Carrier::Whole},
                                                   {"unit_cube", k::Carrier::UnitCube},
                                                   {"simplex", k::Carrier::StandardSimplex}};
  const auto carrier = carriers.find(in.carrier);
  require(carrier != carriers.end(), "unknown carrier '" + in.carrier + "'");
  require(in.convention == "first" || in.convention == "second", "--convention must be first or second");
  const auto convention = in.convention == "first" ? k::Convention::FirstArgument : k::Convention::SecondArgument;

  k::AlgebraSampler sampler;
  sampler.max_points = c.max_points;
  sampler.max_support = c.max_support;
  auto results = k::check_algebra_laws(in.dim, *norm, carrier->second, sampler, c.trials, c.seed, c.tolerance);

  k::Rng rng(k::split_seed(c.seed, 0x636f6e766578));
  const k::ConvexAlgebra algebra(in.dim, *norm, k::random_carrier_points(rng, in.dim, carrier->second, 6),
                                 carrier->second);
  auto append = [&results](std::vector<k::LawResult> more) {
    results.insert(results.end(), more.begin(), more.end());
  };
  append(k::check_convex_axioms(algebra, rng, c.trials, convention, c.tolerance));
  append(k::check_metric_compat(algebra, rng, c.trials, convention, c.tolerance));
  append(k::check_affine_morphisms(algebra, rng, c.trials, c.tolerance));
  results.push_back(k::check_klambda_shortness(algebra, rng, c.trials, c.tolerance));
  append(k::check_operad_laws(rng, c.trials));

  const bool pass = k::all_pass(results);
  json report = header("algebra-check", c);
  report["seed"] = c.seed;
  report["trials"] = c.trials;
  report["rng"] = std::string(k::Rng::kAlgorithm);
  report["carrier"] = {{"dim", in.dim}, {"norm", in.norm}, {"kind", in.carrier}};
  report["convention"] = in.convention;
  report["results"] = k::to_json(results);
  report["pass"] = pass;
  emit(report);
  return pass ? kOk : kLawFailure;
}

int run_approx(const Common& c, const Inputs& in) {
  require(!in.space.empty() && !in.p.empty(), "--space and --p are required");
  const auto opts = transport_options(c);
  std::string ds, dp;
  const auto space = k::load_space(in.space, &ds);
  const auto p = k::load_measure(in.p, space, &dp);
  json report = header("approx", c);
  report["inputs"] = {{"space", ds}, {"p", dp}};
  report["mode"] = in.mode;

  if (in.mode == "study") {
    const auto rows = k::convergence_study(p, in.sizes, c.trials, c.seed);
    if (c.out == "csv") {
      std::cout << "n,median_w1\n";
      for (const auto& r : rows) {
        std::ostringstream line;
        line.precision(17);
        line << r.n << ',' << r.median_w1 << '\n';
        std::cout << line.str();
      }
      return kOk;
    }
    json table = json::array();
    for (const auto& r : rows) table.push_back({{"n", r.n}, {"median_w1", r.median_w1}});
    report["seed"] = c.seed;
    report["trials"] = c.trials;
    report["rng"] = std::string(k::Rng::kAlgorithm);
    report["solver"] = "auto";
    report["table"] = std::move(table);
    report["inversions"] = k::count_inversions(rows);
    emit(report);
    return kOk;
  }
  require(c.out == "json", "--out csv applies to --mode study only");
  k::ApproximationReport result = [&] {
    if (in.mode == "rationalize") return k::rationalize(p, in.eps, opts);
    require(in.mode == "truncate", "--mode must be rationalize, truncate or study");
    return k::truncate_to_ball(p, in.center, in.radius, opts);
  }();
  report["solver"] = c.solver;
  report["report"] = k::to_json(result);
  emit(report);
  return kOk;
}

int run_sample(const Common& c, const Inputs& in) {
  require(!in.space.empty() && !in.p.empty(), "--space and --p are required");
  std::string ds, dp;
  const auto space = k::load_space(in.space, &ds);
  const auto p = k::load_measure(in.p, space, &dp);
  const auto sample = k::sample_empirical(p, in.n, c.seed);
  const auto empirical = k::empirical_sym(sample);
  json report = header("sample", c);
  report["inputs"] = {{"space", ds}, {"p", dp}};
  report["seed"] = c.seed;
  report["rng"] = std::string(k::Rng::kAlgorithm);
  report["n"] = in.n;
  report["multiset"] = sample.entries;
  report["empirical"] = k::to_json(empirical);
  report["w1_to_target"] = k::wasserstein(empirical, p, transport_options(c)).cost;
  report["solver"] = c.solver;
  emit(report);
  return kOk;
}

int fail(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein distances, law checks and approximation studies on finite metric spaces"};
  app.require_subcommand(1);
  Common common;
  Inputs in;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--solver", common.solver, "auto, assignment, flow or brute");
    sub->add_option("--tolerance", common.tolerance, "tolerance for floating-point checks");
    sub->add_option("--trials", common.trials, "random trials per check")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "base seed");
    sub->add_option("--max-points", common.max_points, "largest random roster")->check(CLI::PositiveNumber);
    sub->add_option("--max-support", common.max_support, "largest random support")->check(CLI::PositiveNumber);
    sub->add_option("--out", common.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--space", in.space, "space file (.json or .csv)");
    sub->add_option("--p", in.p, "first measure (.json)");
    sub->add_option("--q", in.q, "second measure (.json)");
  };

  auto* dist = app.add_subcommand("dist", "W1 distance with its duality gap");
  auto* coupling = app.add_subcommand("coupling", "W1 distance with an optimal coupling");
  auto* dual = app.add_subcommand("dual", "W1 distance with an optimal 1-Lipschitz potential");
  for (auto* sub : {dist, coupling, dual}) {
    add_common(sub);
    add_pair(sub);
  }

  auto* power = app.add_subcommand("power-dist", "distance between tuples or multisets");
  add_common(power);
  power->add_option("--space", in.space, "space file");
  power->add_option("--a", in.a, "first index list (.json)");
  power->add_option("--b", in.b, "second index list (.json)");
  power->add_option("--kind", in.kind, "tuple or multiset");

  auto* laws = app.add_subcommand("laws", "randomized law suite");
  add_common(laws);

  auto* algebra = app.add_subcommand("algebra-check", "barycenter and convex-space laws on a normed carrier");
  add_common(algebra);
  algebra->add_option("--dim", in.dim, "carrier dimension");
  algebra->add_option("--norm", in.norm, "l1, l2 or linf");
  algebra->add_option("--carrier", in.carrier, "whole, unit_cube or simplex");
  algebra->add_option("--convention", in.convention, "first (c_1(x,y) = x) or second (c_0(x,y) = x)");

  auto* approx = app.add_subcommand("approx", "rationalization, ball truncation or convergence study");
  add_common(approx);
  approx->add_option("--space", in.space, "space file");
  approx->add_option("--p", in.p, "target measure");
  approx->add_option("--mode", in.mode, "rationalize, truncate or study");
  approx->add_option("--eps", in.eps, "rationalization step");
  approx->add_option("--center", in.center, "truncation center (roster index)");
  approx->add_option("--radius", in.radius, "truncation radius");
  approx->add_option("--sizes", in.sizes, "sample sizes for the study")->delimiter(',');

  auto* sample = app.add_subcommand("sample", "i.i.d. sample as a multiset");
  add_common(sample);
  sample->add_option("--space", in.space, "space file");
  sample->add_option("--p", in.p, "measure to sample");
  sample->add_option("--n", in.n, "sample size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name != "approx") require(common.out == "json", "--out csv applies to approx --mode study only");
    if (name == "dist" || name == "coupling" || name == "dual") return run_transport(name, common, in);
    if (name == "power-dist") return run_power_dist(common, in);
    if (name == "laws") return run_laws(common);
    if (name == "algebra-check") return run_algebra_check(common, in);
    if (name == "approx") return run_approx(common, in);
    return run_sample(common, in);
  } catch (const UsageError& e) {
    return fail("usage", e.what());
  } catch (const k::IoError& e) {
    return fail(e.code(), e.what());
  } catch (const k::Error& e) {
    return fail("invariant." + std::string(k::to_string(e.code())), e.what());
  }
}
