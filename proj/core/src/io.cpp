#include "kantorovich/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kantorovich/error.hpp"

namespace kantorovich {

using nlohmann::json;

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("io.not_found", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

json parse_text(std::string_view text, const char* code) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(code, e.what());
  }
}

// Wraps structural JSON access so type errors surface with the right code.
template <class F>
auto guarded(const char* code, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw IoError(code, e.what());
  }
}

// nlohmann converts -2 or 1.5 to an unsigned type without complaint.
std::uint64_t natural(const json& v, const char* code) {
  if (!v.is_number_unsigned()) throw IoError(code, "expected a nonnegative integer, got " + v.dump());
  return v.get<std::uint64_t>();
}

template <class T>
std::vector<T> naturals(const json& j, const char* code) {
  if (!j.is_array()) throw IoError(code, "expected an array of nonnegative integers");
  std::vector<T> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(static_cast<T>(natural(v, code)));
  return out;
}

}  // namespace

SpacePtr parse_space(const json& j) {
  const auto kind = guarded("parse.space", [&] { return j.at("kind").get<std::string>(); });
  if (kind == "matrix") {
    auto table = guarded("parse.space", [&] { return j.at("dist").get<std::vector<std::vector<double>>>(); });
    const bool pseudo = guarded("parse.space", [&] { return j.value("pseudometric", false); });
    return make_space(std::move(table), pseudo);
  }
  if (kind == "euclidean") {
    const auto norm_name = guarded("parse.space", [&] { return j.value("norm", std::string("l2")); });
    const auto norm = parse_norm(norm_name);
    if (!norm) throw IoError("parse.space", "unknown norm '" + norm_name + "'");
    auto points = guarded("parse.space", [&] { return j.at("points").get<std::vector<Point>>(); });
    if (points.empty()) throw IoError("parse.space", "empty point list");
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
      if (p.size() != dim || dim == 0) throw IoError("parse.space", "points differ in dimension");
    }
    return EuclideanSpace{dim, *norm, std::move(points)}.to_metric_space();
  }
  throw IoError("parse.space", "unknown space kind '" + kind + "'");
}

SpacePtr parse_space_csv(std::string_view text) {
  std::vector<std::vector<double>> table;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw IoError("parse.space", "bad matrix entry '" + cell + "'");
      }
    }
    table.push_back(std::move(row));
  }
  if (table.empty()) throw IoError("parse.space", "empty matrix");
  return make_space(std::move(table));
}

SpacePtr load_space(const std::filesystem::path& path, std::string* digest) {
  const auto text = read_file(path);
  if (digest) *digest = fnv1a64(text);
  if (path.extension() == ".csv") return parse_space_csv(text);
  return parse_space(parse_text(text, "parse.space"));
}

DiscreteMeasure parse_measure(const json& j, const SpacePtr& space) {
  auto support = guarded("parse.measure", [&] { return naturals<Index>(j.at("support"), "parse.measure"); });
  if (j.contains("den") || j.contains("num")) {
    const auto den = guarded("parse.measure", [&] { return natural(j.at("den"), "parse.measure"); });
    auto num = guarded("parse.measure", [&] { return naturals<std::uint64_t>(j.at("num"), "parse.measure"); });
    return DiscreteMeasure::from_rational(space, std::move(support), std::move(num), den);
  }
  auto weights = guarded("parse.measure", [&] { return j.at("weights").get<std::vector<double>>(); });
  return DiscreteMeasure::from_weights(space, std::move(support), std::move(weights));
}

DiscreteMeasure load_measure(const std::filesystem::path& path, const SpacePtr& space, std::string* digest) {
  const auto text = read_file(path);
  if (digest) *digest = fnv1a64(text);
  return parse_measure(parse_text(text, "parse.measure"), space);
}

std::vector<Index> parse_indices(const json& j) {
  return naturals<Index>(j, "parse.tuple");
}

std::vector<Index> load_indices(const std::filesystem::path& path, std::string* digest) {
  const auto text = read_file(path);
  if (digest) *digest = fnv1a64(text);
  return parse_indices(parse_text(text, "parse.tuple"));
}

json to_json(const DiscreteMeasure& p) {
  json out{{"support", std::vector<Index>(p.support().begin(), p.support().end())},
           {"weights", std::vector<double>(p.weights().begin(), p.weights().end())}};
  if (const auto& r = p.rational()) {
    out["den"] = r->den;
    out["num"] = r->num;
  }
  return out;
}

json to_json(const TransportResult& r) {
  const auto& c = r.coupling;
  json matrix = json::array();
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < c.q.size(); ++j) row.push_back(c.at(i, j));
    matrix.push_back(std::move(row));
  }
  return {{"cost", r.cost},
          {"gap", r.gap},
          {"solver", r.solver},
          {"coupling",
           {{"rows", std::vector<Index>(c.p.support().begin(), c.p.support().end())},
            {"cols", std::vector<Index>(c.q.support().begin(), c.q.support().end())},
            {"matrix", std::move(matrix)}}},
          {"dual", {{"points", r.dual.points}, {"values", r.dual.values}}}};
}

json to_json(const LawResult& r) {
  // Non-finite discrepancies become strings so the report stays valid JSON.
  json worst = std::isfinite(r.worst_discrepancy) ? json(r.worst_discrepancy)
               : std::isnan(r.worst_discrepancy)  ? json("nan")
                                                  : json("inf");
  return {{"law", r.law},
          {"trials", r.trials},
          {"worst_discrepancy", std::move(worst)},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

json to_json(const std::vector<LawResult>& results) {
  json out = json::array();
  for (const auto& r : results) out.push_back(to_json(r));
  return out;
}

json to_json(const ApproximationReport& r) {
  json out{{"target", to_json(r.target)},
           {"approximant", to_json(r.approximant)},
           {"w1_error", r.w1_error},
           {"bound", std::isfinite(r.bound) ? json(r.bound) : json("inf")}};
  if (r.eps) out["eps"] = *r.eps;
  if (r.rho) out["rho"] = *r.rho;
  if (r.n) out["n"] = *r.n;
  return out;
}

}  // namespace kantorovich
