#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kantorovich/approx.hpp"
#include "kantorovich/power.hpp"
#include "kantorovich/report.hpp"
#include "kantorovich/transport.hpp"

namespace kantorovich {

/// Input-layer failure with a stable machine-readable code such as
/// "parse.space" or "io.not_found".
class IoError : public std::runtime_error {
 public:
  IoError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// A loaded file: its parsed form plus a digest of the raw bytes.
struct Loaded {
  nlohmann::json value;
  std::string digest;
};

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

/// Reads a file. Throws IoError{"io.not_found"} if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Space formats:
///   {"kind": "matrix", "dist": [[...], ...], "pseudometric": false}
///   {"kind": "euclidean", "norm": "l1"|"l2"|"linf", "points": [[...], ...]}
/// A file ending in .csv holds the distance matrix, one row per line.
SpacePtr parse_space(const nlohmann::json& j);
SpacePtr parse_space_csv(std::string_view text);
SpacePtr load_space(const std::filesystem::path& path, std::string* digest = nullptr);

/// {"support": [i, ...], "weights": [w, ...]} or, for exact weights,
/// {"support": [...], "den": D, "num": [n, ...]}.
DiscreteMeasure parse_measure(const nlohmann::json& j, const SpacePtr& space);
DiscreteMeasure load_measure(const std::filesystem::path& path, const SpacePtr& space,
                             std::string* digest = nullptr);

/// A JSON array of roster indices.
std::vector<Index> parse_indices(const nlohmann::json& j);
std::vector<Index> load_indices(const std::filesystem::path& path, std::string* digest = nullptr);

nlohmann::json to_json(const DiscreteMeasure& p);
nlohmann::json to_json(const TransportResult& r);
nlohmann::json to_json(const LawResult& r);
nlohmann::json to_json(const std::vector<LawResult>& results);
nlohmann::json to_json(const ApproximationReport& r);

}  // namespace kantorovich
