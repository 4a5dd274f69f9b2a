#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffinc/algebraic.hpp"
#include "ffinc/bigraph.hpp"
#include "ffinc/linalg.hpp"

namespace ffinc {

using Json = nlohmann::json;

/// Outcome of one experiment or build. parameters, measured and predicted are
/// JSON objects; floating values are rounded to 6 decimals by finalize().
struct ExperimentReport {
  std::string experiment;
  std::uint64_t seed = 0;
  Json parameters = Json::object();
  Json measured = Json::object();
  Json predicted = Json::object();
  std::map<std::string, bool> verdicts;
  std::vector<std::string> notes;
  std::optional<double> wall_clock_seconds;

  bool passed() const;
  /// Rounds every double to the emitted precision so that emit/parse is lossless.
  void finalize();

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

double quantize(double x);

Json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const Json& j);

/// Sorted keys, two-space indent, doubles with 6 fractional digits, trailing newline.
std::string emit_json(const Json& j);
std::string emit_reports_json(const std::vector<ExperimentReport>& reports);
std::vector<ExperimentReport> parse_reports_json(const std::string& text);

/// Columns experiment, seed, passed, then the sorted union of flattened keys
/// (parameters.*, measured.*, predicted.*, verdicts.*). LF line endings.
std::string emit_reports_csv(const std::vector<ExperimentReport>& reports);

Json graph_to_json(const BipartiteGraph& g);
BipartiteGraph graph_from_json(const Json& j);

/// {"p", "d", "points"} with the points sorted.
Json points_to_json(const PrimeField& field, std::size_t d, std::vector<Vector> points);
std::vector<Vector> points_from_json(const Json& j, const PrimeField& field, std::size_t d);

Json hyperplanes_to_json(const std::vector<Hyperplane>& hs);
std::vector<Hyperplane> hyperplanes_from_json(const Json& j, const PrimeField& field, std::size_t d);

/// {"p", "D", "Delta", "coeffs": [{"exp", "c"}]}, lexicographic, zeros omitted.
Json polynomial_to_json(const MultivariatePolynomial& f);
MultivariatePolynomial polynomial_from_json(const Json& j);

}  // namespace ffinc
