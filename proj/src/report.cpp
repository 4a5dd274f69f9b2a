#include "ffinc/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ffinc/error.hpp"

namespace ffinc {

double quantize(double x) {
  const double q = std::round(x * 1e6) / 1e6;
  return q == 0.0 ? 0.0 : q;  // no "-0.000000"
}

bool ExperimentReport::passed() const {
  for (const auto& [k, v] : verdicts) {
    if (!v) return false;
  }
  return true;
}

namespace {

void quantize_all(Json& j) {
  if (j.is_number_float()) {
    j = quantize(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& x : j) quantize_all(x);
  }
}

std::string format_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("cannot emit a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", quantize(x));
  return buf;
}

void write(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write(it.value(), os, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(j[i], os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(j[i], os, indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string csv_cell(const Json& j) {
  std::string s;
  if (j.is_null()) return s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number_float()) {
    s = format_double(j.get<double>());
  } else if (j.is_structured()) {
    s = j.dump();
  } else {
    s = j.dump();
  }
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void flatten(const std::string& prefix, const Json& j, std::map<std::string, Json>& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(prefix + "." + it.key(), it.value(), out);
  } else {
    out[prefix] = j;
  }
}

std::map<std::string, Json> flat_row(const ExperimentReport& r) {
  std::map<std::string, Json> row;
  for (auto it = r.parameters.begin(); it != r.parameters.end(); ++it) {
    flatten("parameters." + it.key(), it.value(), row);
  }
  for (auto it = r.measured.begin(); it != r.measured.end(); ++it) {
    flatten("measured." + it.key(), it.value(), row);
  }
  for (auto it = r.predicted.begin(); it != r.predicted.end(); ++it) {
    flatten("predicted." + it.key(), it.value(), row);
  }
  for (const auto& [k, v] : r.verdicts) row["verdicts." + k] = v;
  return row;
}

}  // namespace

void ExperimentReport::finalize() {
  quantize_all(parameters);
  quantize_all(measured);
  quantize_all(predicted);
  if (wall_clock_seconds) wall_clock_seconds = quantize(*wall_clock_seconds);
}

Json to_json(const ExperimentReport& r) {
  Json j = Json::object();
  j["experiment"] = r.experiment;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  j["parameters"] = r.parameters;
  j["measured"] = r.measured;
  j["predicted"] = r.predicted;
  j["verdicts"] = Json(r.verdicts);
  j["notes"] = r.notes;
  if (r.wall_clock_seconds) j["wall_clock_seconds"] = *r.wall_clock_seconds;
  return j;
}

ExperimentReport report_from_json(const Json& j) {
  try {
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.parameters = j.at("parameters");
    r.measured = j.at("measured");
    r.predicted = j.at("predicted");
    r.verdicts = j.at("verdicts").get<std::map<std::string, bool>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

std::string emit_json(const Json& j) {
  std::ostringstream os;
  write(j, os, 0);
  os << "\n";
  return os.str();
}

std::string emit_reports_json(const std::vector<ExperimentReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return emit_json(arr);
}

std::vector<ExperimentReport> parse_reports_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ValidationError("a report file holds a JSON array");
  std::vector<ExperimentReport> out;
  for (const auto& x : j) out.push_back(report_from_json(x));
  return out;
}

std::string emit_reports_csv(const std::vector<ExperimentReport>& reports) {
  std::vector<std::map<std::string, Json>> rows;
  std::set<std::string> keys;
  for (const auto& r : reports) {
    rows.push_back(flat_row(r));
    for (const auto& [k, v] : rows.back()) keys.insert(k);
  }
  std::string out = "experiment,seed,passed";
  for (const auto& k : keys) out += "," + csv_cell(Json(k));
  out += "\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += csv_cell(Json(reports[i].experiment)) + "," + std::to_string(reports[i].seed) + "," +
           (reports[i].passed() ? "true" : "false");
    for (const auto& k : keys) {
      out += ",";
      if (auto it = rows[i].find(k); it != rows[i].end()) out += csv_cell(it->second);
    }
    out += "\n";
  }
  return out;
}

Json graph_to_json(const BipartiteGraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"a_size", g.a_size()}, {"b_size", g.b_size()}, {"edges", edges}};
}

BipartiteGraph graph_from_json(const Json& j) {
  try {
    return BipartiteGraph::from_edges(
        j.at("a_size").get<std::size_t>(), j.at("b_size").get<std::size_t>(),
        j.at("edges").get<std::vector<std::pair<std::size_t, std::size_t>>>());
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed graph: ") + e.what());
  }
}

Json points_to_json(const PrimeField& field, std::size_t d, std::vector<Vector> points) {
  std::sort(points.begin(), points.end());
  return {{"p", field.p()}, {"d", d}, {"points", points}};
}

std::vector<Vector> points_from_json(const Json& j, const PrimeField& field, std::size_t d) {
  std::vector<Vector> pts;
  try {
    for (const auto& x : j) {
      Vector v;
      for (const auto& c : x) v.push_back(field.reduce(c.get<std::int64_t>()));
      if (v.size() != d) throw ValidationError("point of dimension " + std::to_string(v.size()) +
                                               " in F_p^" + std::to_string(d));
      pts.push_back(std::move(v));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed point list: ") + e.what());
  }
  return pts;
}

Json hyperplanes_to_json(const std::vector<Hyperplane>& hs) {
  Json arr = Json::array();
  for (const auto& h : hs) arr.push_back({{"normal", h.normal()}, {"offset", h.offset()}});
  return arr;
}

std::vector<Hyperplane> hyperplanes_from_json(const Json& j, const PrimeField& field, std::size_t d) {
  std::vector<Hyperplane> out;
  try {
    for (const auto& h : j) {
      auto normal = points_from_json(Json::array({h.at("normal")}), field, d).front();
      out.push_back(Hyperplane::make(field, std::move(normal),
                                     field.reduce(h.at("offset").get<std::int64_t>())));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed hyperplane list: ") + e.what());
  }
  return out;
}

Json polynomial_to_json(const MultivariatePolynomial& f) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < f.monomials().size(); ++i) {
    if (f.coefficients()[i] == 0) continue;
    coeffs.push_back({{"exp", f.monomials()[i]}, {"c", f.coefficients()[i]}});
  }
  return {{"p", f.field().p()}, {"D", f.num_vars()}, {"Delta", f.max_degree()}, {"coeffs", coeffs}};
}

MultivariatePolynomial polynomial_from_json(const Json& j) {
  try {
    const PrimeField field(j.at("p").get<std::uint64_t>());
    MultivariatePolynomial f(field, j.at("D").get<std::size_t>(), j.at("Delta").get<std::size_t>());
    for (const auto& c : j.at("coeffs")) f.set(c.at("exp").get<Exponent>(), c.at("c").get<std::int64_t>());
    return f;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed polynomial: ") + e.what());
  }
}

}  // namespace ffinc
