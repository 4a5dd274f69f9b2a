#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ffinc/error.hpp"
#include "ffinc/experiment.hpp"
#include "ffinc/report.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

ffinc::Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ffinc::ValidationError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ffinc::Json::parse(ss.str());
  } catch (const ffinc::Json::exception& e) {
    throw ffinc::ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ffinc::ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ffinc::ValidationError("write to '" + path + "' failed");
}

std::string render(const std::vector<ffinc::ExperimentReport>& reports, const std::string& format) {
  return format == "csv" ? ffinc::emit_reports_csv(reports) : ffinc::emit_reports_json(reports);
}

int status(const std::vector<ffinc::ExperimentReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed()) return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field incidence constructions and experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  std::optional<std::uint64_t> seed;
  bool timing = false;

  const auto common = [&](CLI::App* sub, bool needs_seed) {
    sub->add_option("--config", config_path, "JSON config (object or array of objects)")
        ->required()
        ->check(CLI::ExistingFile);
    auto* s = sub->add_option("--seed", seed, "master seed (u64)");
    if (needs_seed) s->required();
    sub->add_option("--out", out_path, "output path")->required();
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* construct = app.add_subcommand("construct", "build an object and write it with its report");
  common(construct, true);
  auto* verify = app.add_subcommand("verify", "check an explicit point set or graph");
  common(verify, false);
  auto* experiment = app.add_subcommand("experiment", "run one or more experiments");
  common(experiment, true);
  experiment->add_flag("--timing", timing, "include wall-clock seconds in reports");
  auto* exponent = app.add_subcommand("exponent", "predicted incidence exponent for (d, alpha)");
  common(exponent, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const auto config = read_config(config_path);
    const auto items = [&] {
      std::vector<ffinc::Json> v;
      if (config.is_array()) {
        v.assign(config.begin(), config.end());
      } else {
        v.push_back(config);
      }
      return v;
    };

    if (construct->parsed()) {
      if (config.is_array()) throw ffinc::ValidationError("construct takes a single config object");
      const auto result = ffinc::run_construct(config, *seed);
      if (format == "csv") {
        write_file(out_path, ffinc::emit_reports_csv({result.report}));
      } else {
        write_file(out_path, ffinc::emit_json({{"object", result.artifact},
                                               {"report", ffinc::to_json(result.report)}}));
      }
      return result.report.passed() ? kPass : kFail;
    }

    std::vector<ffinc::ExperimentReport> reports;
    if (experiment->parsed()) {
      reports = ffinc::run_experiments(config, *seed, timing);
    } else if (verify->parsed()) {
      for (const auto& c : items()) reports.push_back(ffinc::run_verify(c));
    } else {
      for (const auto& c : items()) reports.push_back(ffinc::run_exponent(c));
    }
    if (seed) {
      for (auto& r : reports) {
        if (!experiment->parsed()) r.seed = *seed;
      }
    }
    write_file(out_path, render(reports, format));
    for (const auto& r : reports) {
      std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.experiment << "\n";
    }
    return status(reports);
  } catch (const ffinc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
