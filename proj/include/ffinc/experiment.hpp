#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffinc/report.hpp"

namespace ffinc {

/// Names accepted in the "experiment" field.
std::vector<std::string> experiment_names();
/// Kinds accepted by construct.
std::vector<std::string> construct_kinds();
/// Checks accepted by verify.
std::vector<std::string> verify_checks();

/// One flat config object with an "experiment" field. Missing, mistyped or
/// unknown fields raise ValidationError naming the field.
ExperimentReport run_experiment(const Json& config, std::uint64_t seed);

/// A single object runs with `seed`; the i-th object of an array runs with
/// derive_seed(seed, "instance", i).
std::vector<ExperimentReport> run_experiments(const Json& config, std::uint64_t seed,
                                              bool timing = false);

struct ConstructResult {
  ExperimentReport report;
  Json artifact;
};

/// Builds the object named by "kind" and returns it as JSON with its report.
ConstructResult run_construct(const Json& config, std::uint64_t seed);

/// Deterministic check named by "check" on an explicit object.
ExperimentReport run_verify(const Json& config);

/// {"d": int, "alpha": "p/q" | number}.
ExperimentReport run_exponent(const Json& config);

}  // namespace ffinc
