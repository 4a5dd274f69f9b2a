#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffinc/algebraic.hpp"
#include "ffinc/bigraph.hpp"
#include "ffinc/evasive.hpp"
#include "ffinc/linalg.hpp"
#include "ffinc/sphere.hpp"

namespace ffinc {

/// Points and hyperplanes of F_p^d with their incidence graph.
class Configuration {
 public:
  /// Throws PreconditionError on repeated points or hyperplanes or a dimension mismatch.
  Configuration(const PrimeField& field, std::size_t d, std::vector<Vector> points,
                std::vector<Hyperplane> hyperplanes);

  const PrimeField& field() const { return field_; }
  std::size_t dim() const { return d_; }
  const std::vector<Vector>& points() const { return points_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const BipartiteGraph& graph() const { return graph_; }
  std::size_t incidences() const { return graph_.edge_count(); }

 private:
  PrimeField field_;
  std::size_t d_;
  std::vector<Vector> points_;
  std::vector<Hyperplane> hyperplanes_;
  BipartiteGraph graph_;
};

/// Parameters, measurements and verdicts of one build.
struct ConstructionReport {
  std::map<std::string, std::int64_t> parameters;
  std::map<std::string, std::int64_t> measured;
  std::map<std::string, bool> verdicts;
  std::vector<std::string> notes;

  bool passed() const;
};

/// All hyperplanes <w, x> = b with w in `normals`, b in F_p.
std::vector<Hyperplane> hyperplanes_from_normals(const PrimeField& field,
                                                 const std::vector<Vector>& normals);

/// P is checked to be (d-t, s)-evasive and N0 (t-1, s)-evasive without the
/// origin. N keeps one point per line through the origin and H uses N as normals.
std::pair<Configuration, ConstructionReport> build_construction1(
    const PrimeField& field, std::size_t d, std::size_t t, std::size_t s,
    const std::vector<Vector>& evasive_P, const std::vector<Vector>& evasive_N0);

struct Construction1Ingredients {
  std::vector<Vector> points;
  std::vector<Vector> normals;
  std::size_t points_target = 0;
  std::size_t normals_target = 0;
};

/// Random search for both ingredients at their nominal sizes p^t and p^(d-t+1).
/// The largest verified sets found are returned even when short of target.
Construction1Ingredients search_construction1_ingredients(const PrimeField& field, std::size_t d,
                                                          std::size_t t, std::size_t s,
                                                          std::size_t attempts,
                                                          std::uint64_t seed);

/// Best of `trials` uniform (m, n) sub-configurations by incidence count.
Configuration subsample(const Configuration& config, std::size_t m, std::size_t n,
                        std::size_t trials, std::uint64_t seed);

/// Union of k translates of a (d-t, s)-evasive set against hyperplanes whose
/// normals come from translates of a (d-t+1, s)-evasive set inside x_d != 0.
std::pair<Configuration, ConstructionReport> build_construction2(
    const PrimeField& field, std::size_t d, std::size_t t, std::size_t k, std::size_t l,
    std::size_t s, std::uint64_t seed, std::size_t attempts = 20);

enum class BlowupMode { Hyperplanes, Points, Both };

/// Lifts a configuration by new coordinates. k is the number of copies of each
/// point and l of each hyperplane; Hyperplanes mode needs k = 1, Points mode l = 1.
/// Only q = p is supported, so k, l <= p. Incidences multiply by exactly k·l.
Configuration blowup(const Configuration& config, BlowupMode mode, std::size_t k, std::size_t l,
                     std::uint64_t q);

struct UnitDistanceBuild {
  std::size_t p = 0;
  std::size_t d = 0;
  std::size_t s_evasive = 0;
  std::size_t s_report = 0;
  std::vector<Vector> U;
  Vector shift;
  /// Unit distances of U ∪ (U + shift) before subsampling.
  std::size_t shifted_unit_distances = 0;
  std::size_t shifted_size = 0;
  std::vector<Vector> points;
  std::size_t unit_distances = 0;
  /// Images under phi when d = 1 mod 4, otherwise empty.
  std::vector<ExtVector> mapped;
  std::size_t mapped_unit_distances = 0;
  bool phi_preserves = true;
  bool kss_free = false;
};

/// The shifted evasive-set construction, subsampled to n points.
UnitDistanceBuild build_unit_distance_pointset(std::size_t n, std::size_t d,
                                               std::size_t shift_trials, std::uint64_t seed);

/// Unit distances of U ∪ (U + x), counted through the unit-sphere offsets.
std::size_t shifted_unit_distances(const PrimeField& field, const std::vector<Vector>& U,
                                   const Vector& x, const BilinearForm& form);

struct AlgebraicGraphBuild {
  MultivariatePolynomial f;
  BipartiteGraph graph;
  std::size_t attempts = 0;
  std::size_t edge_floor_numerator = 0;  // edges must be >= this / 2
};

/// f(x, y) = 0 over F_p^{d1} x F_p^{d2} with a random f of degree <= (d1+d2)^2,
/// resampled until K_{s,s}-free with at least p^(d1+d2-1)/2 edges.
AlgebraicGraphBuild build_algebraic_graph(std::size_t d1, std::size_t d2, std::size_t s,
                                          std::uint64_t p, std::size_t max_retries,
                                          std::uint64_t seed, bool check_preconditions = true);

struct PointVarietyBuild {
  AlgebraicGraphBuild base;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::vector<Vector> points{};
  std::vector<Vector> parameters{};  // the q defining each zero set V(f_q)
  std::vector<std::vector<Vector>> varieties{};
  std::size_t incidences = 0;
  std::size_t subgraph_edges = 0;
  bool kss_free = false;
};

/// Points of F_p^D against zero sets of f(., q) for q in F_p^{ceil(alpha D)}.
/// Keeps the best of `trials` (m, floor(m^alpha)) samples.
PointVarietyBuild build_point_variety_config(std::size_t D, double alpha, std::size_t m,
                                             std::uint64_t p, std::size_t max_retries,
                                             std::uint64_t seed, std::size_t trials = 50);

}  // namespace ffinc
