#include <doctest.h>

#include <set>

#include "ffinc/constructions.hpp"
#include "ffinc/rng.hpp"

using namespace ffinc;

namespace {

Configuration cap_with_parallel_lines() {
  const PrimeField f3(3);
  const std::vector<Vector> cap = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  return build_construction1(f3, 2, 2, 3, cap, {{1, 0}}).first;
}

}  // namespace

TEST_CASE("configuration validation") {
  const PrimeField f3(3);
  CHECK_THROWS_AS(Configuration(f3, 2, {{0, 0}, {0, 0}}, {}), PreconditionError);
  const auto h = Hyperplane::make(f3, {1, 0}, 1);
  CHECK_THROWS_AS(Configuration(f3, 2, {{0, 0}}, {h, h}), PreconditionError);
  CHECK_THROWS_AS(Configuration(f3, 2, {{0, 0, 0}}, {}), PreconditionError);
}

TEST_CASE("construction 1 small example") {
  const auto c = cap_with_parallel_lines();
  CHECK(c.hyperplanes().size() == 3);
  CHECK(c.incidences() == 4);
  const PrimeField f3(3);
  const auto [empty, rep] = build_construction1(f3, 2, 2, 3, {{0, 0}, {1, 0}}, {});
  CHECK(empty.hyperplanes().empty());
  CHECK(empty.incidences() == 0);
  CHECK(rep.passed());
}

TEST_CASE("construction 1 preconditions") {
  const PrimeField f3(3);
  const std::vector<Vector> cap = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(build_construction1(f3, 2, 2, 3, cap, {{0, 0}}), PreconditionError);
  CHECK_THROWS_AS(build_construction1(f3, 2, 1, 3, cap, {{1, 0}}), PreconditionError);
  // N0 = three collinear points is not (1, 3)-evasive.
  CHECK_THROWS_AS(build_construction1(f3, 2, 2, 3, cap, {{1, 0}, {1, 1}, {1, 2}}), PreconditionError);
}

TEST_CASE("construction 1 exactness and K_{s,s}-freeness") {
  for (std::uint64_t p : {3, 5}) {
    const PrimeField f(p);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto ing = search_construction1_ingredients(f, 3, 2, 3, 10, seed);
      auto [c, rep] = build_construction1(f, 3, 2, 3, ing.points, ing.normals);
      CHECK(c.incidences() * p == c.points().size() * c.hyperplanes().size());
      CHECK(rep.verdicts.at("exact_incidence_law"));
      CHECK(rep.verdicts.at("kss_free"));
      CHECK_FALSE(contains_kss(c.graph(), 3).has_value());
      if (c.points().size() <= 64 && c.hyperplanes().size() <= 64) {
        CHECK_FALSE(find_pattern(c.graph(), make_pi_d(3)).has_value());
      }
      // Each point on exactly |N| hyperplanes.
      for (std::size_t i = 0; i < c.points().size(); ++i) {
        CHECK(c.graph().neighbors_a(i).count() * p == c.hyperplanes().size());
      }
    }
  }
}

TEST_CASE("subsampling") {
  const auto c = cap_with_parallel_lines();
  const auto same = subsample(c, 4, 3, 5, 1);
  CHECK(same.incidences() == 4);
  CHECK(subsample(c, 0, 3, 5, 1).incidences() == 0);
  CHECK(subsample(c, 2, 2, 50, 1).incidences() >= 2);
  CHECK_THROWS_AS(subsample(c, 5, 1, 5, 1), PreconditionError);
  CHECK(subsample(c, 2, 2, 10, 9).points() == subsample(c, 2, 2, 10, 9).points());
}

TEST_CASE("construction 2 at d = 3, t = 2") {
  const PrimeField f3(3);
  auto [c, rep] = build_construction2(f3, 3, 2, 2, 1, 4, 5);
  CHECK(rep.verdicts.at("exact_incidence_law"));
  CHECK(rep.verdicts.at("regularity"));
  CHECK(rep.verdicts.at("property_ii"));
  CHECK(rep.verdicts.at("point_count_range"));
  CHECK(rep.passed());
  CHECK_THROWS_AS(build_construction2(f3, 3, 3, 1, 1, 4, 1), PreconditionError);
  CHECK_THROWS_AS(build_construction2(f3, 3, 2, 4, 1, 4, 1), PreconditionError);
}

TEST_CASE("construction 2 property (iii) at d = 4, t = 3") {
  const PrimeField f3(3);
  auto [c, rep] = build_construction2(f3, 4, 3, 1, 1, 4, 2);
  CHECK(rep.measured.contains("property_iii_max_b1"));
  CHECK(rep.passed());
}

TEST_CASE("blow-ups") {
  const auto base = cap_with_parallel_lines();
  const auto h = blowup(base, BlowupMode::Hyperplanes, 1, 1, 3);
  CHECK(h.incidences() == base.incidences());
  CHECK(h.dim() == 3);
  for (auto [mode, k, l] : std::vector<std::tuple<BlowupMode, std::size_t, std::size_t>>{
           {BlowupMode::Hyperplanes, 1, 3}, {BlowupMode::Points, 2, 1}, {BlowupMode::Both, 2, 2},
           {BlowupMode::Both, 3, 2}}) {
    const auto big = blowup(base, mode, k, l, 3);
    CHECK(big.incidences() == k * l * base.incidences());
    CHECK(rs(big.graph()) <= k * l * rs(base.graph()));
  }
  CHECK_THROWS_AS(blowup(base, BlowupMode::Both, 2, 2, 9), PreconditionError);
  CHECK_THROWS_AS(blowup(base, BlowupMode::Hyperplanes, 2, 1, 3), PreconditionError);
  CHECK_THROWS_AS(blowup(base, BlowupMode::Points, 1, 2, 3), PreconditionError);
  CHECK_THROWS_AS(blowup(base, BlowupMode::Both, 4, 1, 3), PreconditionError);
}

TEST_CASE("shifted unit distances") {
  const PrimeField f3(3);
  const auto form = BilinearForm::for_dimension(2);
  const auto U = all_points(f3, 2);
  // x = 0 gives U itself.
  CHECK(shifted_unit_distances(f3, U, {0, 0}, form) == unit_distance_graph(f3, U, form).unit_distances);
  const std::vector<Vector> two = {{0, 0}};
  CHECK(shifted_unit_distances(f3, two, {1, 0}, form) == 1);
}

TEST_CASE("unit distance pipeline") {
  const auto b = build_unit_distance_pointset(200, 2, 10, 1);
  CHECK(b.p == 19);
  CHECK(b.U.size() == 361);
  CHECK(b.points.size() == 200);
  CHECK(4 * b.p * b.shifted_unit_distances >= b.U.size() * b.U.size());
  CHECK(b.kss_free);
  const auto c = build_unit_distance_pointset(81, 5, 5, 2);
  CHECK(c.p == 3);
  CHECK(c.phi_preserves);
  CHECK(c.mapped.size() == c.points.size());
  CHECK(c.mapped_unit_distances == c.unit_distances);
}

TEST_CASE("algebraic graph builder") {
  const auto b = build_algebraic_graph(1, 1, 2, 17, 20, 3);
  CHECK(b.graph.a_size() == 17);
  CHECK(b.graph.edge_count() >= 9);
  CHECK_FALSE(contains_kss(b.graph, 2).has_value());
  CHECK(b.attempts >= 1);
  CHECK_THROWS_AS(build_algebraic_graph(1, 1, 3, 17, 20, 3), PreconditionError);
  CHECK_THROWS_AS(build_algebraic_graph(1, 1, 2, 17, 0, 3), RetryExhaustedError);
  // Grid convention: x - y gives the diagonal.
  const PrimeField f5(5);
  MultivariatePolynomial f(f5, 2, 4);
  f.set({1, 0}, 1);
  f.set({0, 1}, -1);
  const auto grid = evaluate_grid(f);
  std::size_t zeros = 0;
  for (std::uint64_t c = 0; c < grid.size(); ++c) {
    if (grid[c] == 0) {
      CHECK(c / 5 == c % 5);
      ++zeros;
    }
  }
  CHECK(zeros == 5);
}

TEST_CASE("point-variety configuration") {
  const auto b = build_point_variety_config(2, 1.0, 17, 17, 20, 4);
  CHECK(b.d2 == 2);
  CHECK(b.points.size() == 17);
  CHECK(b.varieties.size() == 17);
  CHECK(b.incidences == b.subgraph_edges);
  CHECK(b.kss_free);
  CHECK(2 * 17 * b.incidences >= 17 * 17);
}
