#include <doctest.h>

#include <set>

#include "ffinc/rng.hpp"
#include "ffinc/sphere.hpp"

using namespace ffinc;

TEST_CASE("sphere points") {
  const PrimeField f5(5), f3(3);
  const auto form = BilinearForm::for_dimension(2);
  const auto s5 = sphere_points(f5, {{0, 0}, form});
  CHECK(std::set<Vector>(s5.begin(), s5.end()) == std::set<Vector>{{1, 0}, {4, 0}, {0, 1}, {0, 4}});
  const auto s3 = sphere_points(f3, {{0, 0}, form});
  CHECK(std::set<Vector>(s3.begin(), s3.end()) == std::set<Vector>{{1, 0}, {2, 0}, {0, 1}, {0, 2}});
  const Vector c = {2, 3};
  std::set<Vector> moved;
  for (const auto& x : s5) moved.insert(vec_add(f5, x, c));
  const auto sc = sphere_points(f5, {c, form});
  CHECK(std::set<Vector>(sc.begin(), sc.end()) == moved);
  CHECK_THROWS_AS(sphere_points(PrimeField(2), {{0, 0}, form}), UnsupportedCharacteristicError);
}

TEST_CASE("sphere intersection flat") {
  const PrimeField f5(5);
  const auto form = BilinearForm::for_dimension(2);
  const auto whole = sphere_intersection_flat(f5, {{1, 1}}, form);
  REQUIRE(whole.has_value());
  CHECK(whole->dim() == 2);
  const auto U = sphere_intersection_flat(f5, {{0, 0}, {1, 0}}, form);
  REQUIRE(U.has_value());
  CHECK(U->dim() == 1);
  for (const auto& x : U->points(f5)) CHECK(x[0] == 3);
  for (const auto& x : all_points(f5, 2)) {
    CHECK_FALSE((UnitSphere{{0, 0}, form}.contains(f5, x) && UnitSphere{{1, 0}, form}.contains(f5, x)));
  }
}

TEST_CASE("three-center families in F_7^2") {
  const PrimeField f7(7);
  const auto form = BilinearForm::for_dimension(2);
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vector> centers;
    for (auto c : rng.sample_indices(49, 3)) centers.push_back(decode(f7, c, 2));
    const auto U = sphere_intersection_flat(f7, centers, form);
    for (const auto& x : all_points(f7, 2)) {
      bool all = true;
      for (const auto& w : centers) all = all && UnitSphere{w, form}.contains(f7, x);
      CHECK(all == (UnitSphere{centers[0], form}.contains(f7, x) && U && U->contains(f7, x)));
    }
  }
}

TEST_CASE("isotropy") {
  const PrimeField f5(5);
  const auto form = BilinearForm::for_dimension(2);
  CHECK(is_totally_isotropic(f5, AffineFlat::point({1, 2}), form));
  const std::vector<Vector> iso = {{1, 2}}, e1 = {{1, 0}};
  const auto L = AffineFlat::from_directions(f5, {0, 0}, iso);
  CHECK(is_totally_isotropic(f5, L, form));
  CHECK(is_totally_isotropic_by_points(f5, L, form));
  const auto M = AffineFlat::from_directions(f5, {0, 0}, e1);
  CHECK_FALSE(is_totally_isotropic(f5, M, form));
  CHECK_FALSE(is_totally_isotropic_by_points(f5, M, form));
}

TEST_CASE("isotropy by directions agrees with the point scan") {
  for (std::uint64_t p : {3, 5}) {
    const PrimeField f(p);
    const auto form = BilinearForm::for_dimension(3);
    for (std::size_t k = 0; k <= 2; ++k) {
      for_each_subspace(f, 3, k, [&](const Echelon& e) {
        const auto fl = AffineFlat::from_directions(f, Vector(3, 0), e.rows);
        CHECK(is_totally_isotropic(f, fl, form) == is_totally_isotropic_by_points(f, fl, form));
      });
    }
  }
}

TEST_CASE("flats inside spheres") {
  const PrimeField f5(5);
  const auto form = BilinearForm::for_dimension(3);
  const UnitSphere s{{0, 0, 0}, form};
  CHECK(flat_in_sphere_isotropy_check(f5, AffineFlat::point({1, 0, 0}), s));
  const std::vector<Vector> e1 = {{1, 0, 0}};
  CHECK_THROWS_AS(flat_in_sphere_isotropy_check(f5, AffineFlat::from_directions(f5, {0, 0, 0}, e1), s),
                  PreconditionError);
  std::size_t lines = 0;
  for (std::uint64_t p : {3, 5}) {
    const PrimeField f(p);
    const UnitSphere sp{{0, 0, 0}, form};
    for_each_flat(f, 3, 1, [&](const AffineFlat& fl) {
      for (const auto& x : fl.points(f)) {
        if (!sp.contains(f, x)) return;
      }
      ++lines;
      CHECK(flat_in_sphere_isotropy_check(f, fl, sp));
    });
  }
  CHECK(lines > 0);
}

TEST_CASE("no isotropic unit pairs for p = 3 mod 4") {
  CHECK_FALSE(search_isotropic_unit_pair(PrimeField(3), 3).has_value());
  CHECK_FALSE(search_isotropic_unit_pair(PrimeField(7), 3).has_value());
  CHECK_THROWS(search_isotropic_unit_pair(PrimeField(3), 4));
  // p = 5: the hypothesis fails, the outcome is just recorded.
  const auto r5 = search_isotropic_unit_pair(PrimeField(5), 3);
  if (r5) {
    const PrimeField f5(5);
    const auto form = BilinearForm::for_dimension(3);
    CHECK(form.norm2(f5, r5->w) == 1);
    CHECK(is_totally_isotropic(f5, r5->flat, form));
  }
}

TEST_CASE("unit distance graphs") {
  const PrimeField f3(3);
  const auto form = BilinearForm::for_dimension(2);
  CHECK(unit_distance_graph(f3, {{0, 0}, {1, 0}}, form).unit_distances == 1);
  const auto all = unit_distance_graph(f3, all_points(f3, 2), form);
  CHECK(all.unit_distances == 18);
  CHECK(all.double_cover().edge_count() == 36);
  CHECK(unit_distance_graph(f3, {}, form).unit_distances == 0);

  const PrimeField f7(7);
  Rng rng(2);
  std::vector<Vector> pts;
  for (auto c : rng.sample_indices(49, 20)) pts.push_back(decode(f7, c, 2));
  const auto base = unit_distance_graph(f7, pts, form).unit_distances;
  for (auto& x : pts) x = vec_add(f7, x, Vector{3, 5});
  CHECK(unit_distance_graph(f7, pts, form).unit_distances == base);
}

TEST_CASE("phi map preserves unit distances at d = 5, p = 3") {
  const PrimeField f3(3);
  const QuadraticExtensionField ext(3);
  const auto form = BilinearForm::for_dimension(5);
  Rng rng(8);
  std::vector<Vector> pts;
  for (auto c : rng.sample_indices(243, 60)) pts.push_back(decode(f3, c, 5));
  std::vector<ExtVector> mapped;
  for (const auto& x : pts) mapped.push_back(phi_map(ext, x));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ExtVector diff(5);
      for (std::size_t c = 0; c < 5; ++c) diff[c] = ext.sub(mapped[i][c], mapped[j][c]);
      CHECK((form.norm2(f3, vec_sub(f3, pts[i], pts[j])) == 1) == (ext_norm2(ext, diff) == ExtElement{1, 0}));
    }
  }
  CHECK(ext_unit_distance_count(ext, mapped) == unit_distance_graph(f3, pts, form).unit_distances);
}
