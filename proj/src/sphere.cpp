#include "ffinc/sphere.hpp"

#include <string>

namespace ffinc {

namespace {

void require_odd(const PrimeField& field) {
  if (field.p() == 2) {
    throw UnsupportedCharacteristicError("quadratic-form operations require odd characteristic");
  }
}

}  // namespace

bool UnitSphere::contains(const PrimeField& field, std::span<const Residue> x) const {
  const Vector diff = vec_sub(field, x, center);
  return form.norm2(field, diff) == 1;
}

std::vector<Vector> sphere_points(const PrimeField& field, const UnitSphere& sphere) {
  require_odd(field);
  const std::size_t d = sphere.center.size();
  if (sphere.form.dim() != d) throw PreconditionError("sphere center and form disagree on d");
  check_grid(field.p(), d, "sphere_points");
  std::vector<Vector> out;
  const std::uint64_t n = checked_pow(field.p(), d);
  for (std::uint64_t c = 0; c < n; ++c) {
    Vector x = decode(field, c, d);
    if (sphere.contains(field, x)) out.push_back(std::move(x));
  }
  return out;
}

std::optional<AffineFlat> sphere_intersection_flat(const PrimeField& field,
                                                   const std::vector<Vector>& centers,
                                                   const BilinearForm& form) {
  require_odd(field);
  if (centers.empty()) throw PreconditionError("sphere_intersection_flat needs a center");
  const std::size_t d = form.dim();
  const Vector& w1 = centers.front();
  const Residue n1 = form.norm2(field, w1);
  std::vector<Vector> normals;
  std::vector<Residue> rhs;
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const Vector diff = vec_sub(field, centers[i], w1);
    normals.push_back(form.as_dot_normal(field, vec_scale(field, 2, diff)));
    rhs.push_back(field.sub(form.norm2(field, centers[i]), n1));
  }
  return solve_affine(field, normals, rhs, d);
}

bool is_totally_isotropic(const PrimeField& field, const AffineFlat& flat,
                          const BilinearForm& form) {
  const auto& b = flat.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) {
      if (form.inner(field, b[i], b[j]) != 0) return false;
    }
  }
  return true;
}

bool is_totally_isotropic_by_points(const PrimeField& field, const AffineFlat& flat,
                                    const BilinearForm& form) {
  const auto pts = flat.points(field);
  for (const auto& x : pts) {
    for (const auto& y : pts) {
      if (form.norm2(field, vec_sub(field, x, y)) != 0) return false;
    }
  }
  return true;
}

bool flat_in_sphere_isotropy_check(const PrimeField& field, const AffineFlat& flat,
                                   const UnitSphere& sphere) {
  require_odd(field);
  const auto pts = flat.points(field);
  for (const auto& x : pts) {
    if (!sphere.contains(field, x)) throw PreconditionError("flat is not contained in the sphere");
  }
  for (const auto& x : pts) {
    const Vector xc = vec_sub(field, x, sphere.center);
    for (const auto& y : pts) {
      const Vector xy = vec_sub(field, x, y);
      if (sphere.form.norm2(field, xy) != 0) return false;
      if (sphere.form.inner(field, xc, xy) != 0) return false;
    }
  }
  return true;
}

std::optional<IsotropicPair> search_isotropic_unit_pair(const PrimeField& field, std::size_t d) {
  require_odd(field);
  if (d % 2 == 0) throw PreconditionError("search_isotropic_unit_pair requires odd d");
  check_grid(field.p(), d, "search_isotropic_unit_pair");
  const std::size_t k = (d - 1) / 2;
  const BilinearForm form = BilinearForm::for_dimension(d);
  const auto points = all_points(field, d);
  std::vector<const Vector*> unit;
  for (const auto& w : points) {
    if (form.norm2(field, w) == 1) unit.push_back(&w);
  }

  std::optional<IsotropicPair> found;
  for_each_subspace(field, d, k, [&](const Echelon& e) {
    if (found) return;
    const AffineFlat v = AffineFlat::from_directions(field, Vector(d, 0), e.rows);
    if (!is_totally_isotropic(field, v, form)) return;
    for (const Vector* w : unit) {
      bool orth = true;
      for (const auto& b : e.rows) {
        if (form.inner(field, *w, b) != 0) {
          orth = false;
          break;
        }
      }
      if (orth) {
        found = IsotropicPair{v, *w};
        return;
      }
    }
  });
  return found;
}

BipartiteGraph UnitDistanceGraph::double_cover() const {
  BipartiteGraph g(points.size(), points.size());
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    for (auto j : adjacency[i]) g.add_edge(i, j);
  }
  return g;
}

UnitDistanceGraph unit_distance_graph(const PrimeField& field, const std::vector<Vector>& points,
                                      const BilinearForm& form) {
  require_odd(field);
  UnitDistanceGraph g;
  g.points = points;
  g.adjacency.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (form.norm2(field, vec_sub(field, points[i], points[j])) == 1) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
        ++g.unit_distances;
      }
    }
  }
  return g;
}

ExtVector phi_map(const QuadraticExtensionField& ext, std::span<const Residue> x) {
  ExtVector out;
  out.reserve(x.size());
  for (Residue c : x) out.push_back(ext.embed(c));
  if (!out.empty()) out.back() = ext.mul(ext_sqrt_minus_one(ext), out.back());
  return out;
}

ExtElement ext_norm2(const QuadraticExtensionField& ext, const ExtVector& v) {
  ExtElement acc{0, 0};
  for (const auto& c : v) acc = ext.add(acc, ext.mul(c, c));
  return acc;
}

std::size_t ext_unit_distance_count(const QuadraticExtensionField& ext,
                                    const std::vector<ExtVector>& points) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      ExtVector diff(points[i].size());
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = ext.sub(points[i][c], points[j][c]);
      if (ext_norm2(ext, diff) == ExtElement{1, 0}) ++count;
    }
  }
  return count;
}

}  // namespace ffinc
