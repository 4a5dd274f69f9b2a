#pragma once

#include <optional>
#include <vector>

#include "ffinc/bigraph.hpp"
#include "ffinc/linalg.hpp"

namespace ffinc {

/// {x : <x - center, x - center>_form = 1}.
struct UnitSphere {
  Vector center;
  BilinearForm form;

  bool contains(const PrimeField& field, std::span<const Residue> x) const;
};

/// Every point of the sphere, by scanning F_p^d.
std::vector<Vector> sphere_points(const PrimeField& field, const UnitSphere& sphere);

/// Solution set of 2<x, w_i - w_1> = <w_i, w_i> - <w_1, w_1> for i >= 2, so that
/// S_1 ∩ ... ∩ S_k = S_1 ∩ U. Empty (nullopt) when the equations are inconsistent.
std::optional<AffineFlat> sphere_intersection_flat(const PrimeField& field,
                                                   const std::vector<Vector>& centers,
                                                   const BilinearForm& form);

/// Decided on the direction basis: the Gram matrix vanishes.
bool is_totally_isotropic(const PrimeField& field, const AffineFlat& flat,
                          const BilinearForm& form);

/// Same predicate by scanning all point pairs; slow, for testing.
bool is_totally_isotropic_by_points(const PrimeField& field, const AffineFlat& flat,
                                    const BilinearForm& form);

/// For a flat inside the sphere, checks <x-y, x-y> = 0 and <x-c, x-y> = 0 for
/// all flat points x, y. Throws PreconditionError if the flat leaves the sphere.
bool flat_in_sphere_isotropy_check(const PrimeField& field, const AffineFlat& flat,
                                   const UnitSphere& sphere);

struct IsotropicPair {
  AffineFlat flat;
  Vector w;
};

/// For odd d = 2k+1: a totally isotropic k-flat V and a norm-1 vector w
/// orthogonal to V under the dimension form, or nullopt. Both conditions only
/// involve directions, so linear subspaces are enumerated.
std::optional<IsotropicPair> search_isotropic_unit_pair(const PrimeField& field, std::size_t d);

struct UnitDistanceGraph {
  std::vector<Vector> points;
  std::vector<std::vector<std::size_t>> adjacency;
  std::size_t unit_distances = 0;

  /// Both sides are the point list; i ~ j on either side when at unit distance.
  BipartiteGraph double_cover() const;
};

UnitDistanceGraph unit_distance_graph(const PrimeField& field, const std::vector<Vector>& points,
                                      const BilinearForm& form);

using ExtVector = std::vector<ExtElement>;

/// (x_1, ..., x_{d-1}, omega * x_d), turning <.,.>_d for d = 1 mod 4 into the
/// standard form over F_{p^2}.
ExtVector phi_map(const QuadraticExtensionField& ext, std::span<const Residue> x);

/// Standard squared norm over F_{p^2}.
ExtElement ext_norm2(const QuadraticExtensionField& ext, const ExtVector& v);

/// Unordered pairs at standard unit distance over F_{p^2}.
std::size_t ext_unit_distance_count(const QuadraticExtensionField& ext,
                                    const std::vector<ExtVector>& points);

}  // namespace ffinc
