#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ffinc/field.hpp"

namespace ffinc {

/// A point or direction of F_p^d as canonical residues.
using Vector = std::vector<Residue>;

/// Base-p code of a vector with coordinate 0 most significant, so that code
/// order equals lexicographic order.
std::uint64_t encode(const PrimeField& field, std::span<const Residue> v);
Vector decode(const PrimeField& field, std::uint64_t code, std::size_t d);

Vector vec_add(const PrimeField& field, std::span<const Residue> a, std::span<const Residue> b);
Vector vec_sub(const PrimeField& field, std::span<const Residue> a, std::span<const Residue> b);
Vector vec_scale(const PrimeField& field, Residue c, std::span<const Residue> a);
Residue dot(const PrimeField& field, std::span<const Residue> a, std::span<const Residue> b);
bool is_zero(std::span<const Residue> v);

/// Reduced row echelon form of a list of rows; only nonzero rows are kept.
struct Echelon {
  std::size_t width = 0;
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return rows.size(); }
  /// Canonical representative of v modulo the row space (zero on every pivot column).
  Vector reduce(const PrimeField& field, Vector v) const;
  bool spans(const PrimeField& field, std::span<const Residue> v) const;
};

Echelon row_reduce(const PrimeField& field, std::span<const Vector> rows, std::size_t width);

/// Rank of the span of rows over F_p. Throws PreconditionError on ragged input.
std::size_t rank(const PrimeField& field, std::span<const Vector> rows);

/// An affine flat base + span(basis), stored canonically: the basis is the
/// reduced row echelon form of the direction space and the base point is
/// reduced modulo it. Equal flats therefore compare equal structurally.
class AffineFlat {
 public:
  AffineFlat() = default;
  static AffineFlat from_directions(const PrimeField& field, Vector base,
                                    std::span<const Vector> directions);
  static AffineFlat whole_space(std::size_t d);
  static AffineFlat point(Vector p);

  std::size_t ambient_dim() const { return base_.size(); }
  std::size_t dim() const { return dirs_.rank(); }
  const Vector& base() const { return base_; }
  const std::vector<Vector>& basis() const { return dirs_.rows; }
  const Echelon& directions() const { return dirs_; }

  bool contains(const PrimeField& field, std::span<const Residue> x) const;
  /// The p^dim points of the flat, in a fixed order.
  std::vector<Vector> points(const PrimeField& field) const;

  friend bool operator==(const AffineFlat& a, const AffineFlat& b) {
    return a.base_ == b.base_ && a.dirs_.rows == b.dirs_.rows;
  }
  friend auto operator<=>(const AffineFlat& a, const AffineFlat& b) {
    if (auto c = a.base_ <=> b.base_; c != 0) return c;
    return a.dirs_.rows <=> b.dirs_.rows;
  }

 private:
  Vector base_;
  Echelon dirs_;
};

/// Smallest affine flat containing every point. Throws on empty input.
AffineFlat affine_hull(const PrimeField& field, std::span<const Vector> points);

/// Solution set of normals[i] . x = rhs[i], or nullopt when inconsistent.
std::optional<AffineFlat> solve_affine(const PrimeField& field, std::span<const Vector> normals,
                                       std::span<const Residue> rhs, std::size_t d);

/// {x : <normal, x> = offset}, scaled so the first nonzero normal entry is 1.
class Hyperplane {
 public:
  Hyperplane() = default;
  static Hyperplane make(const PrimeField& field, Vector normal, Residue offset);

  const Vector& normal() const { return normal_; }
  Residue offset() const { return offset_; }
  std::size_t ambient_dim() const { return normal_.size(); }

  bool contains(const PrimeField& field, std::span<const Residue> x) const {
    return dot(field, normal_, x) == offset_;
  }
  bool contains_flat(const PrimeField& field, const AffineFlat& flat) const;
  AffineFlat as_flat(const PrimeField& field) const;

  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;

 private:
  Vector normal_;
  Residue offset_ = 0;
};

/// Diagonal form sum_i signs_i u_i v_i.
class BilinearForm {
 public:
  /// The dimension-dependent family: the dot product, except that the last
  /// coordinate carries sign -1 when d = 1 mod 4.
  static BilinearForm for_dimension(std::size_t d);
  static BilinearForm standard(std::size_t d);

  std::size_t dim() const { return signs_.size(); }
  const std::vector<int>& signs() const { return signs_; }

  Residue inner(const PrimeField& field, std::span<const Residue> u,
                std::span<const Residue> v) const;
  Residue norm2(const PrimeField& field, std::span<const Residue> u) const {
    return inner(field, u, u);
  }
  /// w such that inner(x, v) = dot(x, w) for all x.
  Vector as_dot_normal(const PrimeField& field, std::span<const Residue> v) const;

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  explicit BilinearForm(std::vector<int> signs) : signs_(std::move(signs)) {}
  std::vector<int> signs_;
};

Residue form_inner(const PrimeField& field, const BilinearForm& form, std::span<const Residue> u,
                   std::span<const Residue> v);

/// Every direction of U is form-orthogonal to every direction of V.
bool flats_orthogonal(const PrimeField& field, const AffineFlat& u, const AffineFlat& v,
                      const BilinearForm& form);

/// Number of k-dimensional linear subspaces of F_p^d.
std::uint64_t gaussian_binomial(std::size_t d, std::size_t k, std::uint64_t p);

/// Visits every k-dimensional linear subspace of F_p^d exactly once, as a
/// reduced row echelon basis.
void for_each_subspace(const PrimeField& field, std::size_t d, std::size_t k,
                       const std::function<void(const Echelon&)>& visit);

/// Visits every k-dimensional affine flat of F_p^d exactly once.
void for_each_flat(const PrimeField& field, std::size_t d, std::size_t k,
                   const std::function<void(const AffineFlat&)>& visit);

std::vector<AffineFlat> enumerate_flats(const PrimeField& field, std::size_t d, std::size_t k);

/// Every point of F_p^d in code order.
std::vector<Vector> all_points(const PrimeField& field, std::size_t d);

}  // namespace ffinc
