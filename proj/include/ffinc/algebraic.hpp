#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ffinc/bigraph.hpp"
#include "ffinc/linalg.hpp"

namespace ffinc {

using Exponent = std::vector<unsigned>;

/// All exponent tuples in D variables with total degree <= delta, sorted
/// lexicographically. Shared and cached.
std::shared_ptr<const std::vector<Exponent>> monomial_basis(std::size_t D, std::size_t delta);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Dense polynomial over F_p in D variables with total degree <= delta,
/// one coefficient per monomial of the basis.
class MultivariatePolynomial {
 public:
  MultivariatePolynomial(const PrimeField& field, std::size_t D, std::size_t delta);

  const PrimeField& field() const { return field_; }
  std::size_t num_vars() const { return D_; }
  std::size_t max_degree() const { return delta_; }
  const std::vector<Exponent>& monomials() const { return *basis_; }
  const std::vector<Residue>& coefficients() const { return coeffs_; }

  Residue coeff(const Exponent& e) const;
  /// Throws PreconditionError when e exceeds the degree bound.
  void set(const Exponent& e, std::int64_t c);
  void set_coefficients(std::vector<Residue> c);

  Residue evaluate(std::span<const Residue> x) const;

  /// Substitutes x_1 = a, leaving a polynomial in the remaining D-1 variables.
  MultivariatePolynomial substitute_first(Residue a) const;

  friend bool operator==(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
    return a.field_ == b.field_ && a.D_ == b.D_ && a.delta_ == b.delta_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::size_t index_of(const Exponent& e) const;

  PrimeField field_;
  std::size_t D_;
  std::size_t delta_;
  std::shared_ptr<const std::vector<Exponent>> basis_;
  std::vector<Residue> coeffs_;
};

/// Independent uniform coefficients.
MultivariatePolynomial random_polynomial(const PrimeField& field, std::size_t D,
                                         std::size_t delta, std::uint64_t seed);

/// f at every point of F_p^D, indexed by the point's code (see encode).
std::vector<Residue> evaluate_grid(const MultivariatePolynomial& f);

std::size_t count_zeros(const MultivariatePolynomial& f);

struct PatternSet {
  std::size_t count = 0;
  /// Bit i set when member i vanishes (or contains the point); sorted.
  std::vector<std::uint64_t> patterns;
};

/// Distinct zero patterns {i : f_i(x) = 0} over x in F_p^D. At most 64 polynomials.
PatternSet zero_patterns(const PrimeField& field, std::size_t D,
                         const std::vector<MultivariatePolynomial>& fs);

/// Distinct containment patterns {i : x in V_i} over x in F_p^d.
PatternSet containment_patterns(const PrimeField& field, std::size_t d,
                                const std::vector<std::vector<Vector>>& varieties);

/// Boolean combination of atoms [f_i = 0].
class BooleanFormula {
 public:
  static BooleanFormula atom(std::size_t i);
  static BooleanFormula negation(BooleanFormula f);
  static BooleanFormula conjunction(BooleanFormula a, BooleanFormula b);
  static BooleanFormula disjunction(BooleanFormula a, BooleanFormula b);

  bool evaluate(const std::vector<bool>& atoms) const;
  /// Largest atom index used.
  std::size_t max_atom() const;

 private:
  enum class Kind { Atom, Not, And, Or };
  Kind kind_ = Kind::Atom;
  std::size_t index_ = 0;
  std::vector<BooleanFormula> children_;
};

/// x in P, y in Q adjacent iff phi([f_1(x,y)=0], ..., [f_t(x,y)=0]). Each f_i
/// takes the d1 coordinates of x followed by the d2 coordinates of y.
BipartiteGraph algebraic_adjacency(const std::vector<MultivariatePolynomial>& fs,
                                   const BooleanFormula& phi, const std::vector<Vector>& P,
                                   const std::vector<Vector>& Q);

struct ShatterResult {
  std::size_t value = 0;
  /// False when the ground set exceeds 20 and the value is a sampled lower bound.
  bool exact = true;
};

/// max over k-subsets A of the ground set of |{A ∩ B : B in family}|.
/// Sets are bitsets over a common ground set.
ShatterResult shatter_function(const std::vector<Bitset>& family, std::size_t ground_size,
                               std::size_t k, std::uint64_t seed = 0,
                               std::size_t samples = 2000);

}  // namespace ffinc
