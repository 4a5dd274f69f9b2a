#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

#include "ffinc/error.hpp"

namespace ffinc {

/// Canonical residue in [0, p).
using Residue = std::uint32_t;

/// Largest supported modulus (exclusive).
inline constexpr std::uint64_t kMaxModulus = 1ULL << 31;

/// Deterministic trial division.
bool is_prime(std::uint64_t n);

/// Smallest prime >= n. Throws OverflowError when 2n would leave the
/// supported modulus range.
std::uint64_t next_prime(std::uint64_t n);

/// Smallest prime p >= n with p = 3 mod 4.
std::uint64_t next_prime_3mod4(std::uint64_t n);

class FieldElement;

/// The prime field F_p as an immutable arithmetic context.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  Residue p() const { return p_; }

  Residue reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
  }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(std::uint64_t{a} * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Multiplicative inverse; throws DivisionByZeroError for 0.
  Residue inv(Residue a) const;
  /// Euler's criterion; 0 counts as a square. Every element is a square for p = 2.
  bool is_square(Residue a) const;

  FieldElement element(std::int64_t v) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  friend class FieldElement;
  struct Trusted {};
  PrimeField(Residue p, Trusted) : p_(p) {}

  Residue p_;
};

/// A residue tagged with its modulus, for the value-level API.
class FieldElement {
 public:
  FieldElement(Residue value, Residue p) : value_(value), p_(p) {}

  Residue value() const { return value_; }
  Residue modulus() const { return p_; }
  PrimeField field() const { return PrimeField(p_, PrimeField::Trusted{}); }

  FieldElement operator+(FieldElement o) const;
  FieldElement operator-(FieldElement o) const;
  FieldElement operator*(FieldElement o) const;
  FieldElement operator/(FieldElement o) const;
  FieldElement operator-() const;
  FieldElement pow(std::uint64_t e) const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    return os << e.value_ << " (mod " << e.p_ << ")";
  }

 private:
  void check_same(const FieldElement& o) const;

  Residue value_;
  Residue p_;
};

FieldElement field_inverse(FieldElement a);
bool is_quadratic_residue(FieldElement a);

/// a + b*omega with omega^2 = -1.
struct ExtElement {
  Residue re = 0;
  Residue im = 0;
  friend auto operator<=>(const ExtElement&, const ExtElement&) = default;
};

/// F_{p^2} = F_p[omega]/(omega^2 + 1) for p = 3 mod 4.
class QuadraticExtensionField {
 public:
  explicit QuadraticExtensionField(std::uint64_t p);

  const PrimeField& base() const { return base_; }
  Residue p() const { return base_.p(); }

  ExtElement embed(Residue a) const { return {a, 0}; }
  ExtElement add(ExtElement a, ExtElement b) const {
    return {base_.add(a.re, b.re), base_.add(a.im, b.im)};
  }
  ExtElement sub(ExtElement a, ExtElement b) const {
    return {base_.sub(a.re, b.re), base_.sub(a.im, b.im)};
  }
  ExtElement mul(ExtElement a, ExtElement b) const {
    return {base_.sub(base_.mul(a.re, b.re), base_.mul(a.im, b.im)),
            base_.add(base_.mul(a.re, b.im), base_.mul(a.im, b.re))};
  }
  ExtElement conj(ExtElement a) const { return {a.re, base_.neg(a.im)}; }

 private:
  PrimeField base_;
};

/// A square root of -1 in F_{p^2}; this is omega = (0, 1).
ExtElement ext_sqrt_minus_one(const QuadraticExtensionField& field);

}  // namespace ffinc
