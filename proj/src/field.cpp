#include "ffinc/field.hpp"

#include <cstdlib>
#include <string>

namespace ffinc {

std::uint64_t max_grid() {
  if (const char* env = std::getenv("FFINC_MAX_GRID")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1'000'000;
}

std::uint64_t checked_pow(std::uint64_t p, std::size_t d) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (p != 0 && r > UINT64_MAX / p) return UINT64_MAX;
    r *= p;
  }
  return r;
}

void check_grid(std::uint64_t p, std::size_t d, const std::string& what) {
  const std::uint64_t size = checked_pow(p, d);
  if (size > max_grid()) {
    throw ScaleGuardError(what + ": grid of " + std::to_string(p) + "^" + std::to_string(d) +
                          " points exceeds limit " + std::to_string(max_grid()) +
                          " (set FFINC_MAX_GRID to raise it)");
  }
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t q = 3; q * q <= n; q += 2) {
    if (n % q == 0) return false;
  }
  return true;
}

namespace {

void check_prime_search(std::uint64_t n) {
  if (n < 2) throw PreconditionError("prime search requires n >= 2");
  if (2 * n > kMaxModulus) {
    throw OverflowError("prime search from " + std::to_string(n) +
                        " may exceed the supported modulus range");
  }
}

}  // namespace

std::uint64_t next_prime(std::uint64_t n) {
  check_prime_search(n);
  while (!is_prime(n)) ++n;
  return n;
}

std::uint64_t next_prime_3mod4(std::uint64_t n) {
  check_prime_search(n);
  while (n % 4 != 3 || !is_prime(n)) {
    ++n;
    if (n >= kMaxModulus) throw OverflowError("no prime = 3 mod 4 below 2^31");
  }
  return n;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p >= kMaxModulus) throw PreconditionError("modulus must be below 2^31");
  if (!is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
  p_ = static_cast<Residue>(p);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % p_;
  Residue base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw DivisionByZeroError();
  return pow(a, p_ - 2);
}

bool PrimeField::is_square(Residue a) const {
  if (a == 0 || p_ == 2) return true;
  return pow(a, (p_ - 1) / 2) == 1;
}

FieldElement PrimeField::element(std::int64_t v) const { return FieldElement(reduce(v), p_); }

void FieldElement::check_same(const FieldElement& o) const {
  if (o.p_ != p_) throw PreconditionError("field elements from different fields");
}

FieldElement FieldElement::operator+(FieldElement o) const {
  check_same(o);
  return {field().add(value_, o.value_), p_};
}
FieldElement FieldElement::operator-(FieldElement o) const {
  check_same(o);
  return {field().sub(value_, o.value_), p_};
}
FieldElement FieldElement::operator*(FieldElement o) const {
  check_same(o);
  return {field().mul(value_, o.value_), p_};
}
FieldElement FieldElement::operator/(FieldElement o) const {
  check_same(o);
  const PrimeField f = field();
  return {f.mul(value_, f.inv(o.value_)), p_};
}
FieldElement FieldElement::operator-() const { return {field().neg(value_), p_}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field().pow(value_, e), p_}; }

FieldElement field_inverse(FieldElement a) {
  return {a.field().inv(a.value()), a.modulus()};
}

bool is_quadratic_residue(FieldElement a) { return a.field().is_square(a.value()); }

QuadraticExtensionField::QuadraticExtensionField(std::uint64_t p) : base_(p) {
  if (p % 4 != 3) {
    throw PreconditionError("F_{p^2} with omega^2 = -1 requires p = 3 mod 4, got p = " +
                            std::to_string(p));
  }
}

ExtElement ext_sqrt_minus_one(const QuadraticExtensionField&) { return {0, 1}; }

}  // namespace ffinc
