#include <doctest.h>

#include <vector>

#include "ffinc/field.hpp"

using namespace ffinc;

TEST_CASE("field inverse") {
  CHECK(field_inverse(PrimeField(5).element(2)).value() == 3);
  CHECK(field_inverse(PrimeField(7).element(3)).value() == 5);
  for (std::uint64_t p : {2, 3, 13, 101}) CHECK(field_inverse(PrimeField(p).element(1)).value() == 1);
  CHECK_THROWS_AS(field_inverse(PrimeField(5).element(0)), DivisionByZeroError);
  CHECK_THROWS_AS(PrimeField(5).inv(0), DivisionByZeroError);
}

TEST_CASE("quadratic residues") {
  CHECK(is_quadratic_residue(PrimeField(5).element(4)));
  CHECK_FALSE(is_quadratic_residue(PrimeField(5).element(2)));
  CHECK_FALSE(is_quadratic_residue(PrimeField(7).element(-1)));
  CHECK(is_quadratic_residue(PrimeField(7).element(0)));
  // Against the set of squares.
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const PrimeField f(p);
    std::vector<bool> sq(p, false);
    for (Residue y = 0; y < p; ++y) sq[f.mul(y, y)] = true;
    for (Residue a = 0; a < p; ++a) CHECK(f.is_square(a) == sq[a]);
  }
}

TEST_CASE("prime hunting") {
  CHECK(next_prime(7) == 7);
  CHECK(next_prime(8) == 11);
  CHECK(next_prime(90) == 97);
  CHECK(next_prime(2) == 2);
  CHECK(next_prime_3mod4(7) == 7);
  CHECK(next_prime_3mod4(8) == 11);
  CHECK(next_prime_3mod4(12) == 19);
  CHECK_THROWS_AS(next_prime(kMaxModulus), OverflowError);
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2147483647));
}

TEST_CASE("construction rejects non-primes and huge moduli") {
  CHECK_THROWS_AS(PrimeField(4), PreconditionError);
  CHECK_THROWS_AS(PrimeField(1), PreconditionError);
  CHECK_THROWS(PrimeField(kMaxModulus + 11));
  CHECK_THROWS_AS(QuadraticExtensionField(5), PreconditionError);
}

TEST_CASE("element arithmetic stays canonical") {
  const PrimeField f(7);
  const auto a = f.element(-3);
  CHECK(a.value() == 4);
  CHECK((a + f.element(5)).value() == 2);
  CHECK((a - f.element(6)).value() == 5);
  CHECK((a * f.element(3)).value() == 5);
  CHECK((f.element(1) / a).value() == 2);
  CHECK((-a).value() == 3);
  CHECK_THROWS(a + PrimeField(5).element(1));
}

TEST_CASE("Fermat exhaustively for p <= 101") {
  for (std::uint64_t p = 2; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    const PrimeField f(p);
    for (Residue a = 1; a < p; ++a) REQUIRE(f.pow(a, p - 1) == 1);
  }
}

TEST_CASE("sqrt of -1 in the extension") {
  for (std::uint64_t p : {3, 7, 11}) {
    const QuadraticExtensionField e(p);
    const auto w = ext_sqrt_minus_one(e);
    CHECK(w == ExtElement{0, 1});
    CHECK(e.mul(w, w) == ExtElement{static_cast<Residue>(p - 1), 0});
    CHECK(e.add(e.mul(w, w), e.embed(1)) == ExtElement{0, 0});
  }
}

TEST_CASE("norm identity (a+bw)(a-bw) = a^2+b^2") {
  for (std::uint64_t p : {3, 7}) {
    const QuadraticExtensionField e(p);
    const auto& f = e.base();
    for (Residue a = 0; a < p; ++a) {
      for (Residue b = 0; b < p; ++b) {
        const ExtElement x{a, b};
        CHECK(e.mul(x, e.conj(x)) == ExtElement{f.add(f.mul(a, a), f.mul(b, b)), 0});
      }
    }
  }
}
