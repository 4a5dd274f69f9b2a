#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace ffinc {

using Rational = boost::rational<std::int64_t>;

/// alpha_t = t/(d+2-t).
Rational alpha_t(std::int64_t d, std::int64_t t);
/// beta_t = t/(d+1-t).
Rational beta_t(std::int64_t d, std::int64_t t);

enum class RegimeKind { Low, Rising, Falling, High };

/// Where alpha = log n / log m sits, and the bound I <= C m^{e_m} n^{e_n} there.
struct ExponentRegime {
  std::int64_t d = 0;
  Rational alpha;
  RegimeKind kind = RegimeKind::Low;
  /// Rising: alpha in [beta_{t-1}, alpha_t]. Falling: [alpha_t, beta_t]. Unused otherwise.
  std::int64_t t = 0;
  Rational m_exponent;
  Rational n_exponent;

  /// "alpha<=beta_1", "[beta_1,alpha_2]", "[alpha_2,beta_2]", ..., "alpha>=beta_d".
  std::string tag() const;
  /// Exponent gamma with m^{e_m} n^{e_n} = (mn)^gamma when n = m^alpha.
  Rational combined() const;
};

/// Shared endpoints go to the first matching regime in the order Low,
/// [beta_1, alpha_2], [alpha_2, beta_2], [beta_2, alpha_3], ..., High.
ExponentRegime predicted_exponent(std::int64_t d, Rational alpha);

/// Every regime whose closed interval contains alpha.
std::vector<ExponentRegime> matching_regimes(std::int64_t d, Rational alpha);

/// "3/2", "2" or an exact decimal like "0.75". Throws ValidationError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

}  // namespace ffinc
