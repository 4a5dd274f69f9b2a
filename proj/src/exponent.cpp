#include "ffinc/exponent.hpp"

#include <charconv>

#include "ffinc/error.hpp"

namespace ffinc {

Rational alpha_t(std::int64_t d, std::int64_t t) { return Rational(t, d + 2 - t); }
Rational beta_t(std::int64_t d, std::int64_t t) { return Rational(t, d + 1 - t); }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string ExponentRegime::tag() const {
  switch (kind) {
    case RegimeKind::Low:
      return "alpha<=beta_1";
    case RegimeKind::Rising:
      return "[beta_" + std::to_string(t - 1) + ",alpha_" + std::to_string(t) + "]";
    case RegimeKind::Falling:
      return "[alpha_" + std::to_string(t) + ",beta_" + std::to_string(t) + "]";
    case RegimeKind::High:
      return "alpha>=beta_" + std::to_string(d);
  }
  return {};
}

Rational ExponentRegime::combined() const {
  return (m_exponent + alpha * n_exponent) / (Rational(1) + alpha);
}

namespace {

void check(std::int64_t d, const Rational& alpha) {
  if (d < 2) throw PreconditionError("exponent calculator requires d >= 2");
  if (alpha <= 0) throw PreconditionError("exponent calculator requires alpha > 0");
}

ExponentRegime make(std::int64_t d, Rational alpha, RegimeKind kind, std::int64_t t) {
  ExponentRegime r{d, alpha, kind, t, 0, 0};
  switch (kind) {
    case RegimeKind::Low:
      r.m_exponent = 1;
      break;
    case RegimeKind::Rising:
      r.m_exponent = Rational(1) - Rational(1, d + 2 - t);
      r.n_exponent = 1;
      break;
    case RegimeKind::Falling:
      r.m_exponent = 1;
      r.n_exponent = Rational(1) - Rational(1, t);
      break;
    case RegimeKind::High:
      r.n_exponent = 1;
      break;
  }
  return r;
}

}  // namespace

std::vector<ExponentRegime> matching_regimes(std::int64_t d, Rational alpha) {
  check(d, alpha);
  std::vector<ExponentRegime> out;
  if (alpha <= beta_t(d, 1)) out.push_back(make(d, alpha, RegimeKind::Low, 0));
  for (std::int64_t t = 2; t <= d; ++t) {
    if (beta_t(d, t - 1) <= alpha && alpha <= alpha_t(d, t)) {
      out.push_back(make(d, alpha, RegimeKind::Rising, t));
    }
    if (alpha_t(d, t) <= alpha && alpha <= beta_t(d, t)) {
      out.push_back(make(d, alpha, RegimeKind::Falling, t));
    }
  }
  if (alpha >= beta_t(d, d)) out.push_back(make(d, alpha, RegimeKind::High, 0));
  return out;
}

ExponentRegime predicted_exponent(std::int64_t d, Rational alpha) {
  return matching_regimes(d, alpha).front();
}

Rational parse_rational(std::string_view text) {
  const auto bad = [&] { return ValidationError("not a rational number: '" + std::string(text) + "'"); };
  const auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw bad();
    return v;
  };
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto den = parse_int(text.substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto frac = text.substr(dot + 1);
      if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
        throw bad();
      }
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const auto whole_text = text.substr(0, dot);
      const bool negative = !whole_text.empty() && whole_text.front() == '-';
      const std::int64_t whole =
          whole_text.empty() || whole_text == "-" ? 0 : parse_int(whole_text);
      const std::int64_t part = frac.empty() ? 0 : parse_int(frac);
      const std::int64_t sign = negative ? -1 : 1;
      return Rational(whole * scale + sign * part, scale);
    }
    return Rational(parse_int(text));
  } catch (const boost::bad_rational&) {
    throw bad();
  }
}

}  // namespace ffinc
