#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ultra {

// Exact scalar layer. All values are kept in canonical form (gcd-reduced,
// positive denominator) by the backend after every operation, so equality
// testing is plain comparison.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sgn(const Rational& r) { return r.sign(); }
inline int sgn(const Int& i) { return i.sign(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical rendering: "p/q", or just "p" when q == 1.
inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

/// Parses "p", "-p" or "p/q". Returns nullopt for anything else
/// (including decimals: those are floating-point inputs, not exact ones).
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view v) {
    if (!v.empty() && (v[0] == '-' || v[0] == '+')) v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      if (!is_integer(text)) return std::nullopt;
      return Rational(Int(std::string(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer(num) || !is_integer(den)) return std::nullopt;
    Int d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(Int(std::string(num)), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// num/den with the sign moved to the numerator (the backend rejects
/// negative denominators outright).
inline Rational make_rational(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Integer power with negative exponents allowed (base must be nonzero then).
inline Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0 && exp < 0) throw std::invalid_argument("pow_rational: 0 to a negative power");
  const unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  Int num = boost::multiprecision::pow(numerator(base), static_cast<unsigned>(e));
  Int den = boost::multiprecision::pow(denominator(base), static_cast<unsigned>(e));
  return exp < 0 ? make_rational(den, num) : Rational(num, den);
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) at each step
  }
  return r;
}

}  // namespace ultra
