#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyharm {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact fraction, always reduced with a positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p" or "p/q" (optional sign on p). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s(text);
  if (const auto dot = s.find('.'); dot != std::string::npos && s.find('/') == std::string::npos) {
    // exact decimal: "1.25" -> 125/100
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("malformed rational: " + s);
    const std::size_t places = s.size() - dot - 1;
    return parse_rational(digits) / Rational(Integer("1" + std::string(places, '0')));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && i == 0);
    if (!ok) throw std::invalid_argument("malformed rational: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

template <class Real>
Real to_real(const Rational& q) {
  if constexpr (sizeof(Real) > sizeof(double)) {
    // Split into a double head and a double tail so long double keeps the extra bits.
    const double head = q.get_d();
    Rational rest = q - Rational(head);
    return static_cast<Real>(head) + static_cast<Real>(rest.get_d());
  } else {
    return static_cast<Real>(q.get_d());
  }
}

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

}  // namespace polyharm
