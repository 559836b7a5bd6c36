#pragma once

#include "polyharm/quad_ext.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyharm {

/// Univariate polynomial in t = sin^2(angle) with rational coefficients;
/// coefficient i multiplies t^i. Trailing zeros are trimmed.
class ConstraintPoly {
 public:
  ConstraintPoly() = default;
  explicit ConstraintPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coefficient(int power) const {
    return power >= 0 && power < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(power)] : Rational(0);
  }
  const std::vector<Rational>& coefficients() const { return c_; }

  Rational operator()(const Rational& t) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
  }

  QuadExt operator()(const QuadExt& t) const {
    QuadExt v;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + QuadExt(*it);
    return v;
  }

  long double operator()(long double t) const {
    long double v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + to_real<long double>(*it);
    return v;
  }

  friend bool operator==(const ConstraintPoly& a, const ConstraintPoly& b) { return a.c_ == b.c_; }

  friend ConstraintPoly operator+(const ConstraintPoly& a, const ConstraintPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return ConstraintPoly(std::move(c));
  }

  ConstraintPoly scaled(const Rational& k) const {
    std::vector<Rational> c = c_;
    for (auto& x : c) x *= k;
    return ConstraintPoly(std::move(c));
  }

  /// The constant k with *this == k * other, if one exists (k may be 0 only
  /// when *this is zero).
  std::optional<Rational> proportionality_to(const ConstraintPoly& other) const {
    if (other.is_zero()) return is_zero() ? std::optional<Rational>(Rational(1)) : std::nullopt;
    const Rational k = coefficient(other.degree()) / other.coefficient(other.degree());
    if (other.scaled(k) == *this) return k;
    return std::nullopt;
  }

  /// "375*t^2-700*t+225" style.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int p = degree(); p >= 0; --p) {
      const Rational& c = c_[static_cast<std::size_t>(p)];
      if (c == 0) continue;
      std::string mag = (c < 0 ? Rational(-c) : c).get_str();
      if (!out.empty()) out += c < 0 ? "-" : "+";
      else if (c < 0) out += "-";
      if (p == 0) {
        out += mag;
      } else {
        if (mag != "1") out += mag + "*";
        out += p == 1 ? "t" : "t^" + std::to_string(p);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace polyharm
