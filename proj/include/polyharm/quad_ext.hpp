#pragma once

#include "polyharm/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace polyharm {

namespace detail {

/// Splits n > 0 as k^2 * d with d square-free. Trial division runs until
/// p^3 exceeds the cofactor; a cofactor without prime factors up to p is then
/// 1, a prime, a product of two distinct primes, or a prime square, and only
/// the last case needs the perfect-square test.
inline std::pair<Integer, Integer> square_free_split(Integer n) {
  if (n <= 0) throw std::invalid_argument("square_free_split needs a positive integer");
  Integer k = 1, d = 1;
  auto strip = [&](unsigned long p) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) d *= p;
  };
  strip(2);
  for (unsigned long p = 3;; p += 2) {
    Integer cube = Integer(p) * p * p;
    if (cube > n) break;
    strip(p);
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Integer root;
      mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
      k *= root;
    } else {
      d *= n;
    }
  }
  return {k, d};
}

}  // namespace detail

/// Exact number a + b*sqrt(D) with D a square-free positive integer. Rational
/// values use b = 0, D = 1. Mixed arithmetic requires matching radicands.
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), d_(1) {}
  QuadExt(Rational a) : a_(std::move(a)), b_(0), d_(1) {}  // NOLINT(implicit)
  QuadExt(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ <= 0) throw std::invalid_argument("QuadExt radicand must be positive");
    const auto [k, sf] = detail::square_free_split(d_);
    b_ *= Rational(k);
    d_ = sf;
    normalize();
  }

  /// sqrt(q) for rational q >= 0.
  static QuadExt sqrt_of(const Rational& q) {
    if (q < 0) throw std::domain_error("square root of a negative rational");
    if (q == 0) return QuadExt();
    // sqrt(p/s) = sqrt(p*s)/s
    const Integer ps = q.get_num() * q.get_den();
    return QuadExt(Rational(0), Rational(1, 1) / Rational(q.get_den()), ps);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    const Integer d = common(x, y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d, Raw{});
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    const Integer d = common(x, y);
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_, d, Raw{});
  }
  QuadExt operator-() const { return QuadExt(-a_, -b_, d_, Raw{}); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    const Integer d = common(x, y);
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d, Raw{});
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(y.d_);
    if (norm == 0) throw std::domain_error("division by zero in QuadExt");
    const QuadExt conj(y.a_ / norm, -y.b_ / norm, y.d_, Raw{});
    return x * conj;
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }

  /// Exact sign via a^2 versus b^2 D.
  int sign() const {
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;  // only possible for D a square, excluded by construction
    return lhs > rhs ? sa : sb;
  }

  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }

  long double to_long_double() const {
    return to_real<long double>(a_) + to_real<long double>(b_) * std::sqrt(to_real<long double>(Rational(d_)));
  }
  double to_double() const { return static_cast<double>(to_long_double()); }

  /// "a", "b*sqrt(D)" or "a+b*sqrt(D)" with exact rationals.
  std::string to_string() const {
    if (b_ == 0) return a_.get_str();
    std::string surd = b_.get_str() + "*sqrt(" + d_.get_str() + ")";
    if (a_ == 0) return surd;
    return a_.get_str() + (b_ > 0 ? "+" : "") + surd;
  }

 private:
  struct Raw {};
  QuadExt(Rational a, Rational b, Integer d, Raw) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) { normalize(); }

  void normalize() {
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    } else if (b_ == 0) {
      d_ = 1;
    }
  }

  static Integer common(const QuadExt& x, const QuadExt& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0 || x.d_ == y.d_) return x.d_;
    throw std::invalid_argument("QuadExt operands live in different quadratic fields");
  }

  Rational a_, b_;
  Integer d_;
};

}  // namespace polyharm
