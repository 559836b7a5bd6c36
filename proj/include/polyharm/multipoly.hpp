#pragma once

#include "polyharm/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyharm {

/// Largest supported number of variables; exponents of each variable are
/// packed into one byte of a 64-bit key.
inline constexpr int kMaxDimension = 8;
inline constexpr int kMaxExponent = 255;

/// Packed exponent vector. Variable x1 lives in the most significant byte, so
/// ordering keys numerically is lexicographic ordering with x1 first.
using MonomialKey = std::uint64_t;

namespace monomial {

inline constexpr int shift(int var) { return 8 * (kMaxDimension - 1 - var); }

inline int exponent(MonomialKey key, int var) {
  return static_cast<int>((key >> shift(var)) & 0xffu);
}

inline MonomialKey unit(int var, int power = 1) {
  return static_cast<MonomialKey>(power) << shift(var);
}

inline int total_degree(MonomialKey key) {
  int d = 0;
  for (int i = 0; i < kMaxDimension; ++i) d += exponent(key, i);
  return d;
}

inline MonomialKey from_exponents(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxDimension))
    throw std::invalid_argument("too many variables in monomial");
  MonomialKey key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > kMaxExponent)
      throw std::out_of_range("monomial exponent out of range");
    key |= unit(static_cast<int>(i), exps[i]);
  }
  return key;
}

}  // namespace monomial

/// Homogeneous polynomial in x1..xm with exact rational coefficients.
///
/// Terms are kept sorted by key with no zero coefficients. Every stored term
/// has the same total degree; the zero polynomial carries a nominal degree so
/// that degree bookkeeping survives cancellation.
class MultiPoly {
 public:
  struct Term {
    MonomialKey key;
    Rational coeff;
  };

  MultiPoly(int dimension, int degree) : dim_(dimension), degree_(degree) { check_dimension(dimension); }

  static MultiPoly constant(int dimension, const Rational& c) {
    MultiPoly p(dimension, 0);
    if (c != 0) p.terms_.push_back({0, c});
    return p;
  }

  static MultiPoly variable(int dimension, int var) {
    if (var < 0 || var >= dimension) throw std::out_of_range("variable index out of range");
    MultiPoly p(dimension, 1);
    p.terms_.push_back({monomial::unit(var), Rational(1)});
    return p;
  }

  /// x1^2 + ... + xm^2.
  static MultiPoly rho(int dimension) {
    MultiPoly p(dimension, 2);
    for (int i = dimension - 1; i >= 0; --i) p.terms_.push_back({monomial::unit(i, 2), Rational(1)});
    return p;
  }

  /// Builds from arbitrary (possibly unsorted, duplicated) terms. Throws
  /// std::invalid_argument unless all nonzero terms share one total degree.
  static MultiPoly from_terms(int dimension, int degree, std::vector<Term> terms) {
    MultiPoly p(dimension, degree);
    for (const auto& t : terms) {
      for (int i = dimension; i < kMaxDimension; ++i)
        if (monomial::exponent(t.key, i) != 0)
          throw std::invalid_argument("monomial uses a variable beyond the dimension");
    }
    p.terms_ = std::move(terms);
    p.normalize();
    for (const auto& t : p.terms_)
      if (monomial::total_degree(t.key) != degree)
        throw std::invalid_argument("polynomial is not homogeneous of the declared degree");
    return p;
  }

  int dimension() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return terms_.back().coeff;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
    if (a.is_zero()) return true;
    if (a.degree_ != b.degree_) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, true); }

  MultiPoly& operator+=(const MultiPoly& b) { return *this = combine(*this, b, false); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same_dimension(a, b);
    const int deg = a.degree_ + b.degree_;
    if (deg > kMaxExponent) throw std::overflow_error("polynomial degree exceeds packed exponent range");
    MultiPoly r(a.dim_, deg);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) r.terms_.push_back({ta.key + tb.key, ta.coeff * tb.coeff});
    r.normalize();
    return r;
  }

  MultiPoly scaled(const Rational& c) const {
    if (c == 0) return MultiPoly(dim_, degree_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Multiplies by the monomial with the given key (degree adds).
  MultiPoly shifted(MonomialKey key) const {
    MultiPoly r(dim_, degree_ + monomial::total_degree(key));
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      for (int i = 0; i < dim_; ++i)
        if (monomial::exponent(t.key, i) + monomial::exponent(key, i) > kMaxExponent)
          throw std::overflow_error("exponent overflow");
      r.terms_.push_back({t.key + key, t.coeff});
    }
    return r;  // adding a fixed key preserves order
  }

  /// Partial derivative with respect to x_{var} (0-based).
  MultiPoly derivative(int var) const {
    if (var < 0 || var >= dim_) throw std::out_of_range("variable index out of range");
    MultiPoly r(dim_, degree_ - 1);
    const MonomialKey one = monomial::unit(var);
    for (const auto& t : terms_) {
      const int e = monomial::exponent(t.key, var);
      if (e == 0) continue;
      r.terms_.push_back({t.key - one, t.coeff * e});
    }
    r.normalize();
    return r;
  }

  MultiPoly laplacian() const {
    MultiPoly r(dim_, degree_ - 2);
    for (const auto& t : terms_) {
      for (int i = 0; i < dim_; ++i) {
        const int e = monomial::exponent(t.key, i);
        if (e < 2) continue;
        r.terms_.push_back({t.key - monomial::unit(i, 2), t.coeff * (e * (e - 1))});
      }
    }
    r.normalize();
    return r;
  }

  /// Euler operator: sum_i x_i * d/dx_i, computed term by term.
  MultiPoly euler() const {
    MultiPoly r(dim_, degree_);
    for (int i = 0; i < dim_; ++i) r += derivative(i).shifted(monomial::unit(i)).with_degree(degree_);
    return r;
  }

  /// Multiplies by (x1^2 + ... + xm^2)^power.
  MultiPoly times_rho(int power) const {
    MultiPoly r = *this;
    if (power <= 0) return r;
    const MultiPoly q = rho(dim_);
    for (int k = 0; k < power; ++k) r = r * q;
    return r;
  }

  /// Exact division by x1^2 + ... + xm^2. Returns std::nullopt when the
  /// remainder (taken with respect to x1) is nonzero.
  std::optional<MultiPoly> divide_by_rho() const {
    MultiPoly quotient(dim_, degree_ - 2);
    if (is_zero()) return quotient;
    if (degree_ < 2) return std::nullopt;
    // Remainder keyed in descending order so the largest x1 power is seen first.
    std::map<MonomialKey, Rational, std::greater<>> rem;
    for (const auto& t : terms_) rem.emplace(t.key, t.coeff);
    std::vector<Term> q;
    while (!rem.empty()) {
      auto it = rem.begin();
      if (monomial::exponent(it->first, 0) < 2) return std::nullopt;  // leading remainder term has x1-degree < 2
      const MonomialKey base = it->first - monomial::unit(0, 2);
      const Rational c = it->second;
      rem.erase(it);
      q.push_back({base, c});
      for (int i = 1; i < dim_; ++i) {
        const MonomialKey k = base + monomial::unit(i, 2);
        auto [pos, inserted] = rem.try_emplace(k, -c);
        if (!inserted) {
          pos->second -= c;
          if (pos->second == 0) rem.erase(pos);
        }
      }
    }
    quotient.terms_ = std::move(q);
    quotient.normalize();
    return quotient;
  }

  /// Exact value at a rational point.
  Rational evaluate_exact(std::span<const Rational> x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("point dimension mismatch");
    Rational sum(0);
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (int i = 0; i < dim_; ++i) {
        const int e = monomial::exponent(t.key, i);
        if (e != 0) v *= rational_pow(x[i], static_cast<unsigned>(e));
      }
      sum += v;
    }
    return sum;
  }

  /// Re-labels the nominal degree of a zero polynomial; nonzero polynomials
  /// must already have that degree.
  MultiPoly with_degree(int degree) const {
    if (!is_zero() && degree != degree_) throw std::invalid_argument("degree relabel of nonzero polynomial");
    MultiPoly r = *this;
    r.degree_ = degree;
    return r;
  }

 private:
  static void check_dimension(int dimension) {
    if (dimension < 1 || dimension > kMaxDimension)
      throw std::out_of_range("dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  }

  static void check_same_dimension(const MultiPoly& a, const MultiPoly& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  static MultiPoly combine(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    check_same_dimension(a, b);
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.degree_ != b.degree_) throw std::invalid_argument("adding polynomials of different degree");
    MultiPoly r(a.dim_, a.degree_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].key < b.terms_[j].key)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].key < a.terms_[i].key) {
        r.terms_.push_back({b.terms_[j].key, subtract ? Rational(-b.terms_[j].coeff) : b.terms_[j].coeff});
        ++j;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (c != 0) r.terms_.push_back({a.terms_[i].key, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      std::size_t j = i + 1;
      Rational c = std::move(terms_[i].coeff);
      while (j < terms_.size() && terms_[j].key == terms_[i].key) c += terms_[j++].coeff;
      if (c != 0) {
        terms_[out].key = terms_[i].key;
        terms_[out].coeff = std::move(c);
        ++out;
      }
      i = j;
    }
    terms_.resize(out);
  }

  int dim_;
  int degree_;
  std::vector<Term> terms_;
};

}  // namespace polyharm
