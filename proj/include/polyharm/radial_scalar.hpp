#pragma once

#include "polyharm/multipoly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace polyharm {

/// A field P(x) / r^s on R^m \ {0}, P homogeneous with exact coefficients.
///
/// Canonical form: while s >= 2 and (x1^2+...+xm^2) divides P, divide and drop
/// s by two. With that rule the pair (P, s) is unique for every field, so
/// structural equality is field equality. The homogeneity degree deg(P) - s is
/// preserved by every operation; the zero field remembers its degree too.
class RadialScalar {
 public:
  RadialScalar(MultiPoly numerator, int radial_exponent)
      : poly_(std::move(numerator)), s_(radial_exponent), degree_(poly_.degree() - radial_exponent) {
    if (radial_exponent < 0) throw std::invalid_argument("radial exponent must be non-negative");
    canonicalize_in_place();
  }

  static RadialScalar zero(int dimension, int degree) {
    return RadialScalar(MultiPoly(dimension, degree), 0, degree, Canonical{});
  }
  static RadialScalar constant(int dimension, const Rational& c) {
    return RadialScalar(MultiPoly::constant(dimension, c), 0);
  }
  static RadialScalar one(int dimension) { return constant(dimension, Rational(1)); }
  /// x_i (0-based index).
  static RadialScalar coordinate(int dimension, int var) { return RadialScalar(MultiPoly::variable(dimension, var), 0); }
  /// y_i = x_i / r.
  static RadialScalar unit_coordinate(int dimension, int var) {
    return RadialScalar(MultiPoly::variable(dimension, var), 1);
  }
  /// r itself, stored as (x1^2+...+xm^2)/r.
  static RadialScalar radius(int dimension) { return RadialScalar(MultiPoly::rho(dimension), 1); }
  /// 1 / r^s.
  static RadialScalar inverse_radius_power(int dimension, int s) {
    return RadialScalar(MultiPoly::constant(dimension, Rational(1)), s);
  }

  const MultiPoly& numerator() const { return poly_; }
  int radial_exponent() const { return s_; }
  int dimension() const { return poly_.dimension(); }
  /// Homogeneity degree deg(P) - s.
  int degree() const { return degree_; }
  bool is_zero() const { return poly_.is_zero(); }

  friend bool operator==(const RadialScalar& a, const RadialScalar& b) {
    if (a.dimension() != b.dimension()) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.s_ == b.s_ && a.poly_ == b.poly_;
  }

  RadialScalar operator-() const { return RadialScalar(-poly_, s_, degree_, Canonical{}); }

  RadialScalar scaled(const Rational& c) const {
    if (c == 0) return zero(dimension(), degree_);
    return RadialScalar(poly_.scaled(c), s_, degree_, Canonical{});
  }

  friend RadialScalar operator+(const RadialScalar& a, const RadialScalar& b) { return a.combine(b, false); }
  friend RadialScalar operator-(const RadialScalar& a, const RadialScalar& b) { return a.combine(b, true); }
  RadialScalar& operator+=(const RadialScalar& b) { return *this = combine(b, false); }
  RadialScalar& operator-=(const RadialScalar& b) { return *this = combine(b, true); }

  friend RadialScalar operator*(const RadialScalar& a, const RadialScalar& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("field dimension mismatch");
    if (a.is_zero() || b.is_zero()) return zero(a.dimension(), a.degree_ + b.degree_);
    return RadialScalar(a.poly_ * b.poly_, a.s_ + b.s_);
  }

  friend RadialScalar operator*(const Rational& c, const RadialScalar& f) { return f.scaled(c); }

  /// d/dx_{var} without the final canonicalization: numerator over r^(s+2)
  /// (or over r^0 when s = 0).
  std::pair<MultiPoly, int> derivative_raw(int var) const {
    if (var < 0 || var >= dimension()) throw std::out_of_range("coordinate index out of range");
    if (s_ == 0) return {poly_.derivative(var), 0};
    // d(P r^-s) = (dP * rho - s x_i P) / r^(s+2)
    MultiPoly num = poly_.derivative(var).times_rho(1).with_degree(poly_.degree() + 1) -
                    poly_.shifted(monomial::unit(var)).scaled(Rational(s_));
    return {std::move(num), s_ + 2};
  }

  /// Homogeneous evaluation helpers; r is passed in so callers can reuse it.
  template <class Real>
  Real evaluate_with_radius(std::span<const Real> x, Real r) const;

  std::string to_string() const;
  static RadialScalar parse(std::string_view text, int dimension);

 private:
  struct Canonical {};
  RadialScalar(MultiPoly p, int s, int degree, Canonical) : poly_(std::move(p)), s_(s), degree_(degree) {}

  void canonicalize_in_place() {
    if (poly_.is_zero()) {
      poly_ = MultiPoly(poly_.dimension(), degree_);
      s_ = 0;
      return;
    }
    while (s_ >= 2) {
      auto q = poly_.divide_by_rho();
      if (!q) break;
      poly_ = std::move(*q);
      s_ -= 2;
    }
  }

  RadialScalar combine(const RadialScalar& b, bool subtract) const {
    if (dimension() != b.dimension()) throw std::invalid_argument("field dimension mismatch");
    if (b.is_zero()) return *this;
    if (is_zero()) return subtract ? -b : b;
    if (degree_ != b.degree_)
      throw std::invalid_argument("adding fields of different homogeneity degree (" + std::to_string(degree_) +
                                  " vs " + std::to_string(b.degree_) + ")");
    if ((s_ - b.s_) % 2 != 0)
      throw std::invalid_argument("adding fields with radial exponents of different parity");
    const int s = std::max(s_, b.s_);
    MultiPoly pa = poly_.times_rho((s - s_) / 2);
    MultiPoly pb = b.poly_.times_rho((s - b.s_) / 2);
    MultiPoly sum = subtract ? pa - pb : pa + pb;
    if (sum.is_zero()) return zero(dimension(), degree_);
    return RadialScalar(std::move(sum), s);
  }

  MultiPoly poly_;
  int s_;
  int degree_;
};

/// Exact partial derivative; homogeneity degree drops by one.
inline RadialScalar derive(const RadialScalar& f, int var) {
  if (f.is_zero()) return RadialScalar::zero(f.dimension(), f.degree() - 1);
  auto [num, s] = f.derivative_raw(var);
  if (num.is_zero()) return RadialScalar::zero(f.dimension(), f.degree() - 1);
  return RadialScalar(std::move(num), s);
}

/// Exact Laplacian; homogeneity degree drops by two.
///
/// Product rule on P r^-s with grad r^-s = -s x r^(-s-2), lap r^-s = s(s+2-m) r^(-s-2)
/// and the Euler identity x . grad P = deg(P) P:
///   lap(P r^-s) = (rho lap P + s(s + 2 - m - 2 deg P) P) / r^(s+2).
inline RadialScalar laplacian(const RadialScalar& f) {
  const int m = f.dimension();
  if (f.is_zero()) return RadialScalar::zero(m, f.degree() - 2);
  const MultiPoly& p = f.numerator();
  const int s = f.radial_exponent();
  if (s == 0) {
    MultiPoly lp = p.laplacian();
    if (lp.is_zero()) return RadialScalar::zero(m, f.degree() - 2);
    return RadialScalar(std::move(lp), 0);
  }
  const int d = p.degree();
  MultiPoly num = p.laplacian().times_rho(1).with_degree(d) + p.scaled(Rational(s * (s + 2 - m - 2 * d)));
  if (num.is_zero()) return RadialScalar::zero(m, f.degree() - 2);
  return RadialScalar(std::move(num), s + 2);
}

inline RadialScalar iterated_laplacian(RadialScalar f, int k) {
  for (int i = 0; i < k; ++i) f = laplacian(f);
  return f;
}

/// Sums fields of one homogeneity degree, aligning radial exponents once at
/// the end instead of per addition.
class RadialSum {
 public:
  RadialSum(int dimension, int degree) : dim_(dimension), degree_(degree) {}

  void add(const RadialScalar& f) {
    if (f.is_zero()) return;
    add_raw(f.numerator(), f.radial_exponent());
  }

  /// Adds P / r^s given as an unreduced pair.
  void add_raw(const MultiPoly& p, int s) {
    if (p.is_zero()) return;
    if (p.degree() - s != degree_) throw std::invalid_argument("RadialSum: homogeneity degree mismatch");
    auto it = parts_.find(s);
    if (it == parts_.end())
      parts_.emplace(s, p);
    else
      it->second += p;
  }

  RadialScalar result() const {
    if (parts_.empty()) return RadialScalar::zero(dim_, degree_);
    const int smax = parts_.rbegin()->first;
    MultiPoly total(dim_, degree_ + smax);
    for (const auto& [s, p] : parts_) {
      if ((smax - s) % 2 != 0) throw std::invalid_argument("RadialSum: radial exponent parity mismatch");
      total += p.times_rho((smax - s) / 2).with_degree(degree_ + smax);
    }
    if (total.is_zero()) return RadialScalar::zero(dim_, degree_);
    return RadialScalar(std::move(total), smax);
  }

 private:
  int dim_;
  int degree_;
  std::map<int, MultiPoly> parts_;
};

/// Sum_i (d_i f)(d_i g), canonicalized once.
inline RadialScalar gradient_dot(const RadialScalar& f, const RadialScalar& g) {
  const int m = f.dimension();
  if (g.dimension() != m) throw std::invalid_argument("field dimension mismatch");
  const int degree = f.degree() + g.degree() - 2;
  if (f.is_zero() || g.is_zero()) return RadialScalar::zero(m, degree);
  RadialSum sum(m, degree);
  for (int i = 0; i < m; ++i) {
    auto [pf, sf] = f.derivative_raw(i);
    auto [pg, sg] = g.derivative_raw(i);
    sum.add_raw(pf * pg, sf + sg);
  }
  return sum.result();
}

/// A coordinate-indexed family (f_1, ..., f_m) such as a gradient.
using RadialVector = std::vector<RadialScalar>;

inline RadialVector gradient(const RadialScalar& f) {
  RadialVector g;
  g.reserve(static_cast<std::size_t>(f.dimension()));
  for (int i = 0; i < f.dimension(); ++i) g.push_back(derive(f, i));
  return g;
}

/// Sum_i d_i v_i.
inline RadialScalar divergence(const RadialVector& v) {
  if (v.empty()) throw std::invalid_argument("divergence of an empty vector");
  const int m = v.front().dimension();
  if (v.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("vector length must equal dimension");
  RadialSum sum(m, v.front().degree() - 1);
  for (int i = 0; i < m; ++i) {
    if (v[i].is_zero()) continue;
    auto [p, s] = v[i].derivative_raw(i);
    sum.add_raw(p, s);
  }
  return sum.result();
}

/// Sum_i a_i b_i.
inline RadialScalar dot(const RadialVector& a, const RadialVector& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("dot of mismatched vectors");
  const int m = a.front().dimension();
  RadialSum sum(m, a.front().degree() + b.front().degree());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    sum.add_raw(a[i].numerator() * b[i].numerator(), a[i].radial_exponent() + b[i].radial_exponent());
  }
  return sum.result();
}

/// Coefficient c in lap(1/r^s) = c / r^(s+2), namely s(s+2-m).
inline Rational laplacian_radial_power(int s, int m) {
  if (s < 0 || m < 1) throw std::invalid_argument("laplacian_radial_power needs s >= 0, m >= 1");
  return Rational(static_cast<long>(s) * (s + 2 - m));
}

// ---------------------------------------------------------------------------
// Evaluation

template <class Real>
Real RadialScalar::evaluate_with_radius(std::span<const Real> x, Real r) const {
  Real sum = 0, comp = 0;  // Neumaier summation
  for (const auto& t : poly_.terms()) {
    Real v = to_real<Real>(t.coeff);
    for (int i = 0; i < dimension(); ++i) {
      const int e = monomial::exponent(t.key, i);
      for (int k = 0; k < e; ++k) v *= x[i];
    }
    const Real next = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - next) + v;
    else
      comp += (v - next) + sum;
    sum = next;
  }
  Real value = sum + comp;
  for (int k = 0; k < s_; ++k) value /= r;
  return value;
}

// ---------------------------------------------------------------------------
// Text form: (c)*x1^a1*...*xm^am/r^s joined by '+'; zero is "0".

inline std::string RadialScalar::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : poly_.terms()) {
    if (!first) out << '+';
    first = false;
    out << '(' << t.coeff.get_str() << ')';
    for (int i = 0; i < dimension(); ++i) out << "*x" << (i + 1) << '^' << monomial::exponent(t.key, i);
    out << "/r^" << s_;
  }
  return out.str();
}

inline RadialScalar RadialScalar::parse(std::string_view text, int dimension) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse field '" + std::string(text) + "': " + why);
  };
  if (text == "0") return zero(dimension, 0);
  std::vector<MultiPoly::Term> terms;
  int s = -1;
  int degree = -1;
  std::size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto read_int = [&]() {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  while (pos < text.size()) {
    expect('(');
    const std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) fail("unbalanced parenthesis");
    Rational c = parse_rational(text.substr(pos, close - pos));
    pos = close + 1;
    std::vector<int> exps(static_cast<std::size_t>(dimension), 0);
    for (int i = 0; i < dimension; ++i) {
      expect('*');
      expect('x');
      if (read_int() != i + 1) fail("variables must appear in order x1..xm");
      expect('^');
      exps[static_cast<std::size_t>(i)] = read_int();
    }
    expect('/');
    expect('r');
    expect('^');
    const int term_s = read_int();
    if (s >= 0 && term_s != s) fail("terms carry different radial exponents");
    s = term_s;
    const MonomialKey key = monomial::from_exponents(exps);
    const int d = monomial::total_degree(key);
    if (degree >= 0 && d != degree) fail("numerator is not homogeneous");
    degree = d;
    terms.push_back({key, std::move(c)});
    if (pos < text.size()) expect('+');
  }
  if (terms.empty()) fail("no terms");
  return RadialScalar(MultiPoly::from_terms(dimension, degree, std::move(terms)), s);
}

}  // namespace polyharm
