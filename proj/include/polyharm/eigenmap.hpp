#pragma once

#include "polyharm/numeric_oracle.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyharm {

namespace detail {

inline void check_order(int r) {
  if (r < 2) throw std::domain_error("r-energy order must be at least 2");
}

template <class Real>
void check_angle(Real delta) {
  if (!(delta > 0 && delta < std::numbers::pi_v<Real> / 2)) throw std::domain_error("angle must lie in (0, pi/2)");
}

}  // namespace detail

/// sin^2(d) cos^(2(r-1))(d).
template <class Real = double>
Real epsilon_r(Real delta, int r) {
  detail::check_order(r);
  detail::check_angle(delta);
  const Real s = std::sin(delta), c = std::cos(delta);
  return s * s * std::pow(c, 2 * (r - 1));
}

template <class Real = double>
struct EpsilonDerivatives {
  Real first;
  Real second;
};

/// d/dd = 2 sin cos^(2r-3) (1 - r sin^2);
/// d2/dd2 = (2 cos^(2r-2) - 2(2r-3) sin^2 cos^(2r-4)) (1 - r sin^2) - 4 r sin^2 cos^(2r-2).
template <class Real = double>
EpsilonDerivatives<Real> epsilon_r_derivatives(Real delta, int r) {
  detail::check_order(r);
  detail::check_angle(delta);
  const Real s = std::sin(delta), c = std::cos(delta), s2 = s * s;
  const Real g = 1 - r * s2;
  const Real first = 2 * s * std::pow(c, 2 * r - 3) * g;
  const Real second = (2 * std::pow(c, 2 * r - 2) - 2 * (2 * r - 3) * s2 * std::pow(c, 2 * r - 4)) * g -
                      4 * r * s2 * std::pow(c, 2 * r - 2);
  return {first, second};
}

/// arcsin(1 / sqrt(r)).
inline double critical_delta(int r) {
  detail::check_order(r);
  return std::asin(1.0 / std::sqrt(static_cast<double>(r)));
}

/// Exact epsilon_r at sin^2 = 1/r: (1/r)(1 - 1/r)^(r-1).
inline Rational critical_epsilon(int r) {
  detail::check_order(r);
  return Rational(1, r) * rational_pow(Rational(r - 1, r), static_cast<unsigned>(r - 1));
}

/// Volume of the unit sphere S^m in R^(m+1).
inline double sphere_volume(int m) {
  if (m < 0) throw std::invalid_argument("sphere dimension must be non-negative");
  const double h = (m + 1) / 2.0;
  return 2 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

/// vol(S^m) lambda^r epsilon_r(d).
inline double r_energy(double lambda, int r, double delta, int m) {
  if (!(lambda > 0)) throw std::domain_error("lambda must be positive");
  return sphere_volume(m) * std::pow(lambda, r) * epsilon_r(delta, r);
}

/// (-1)^k lambda^k cos^(2k)(d).
inline double iterated_tension_factor(double lambda, double delta, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const double c = std::cos(delta);
  return std::pow(-lambda * c * c, k);
}

/// Exact form with cos^2 = 1 - t.
inline Rational iterated_tension_factor_exact(const Rational& lambda, const Rational& t, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return rational_pow(-lambda * (1 - t), static_cast<unsigned>(k));
}

/// k(k+m-1).
inline long eigenmap_lambda(int k, int m) {
  if (k < 1 || m < 1) throw std::invalid_argument("k and m must be positive");
  return static_cast<long>(k) * (k + m - 1);
}

/// Map S^m -> S^(n-1) given by fields in m+1 variables (typically homogeneous
/// polynomials), restricted to the unit sphere.
struct EigenmapSpec {
  int m = 2;
  double lambda = 2;
  std::vector<RadialScalar> components;  // empty: no concrete map
};

/// id: S^m -> S^m, lambda = m.
inline EigenmapSpec identity_eigenmap(int m) {
  if (m < 1 || m + 1 > kMaxDimension) throw std::invalid_argument("sphere dimension out of range");
  EigenmapSpec s;
  s.m = m;
  s.lambda = m;
  for (int i = 0; i <= m; ++i) s.components.push_back(RadialScalar::coordinate(m + 1, i));
  return s;
}

/// Checks |v| = 1, |grad v|^2 = lambda and lap v + |grad v|^2 v = 0 at sphere
/// points. Sphere derivatives are ambient derivatives of the degree-0
/// extension v(x / |x|) at |x| = 1, by central differences.
inline ResidualReport verify_eigenmap_numeric(const EigenmapSpec& spec, const SamplePlan& plan, double tolerance = 1e-6,
                                              double h = 1e-4) {
  if (spec.components.empty()) throw std::invalid_argument("eigenmap spec carries no concrete map");
  const int dim = spec.m + 1;
  for (const auto& c : spec.components)
    if (c.dimension() != dim) throw std::invalid_argument("component dimension must be m+1");
  if (plan.m != dim) throw std::invalid_argument("sample plan must live in R^(m+1)");

  ResidualReport rep;
  rep.equation = "eigenmap";
  rep.symbolic = false;
  rep.tolerance = tolerance;
  rep.components_checked = spec.components.size();

  std::vector<CompiledField> fields(spec.components.begin(), spec.components.end());
  auto extended = [](const CompiledField& f) {
    return [&f](std::span<const long double> x) {
      long double r2 = 0;
      for (long double c : x) r2 += c * c;
      const long double r = std::sqrt(r2);
      std::vector<long double> y(x.begin(), x.end());
      for (auto& c : y) c /= r;
      return f(std::span<const long double>(y));
    };
  };

  auto points = sample_points(plan);
  for (auto& p : points) {
    const double r = detail::norm(p);
    for (auto& c : p) c /= r;
  }
  rep.points_checked = points.size();
  std::vector<double> worst(points.size(), 0.0);
  parallel_for(points.size(), [&](std::size_t p) {
    const auto xl = detail::widen(points[p]);
    std::vector<long double> value(fields.size()), lap(fields.size());
    long double norm2 = 0, energy = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto f = extended(fields[c]);
      value[c] = f(xl);
      norm2 += value[c] * value[c];
      lap[c] = fd_laplacian(f, points[p], FDConfig{h, false});
      std::vector<long double> y = xl;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const long double xi = y[i];
        y[i] = xi + h;
        const long double plus = f(y);
        y[i] = xi - h;
        const long double minus = f(y);
        y[i] = xi;
        const long double d = (plus - minus) / (2 * h);
        energy += d * d;
      }
    }
    double err = std::fabs(static_cast<double>(std::sqrt(norm2)) - 1.0);
    err = std::max(err, std::fabs(static_cast<double>(energy) - spec.lambda) / std::max(1.0, spec.lambda));
    for (std::size_t c = 0; c < fields.size(); ++c)
      err = std::max(err, static_cast<double>(std::fabs(lap[c] + energy * value[c])) / std::max(1.0, spec.lambda));
    worst[p] = err;
  });
  for (std::size_t p = 0; p < points.size(); ++p) {
    rep.max_error = std::max(rep.max_error, worst[p]);
    if (worst[p] > tolerance) rep.fail({0, "", worst[p], points[p]});
  }
  return rep;
}

}  // namespace polyharm
