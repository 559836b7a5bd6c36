#pragma once

#include "polyharm/parallel.hpp"
#include "polyharm/radial_scalar.hpp"
#include "polyharm/residual_report.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace polyharm {

/// Thrown when a requested map does not exist or exceeds the size guard.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A map R^m \ {0} -> R^N given by N radial fields.
///
/// Each component equals sqrt(scale_sq) * components[i]. The Nakauchi
/// normalizers are irrational, so only their squares are stored; every
/// identity verified here is even in that factor.
struct TensorMap {
  int m = 1;
  int ell = 1;
  Rational scale_sq{1};
  std::vector<RadialScalar> components;

  std::size_t size() const { return components.size(); }

  /// Flat index of (i_1, ..., i_ell), 0-based, i_1 most significant.
  std::size_t index_of(const std::vector<int>& multi_index) const {
    if (multi_index.size() != static_cast<std::size_t>(ell)) throw std::invalid_argument("multi-index length must equal ell");
    std::size_t idx = 0;
    for (int i : multi_index) {
      if (i < 0 || i >= m) throw std::out_of_range("multi-index entry out of range");
      idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(i);
    }
    return idx;
  }

  std::vector<int> multi_index(std::size_t flat) const {
    std::vector<int> out(static_cast<std::size_t>(ell));
    for (int k = ell - 1; k >= 0; --k) {
      out[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(m));
      flat /= static_cast<std::size_t>(m);
    }
    return out;
  }
};

/// Size guard for constructions (m^ell components).
struct ConstructionLimits {
  int max_m = 6;
  int max_ell = 6;
};

/// Squared recursion constant C_{l,m}^2 = (l+m-3)/(2l+m-4).
inline Rational nakauchi_constant_sq(int ell, int m) {
  const int num = ell + m - 3, den = 2 * ell + m - 4;
  if (num == 0 || den == 0)
    throw ConstructionError("Nakauchi recursion denominator vanishes at ell=" + std::to_string(ell) +
                            ", m=" + std::to_string(m));
  return make_rational(num, den);
}

/// u(x) = x / r.
inline TensorMap radial_projection(int m) {
  if (m < 1) throw ConstructionError("dimension must be positive");
  TensorMap t;
  t.m = m;
  t.ell = 1;
  for (int i = 0; i < m; ++i) t.components.push_back(RadialScalar::unit_coordinate(m, i));
  return t;
}

/// Builds u^(ell) by
///   u^(l)_{I,i} = C_{l,m} ( y_i u^(l-1)_I - r d_i u^(l-1)_I / (l+m-3) ),
/// attaching the new index i to both y and the derivative. The C factors are
/// accumulated in scale_sq.
inline TensorMap construct_nakauchi(int ell, int m, ConstructionLimits limits = {}) {
  if (ell < 1 || m < 1) throw ConstructionError("ell and m must be positive");
  if (ell > m) throw ConstructionError("no Nakauchi map exists for ell > m (ell=" + std::to_string(ell) + ", m=" + std::to_string(m) + ")");
  if (m > limits.max_m || ell > limits.max_ell)
    throw ConstructionError("ell=" + std::to_string(ell) + ", m=" + std::to_string(m) +
                            " exceeds the construction size guard (" + std::to_string(limits.max_ell) + ", " +
                            std::to_string(limits.max_m) + ")");
  if (m > kMaxDimension) throw ConstructionError("dimension exceeds " + std::to_string(kMaxDimension));

  TensorMap map = radial_projection(m);
  std::vector<RadialScalar> y;
  for (int i = 0; i < m; ++i) y.push_back(RadialScalar::unit_coordinate(m, i));
  const RadialScalar r = RadialScalar::radius(m);

  for (int level = 2; level <= ell; ++level) {
    map.scale_sq *= nakauchi_constant_sq(level, m);
    const Rational inv(1, level + m - 3);
    const std::size_t prev = map.components.size();
    std::vector<RadialScalar> next(prev * static_cast<std::size_t>(m), RadialScalar::zero(m, 0));
    parallel_for(prev, [&](std::size_t p) {
      const RadialScalar& u = map.components[p];
      for (int i = 0; i < m; ++i)
        next[p * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)] = y[i] * u - (r * derive(u, i)).scaled(inv);
    });
    map.components = std::move(next);
    map.ell = level;
  }
  return map;
}

namespace detail {

inline RadialScalar squared_norm_fields(const TensorMap& t) {
  RadialSum sum(t.m, 0);
  for (const auto& c : t.components) {
    if (c.is_zero()) continue;
    if (c.degree() != 0) throw std::invalid_argument("unit-norm check needs degree-0 components");
    sum.add_raw(c.numerator() * c.numerator(), 2 * c.radial_exponent());
  }
  return sum.result().scaled(t.scale_sq);
}

}  // namespace detail

/// Exact check of sum of squared components == 1.
inline ResidualReport verify_unit_norm(const TensorMap& t) {
  ResidualReport rep;
  rep.equation = "unit_norm";
  rep.components_checked = 1;
  const RadialScalar residual = detail::squared_norm_fields(t) - RadialScalar::one(t.m);
  if (!residual.is_zero()) rep.fail({0, residual.to_string(), 0.0, {}});
  return rep;
}

/// |grad u|^2 = sum over components of grad c . grad c.
inline RadialScalar energy_density(const TensorMap& t) {
  std::vector<RadialScalar> parts(t.components.size(), RadialScalar::zero(t.m, -2));
  parallel_for(t.components.size(), [&](std::size_t i) { parts[i] = gradient_dot(t.components[i], t.components[i]); });
  RadialSum sum(t.m, t.components.empty() ? -2 : t.components.front().degree() * 2 - 2);
  for (const auto& p : parts) sum.add(p);
  return sum.result().scaled(t.scale_sq);
}

/// Componentwise lap c + |grad u|^2 c == 0, exactly.
inline ResidualReport verify_harmonicity(const TensorMap& t) {
  ResidualReport rep;
  rep.equation = "harmonic_sphere";
  rep.components_checked = t.components.size();
  const RadialScalar e = energy_density(t);
  std::vector<RadialScalar> residuals(t.components.size(), RadialScalar::zero(t.m, -2));
  parallel_for(t.components.size(), [&](std::size_t i) {
    residuals[i] = laplacian(t.components[i]) + e * t.components[i];
  });
  for (std::size_t i = 0; i < residuals.size(); ++i)
    if (!residuals[i].is_zero()) rep.fail({i, residuals[i].to_string(), 0.0, {}});
  return rep;
}

/// Componentwise sum_j (x_j / r) d_j c == 0, exactly.
inline ResidualReport verify_radial_orthogonality(const TensorMap& t) {
  ResidualReport rep;
  rep.equation = "radial_orthogonality";
  rep.components_checked = t.components.size();
  std::vector<RadialScalar> residuals(t.components.size(), RadialScalar::zero(t.m, -1));
  parallel_for(t.components.size(), [&](std::size_t i) {
    const RadialScalar& c = t.components[i];
    RadialSum sum(t.m, c.degree() - 1);
    for (int j = 0; j < t.m; ++j) sum.add(RadialScalar::unit_coordinate(t.m, j) * derive(c, j));
    residuals[i] = sum.result();
  });
  for (std::size_t i = 0; i < residuals.size(); ++i)
    if (!residuals[i].is_zero()) rep.fail({i, residuals[i].to_string(), 0.0, {}});
  return rep;
}

/// Checks energy density == ell(ell+m-2)/r^2 exactly.
inline ResidualReport verify_energy_density(const TensorMap& t) {
  ResidualReport rep;
  rep.equation = "energy_density";
  rep.components_checked = 1;
  const RadialScalar expected =
      RadialScalar::inverse_radius_power(t.m, 2).scaled(Rational(static_cast<long>(t.ell) * (t.ell + t.m - 2)));
  const RadialScalar residual = energy_density(t) - expected;
  if (!residual.is_zero()) rep.fail({0, residual.to_string(), 0.0, {}});
  return rep;
}

/// Applies the exact Laplacian k times to every component (scale unchanged).
inline TensorMap iterated_laplacian_symbolic(const TensorMap& t, int k) {
  if (k < 0) throw std::invalid_argument("iteration count must be non-negative");
  TensorMap out = t;
  parallel_for(out.components.size(), [&](std::size_t i) { out.components[i] = iterated_laplacian(t.components[i], k); });
  return out;
}

/// Closed form of lap^k u^(l) = coefficient * u^(l) / r^(2k).
struct LaplacianFormula {
  int ell = 1, m = 1, k = 1;
  Rational coefficient;
  int radial_exponent = 2;
};

/// prod_{s=1..k} (2s+l-2) * prod_{j=1..k} (2j-l-m).
inline LaplacianFormula iterated_laplacian_coefficient(int ell, int m, int k) {
  if (ell < 1 || m < 1 || k < 1) throw std::invalid_argument("ell, m, k must be positive");
  Integer c = 1;
  for (int s = 1; s <= k; ++s) c *= 2 * s + ell - 2;
  for (int j = 1; j <= k; ++j) c *= 2 * j - ell - m;
  return {ell, m, k, Rational(c), 2 * k};
}

/// Radial projection form: prod_{j=1..k} (2j-1-m)(2j-1).
inline Rational radial_projection_laplacian_coefficient(int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("m, k must be positive");
  Integer c = 1;
  for (int j = 1; j <= k; ++j) c *= Integer(2 * j - 1 - m) * (2 * j - 1);
  return Rational(c);
}

/// Exact check lap^k u == coefficient * u / r^(2k), componentwise.
inline ResidualReport verify_iterated_laplacian(const TensorMap& t, int k) {
  ResidualReport rep;
  rep.equation = "iterated_laplacian_k" + std::to_string(k);
  rep.components_checked = t.components.size();
  const LaplacianFormula f = iterated_laplacian_coefficient(t.ell, t.m, k);
  const RadialScalar weight = RadialScalar::inverse_radius_power(t.m, f.radial_exponent).scaled(f.coefficient);
  std::vector<RadialScalar> residuals(t.components.size(), RadialScalar::zero(t.m, -2 * k));
  parallel_for(t.components.size(), [&](std::size_t i) {
    residuals[i] = iterated_laplacian(t.components[i], k) - weight * t.components[i];
  });
  for (std::size_t i = 0; i < residuals.size(); ++i)
    if (!residuals[i].is_zero()) rep.fail({i, residuals[i].to_string(), 0.0, {}});
  return rep;
}

}  // namespace polyharm
