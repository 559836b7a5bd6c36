#pragma once

#include "polyharm/pde_residual.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace polyharm {

/// Seeded points in [-1, 1]^m with |x| >= r_min.
struct SamplePlan {
  int m = 3;
  std::size_t count = 100;
  std::uint64_t seed = 42;
  double r_min = 0.3;
};

struct FDConfig {
  double h = 1e-4;  // relative to |x|
  bool richardson = false;
};

using Point = std::vector<double>;

/// mt19937_64 output mapped to [-1, 1) through its top 53 bits; rejection
/// sampling keeps |x| >= r_min.
inline std::vector<Point> sample_points(const SamplePlan& plan) {
  if (plan.m < 1) throw std::invalid_argument("dimension must be positive");
  if (!(plan.r_min >= 0) || plan.r_min >= 1) throw std::invalid_argument("r_min must lie in [0, 1)");
  std::mt19937_64 gen(plan.seed);
  auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0; };
  std::vector<Point> out;
  out.reserve(plan.count);
  while (out.size() < plan.count) {
    Point x(static_cast<std::size_t>(plan.m));
    double r2 = 0;
    for (auto& c : x) {
      c = uniform();
      r2 += c * c;
    }
    if (r2 >= plan.r_min * plan.r_min && r2 > 0) out.push_back(std::move(x));
  }
  return out;
}

/// Exact-rational evaluation of P(x) / rho^floor(s/2), then one rounding, then
/// the remaining 1/r for odd s.
inline double evaluate(const RadialScalar& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dimension()) throw std::invalid_argument("point dimension mismatch");
  std::vector<Rational> xr;
  Rational rho(0);
  for (double c : x) {
    xr.emplace_back(c);  // doubles are exact rationals
    rho += xr.back() * xr.back();
  }
  if (rho == 0) throw std::domain_error("fields are undefined at the origin");
  Rational v = f.numerator().evaluate_exact(xr);
  for (int k = 0; k < f.radial_exponent() / 2; ++k) v /= rho;
  long double out = to_real<long double>(v);
  if (f.radial_exponent() % 2) out /= std::sqrt(to_real<long double>(rho));
  return static_cast<double>(out);
}

/// Long double evaluator with precomputed coefficients, for the many FD
/// evaluations. Terms are summed with Neumaier compensation.
class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const RadialScalar& f) : m_(f.dimension()), s_(f.radial_exponent()) {
    for (const auto& t : f.numerator().terms()) {
      coeffs_.push_back(to_real<long double>(t.coeff));
      std::array<std::uint8_t, kMaxDimension> e{};
      for (int i = 0; i < m_; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(monomial::exponent(t.key, i));
      exps_.push_back(e);
    }
  }

  int dimension() const { return m_; }

  long double operator()(std::span<const long double> x) const {
    long double r2 = 0;
    for (int i = 0; i < m_; ++i) r2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return evaluate_with_radius(x, std::sqrt(r2));
  }

  long double evaluate_with_radius(std::span<const long double> x, long double r) const {
    long double sum = 0, comp = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      long double v = coeffs_[t];
      for (int i = 0; i < m_; ++i)
        for (int k = 0; k < exps_[t][static_cast<std::size_t>(i)]; ++k) v *= x[static_cast<std::size_t>(i)];
      const long double next = sum + v;
      comp += std::fabs(sum) >= std::fabs(v) ? (sum - next) + v : (v - next) + sum;
      sum = next;
    }
    long double value = sum + comp;
    for (int k = 0; k < s_; ++k) value /= r;
    return value;
  }

 private:
  int m_ = 1;
  int s_ = 0;
  std::vector<long double> coeffs_;
  std::vector<std::array<std::uint8_t, kMaxDimension>> exps_;
};

namespace detail {

template <class F>
long double fd_laplacian_step(const F& f, std::span<const long double> x, long double h) {
  std::vector<long double> y(x.begin(), x.end());
  const long double centre = f(std::span<const long double>(y));
  long double sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const long double xi = y[i];
    y[i] = xi + h;
    const long double plus = f(std::span<const long double>(y));
    y[i] = xi - h;
    const long double minus = f(std::span<const long double>(y));
    y[i] = xi;
    sum += plus - 2 * centre + minus;
  }
  return sum / (h * h);
}

inline std::vector<long double> widen(std::span<const double> x) { return {x.begin(), x.end()}; }

inline double norm(std::span<const double> x) {
  double s = 0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

}  // namespace detail

/// Central second-order FD Laplacian with step cfg.h * |x|. F takes
/// std::span<const long double>.
template <class F>
double fd_laplacian(const F& f, std::span<const double> x, const FDConfig& cfg = {}) {
  if (!(cfg.h > 0)) throw std::invalid_argument("FD step must be positive");
  const double r = detail::norm(x);
  const long double h = static_cast<long double>(cfg.h) * r;
  if (!(r > h * static_cast<long double>(x.size()))) throw std::domain_error("point too close to the origin for the FD step");
  const auto xl = detail::widen(x);
  const long double coarse = detail::fd_laplacian_step(f, xl, h);
  if (!cfg.richardson) return static_cast<double>(coarse);
  const long double fine = detail::fd_laplacian_step(f, xl, h / 2);
  return static_cast<double>((4 * fine - coarse) / 3);
}

inline double fd_laplacian(const RadialScalar& f, std::span<const double> x, const FDConfig& cfg = {}) {
  const CompiledField c(f);
  return fd_laplacian(c, x, cfg);
}

namespace detail {

struct LaplacianSamples {
  std::vector<CompiledField> lower;  // lap^(k-1) components
  std::vector<CompiledField> upper;  // lap^k components
};

inline LaplacianSamples compile_laplacians(const TensorMap& t, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const TensorMap lower = iterated_laplacian_symbolic(t, k - 1);
  const TensorMap upper = iterated_laplacian_symbolic(lower, 1);
  LaplacianSamples out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.lower.emplace_back(lower.components[i]);
    out.upper.emplace_back(upper.components[i]);
  }
  return out;
}

struct PointError {
  double worst = 0;
  std::size_t component = 0;
};

}  // namespace detail

/// FD Laplacian of the exact lap^(k-1) u versus the exact lap^k u. At each
/// point the error is max_c |fd_c - sym_c| / max(max_c |sym_c|, max_c |F_c(x)| / |x|^2, 1e-9)
/// with F = lap^(k-1) u; the reported component is the one with the largest
/// absolute deviation. Fields are compared without the constant normalizer,
/// which cancels.
inline ResidualReport crosscheck_laplacian(const TensorMap& t, int k, const SamplePlan& plan, const FDConfig& cfg = {},
                                           double tolerance = 1e-5) {
  if (plan.m != t.m) throw std::invalid_argument("sample plan dimension differs from the map");
  ResidualReport rep;
  rep.equation = "fd_laplacian_k" + std::to_string(k);
  rep.symbolic = false;
  rep.tolerance = tolerance;
  rep.components_checked = t.size();
  const auto fields = detail::compile_laplacians(t, k);
  const auto points = sample_points(plan);
  rep.points_checked = points.size();

  std::vector<detail::PointError> errors(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    const auto xl = detail::widen(points[p]);
    const double r2 = std::pow(detail::norm(points[p]), 2);
    double scale = 1e-9, worst_abs = -1;
    for (std::size_t c = 0; c < fields.lower.size(); ++c) {
      const double fd = fd_laplacian(fields.lower[c], points[p], cfg);
      const double sym = static_cast<double>(fields.upper[c](xl));
      scale = std::max({scale, std::fabs(sym), std::fabs(static_cast<double>(fields.lower[c](xl))) / r2});
      if (std::fabs(fd - sym) > worst_abs) {
        worst_abs = std::fabs(fd - sym);
        errors[p].component = c;
      }
    }
    errors[p].worst = worst_abs / scale;
  });
  for (std::size_t p = 0; p < points.size(); ++p) {
    rep.max_error = std::max(rep.max_error, errors[p].worst);
    if (errors[p].worst > tolerance) rep.fail({errors[p].component, "", errors[p].worst, points[p]});
  }
  return rep;
}

/// log2(E(h) / E(h/2)) with E the largest absolute FD error over points and
/// components.
inline double convergence_order(const TensorMap& t, int k, const SamplePlan& plan, double h = 1e-2) {
  const auto fields = detail::compile_laplacians(t, k);
  const auto points = sample_points(plan);
  auto max_error = [&](double step) {
    std::vector<double> worst(points.size(), 0.0);
    parallel_for(points.size(), [&](std::size_t p) {
      const auto xl = detail::widen(points[p]);
      for (std::size_t c = 0; c < fields.lower.size(); ++c) {
        const double fd = fd_laplacian(fields.lower[c], points[p], FDConfig{step, false});
        worst[p] = std::max(worst[p], std::fabs(fd - static_cast<double>(fields.upper[c](xl))));
      }
    });
    return *std::max_element(worst.begin(), worst.end());
  };
  return std::log2(max_error(h) / max_error(h / 2));
}

/// FD check of lap c + |grad u|^2 c = 0 with the exact energy density e;
/// error relative to max(|e|, 1e-9) (components are bounded by 1).
inline ResidualReport numeric_tension(const TensorMap& t, const SamplePlan& plan, const FDConfig& cfg = {},
                                      double tolerance = 1e-5) {
  if (plan.m != t.m) throw std::invalid_argument("sample plan dimension differs from the map");
  ResidualReport rep;
  rep.equation = "harmonic_sphere";
  rep.symbolic = false;
  rep.tolerance = tolerance;
  rep.components_checked = t.size();
  const CompiledField energy(energy_density(t));
  std::vector<CompiledField> fields(t.components.begin(), t.components.end());
  const auto points = sample_points(plan);
  rep.points_checked = points.size();
  std::vector<detail::PointError> errors(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    const auto xl = detail::widen(points[p]);
    const double e = static_cast<double>(energy(xl));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const double v = static_cast<double>(fields[c](xl));
      const double err = std::fabs(fd_laplacian(fields[c], points[p], cfg) + e * v) / std::max(std::fabs(e), 1e-9);
      if (err > errors[p].worst || c == 0) errors[p] = {err, c};
    }
  });
  for (std::size_t p = 0; p < points.size(); ++p) {
    rep.max_error = std::max(rep.max_error, errors[p].worst);
    if (errors[p].worst > tolerance) rep.fail({errors[p].component, "", errors[p].worst, points[p]});
  }
  return rep;
}

enum class ResidualEquation { harmonic, biharmonic, triharmonic };

inline const char* to_string(ResidualEquation e) {
  switch (e) {
    case ResidualEquation::harmonic: return "harmonic";
    case ResidualEquation::biharmonic: return "biharmonic";
    case ResidualEquation::triharmonic: return "triharmonic";
  }
  return "?";
}

enum class Expectation { vanish, nonvanish };

/// Floating-point form of a DeformedResidual at a fixed t.
class CompiledResidual {
 public:
  CompiledResidual(const DeformedResidual& res, const Rational& scale_sq, long double t) : t_(t) {
    if (!(t > 0 && t < 1)) throw std::domain_error("numeric residual needs 0 < t < 1");
    sin_k_ = std::sqrt(t * to_real<long double>(scale_sq));
    cos_ = std::sqrt(1 - t);
    for (const auto& fam : res.block) {
      std::vector<CompiledField> c;
      for (const auto& f : fam) c.emplace_back(f);
      block_.push_back(std::move(c));
    }
    for (const auto& f : res.last) last_.emplace_back(f);
  }

  /// Euclidean norm over all components of the residual at x.
  long double magnitude(std::span<const long double> x) const {
    long double r2 = 0;
    for (long double c : x) r2 += c * c;
    const long double r = std::sqrt(r2);
    long double sq = 0;
    const std::size_t n = block_.empty() ? 0 : block_.front().size();
    for (std::size_t b = 0; b < n; ++b) {
      long double v = 0;
      for (std::size_t k = block_.size(); k-- > 0;) v = v * t_ + block_[k][b].evaluate_with_radius(x, r);
      v *= sin_k_;
      sq += v * v;
    }
    long double v = 0;
    for (std::size_t k = last_.size(); k-- > 0;) v = v * t_ + last_[k].evaluate_with_radius(x, r);
    v *= cos_;
    sq += v * v;
    return std::sqrt(sq);
  }

 private:
  long double t_, sin_k_ = 0, cos_ = 0;
  std::vector<std::vector<CompiledField>> block_;
  std::vector<CompiledField> last_;
};

inline DeformedResidual deformed_residual(const TensorMap& base, ResidualEquation eq) {
  switch (eq) {
    case ResidualEquation::harmonic: return deformed_tension(base);
    case ResidualEquation::biharmonic: return deformed_bitension(base);
    case ResidualEquation::triharmonic: return analyze_triharmonic(base).residual;
  }
  throw std::invalid_argument("unknown equation");
}

/// Residual magnitude of the deformed u^(ell) at t over the sample points.
/// vanish: pass iff every magnitude <= tolerance; nonvanish: pass iff every
/// magnitude > tolerance.
inline ResidualReport numeric_residual(const TensorMap& base, long double t, ResidualEquation eq, const SamplePlan& plan,
                                       Expectation expect, double tolerance = 1e-9) {
  if (plan.m != base.m) throw std::invalid_argument("sample plan dimension differs from the map");
  ResidualReport rep;
  rep.equation = to_string(eq);
  rep.symbolic = false;
  rep.tolerance = tolerance;
  rep.components_checked = base.size() + 1;
  const CompiledResidual res(deformed_residual(base, eq), base.scale_sq, t);
  const auto points = sample_points(plan);
  rep.points_checked = points.size();
  std::vector<double> mags(points.size());
  parallel_for(points.size(), [&](std::size_t p) { mags[p] = static_cast<double>(res.magnitude(detail::widen(points[p]))); });
  rep.min_magnitude = mags.empty() ? 0.0 : mags.front();
  for (std::size_t p = 0; p < points.size(); ++p) {
    rep.max_error = std::max(rep.max_error, mags[p]);
    rep.min_magnitude = std::min(rep.min_magnitude, mags[p]);
    const bool ok = expect == Expectation::vanish ? mags[p] <= tolerance : mags[p] > tolerance;
    if (!ok) rep.fail({0, "", mags[p], points[p]});
  }
  return rep;
}

inline ResidualReport numeric_residual(int ell, int m, long double t, ResidualEquation eq, const SamplePlan& plan,
                                       Expectation expect, double tolerance = 1e-9, ConstructionLimits limits = {}) {
  return numeric_residual(construct_nakauchi(ell, m, limits), t, eq, plan, expect, tolerance);
}

}  // namespace polyharm
