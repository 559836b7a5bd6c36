#pragma once

#include "polyharm/deformation_solver.hpp"
#include "polyharm/nakauchi.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polyharm {

/// Residual of a deformed map q = (sin * K W, cos) written as a polynomial in
/// t = sin^2 with field coefficients.
///
/// The block part equals sin * K * sum_k t^k block[k][b]; the constant last
/// component's part equals cos * sum_k t^k last[k]. Odd powers of sin are
/// pulled out once, so every stored coefficient is a rational field.
struct DeformedResidual {
  int m = 1;
  std::vector<std::vector<RadialScalar>> block;
  std::vector<RadialScalar> last;

  std::size_t components() const { return block.empty() ? 0 : block.front().size(); }
};

/// q = (sin * u, cos) with sin^2 = t.
struct DeformedMap {
  TensorMap base;
  QuadExt t;
};

namespace detail {

/// (p_k, q_k) with t^k = p_k + q_k sqrt(D).
inline std::vector<std::pair<Rational, Rational>> power_parts(const QuadExt& t, std::size_t count) {
  std::vector<std::pair<Rational, Rational>> out;
  QuadExt p(Rational(1));
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(p.rational_part(), p.surd_coefficient());
    p = p * t;
  }
  return out;
}

inline std::pair<RadialScalar, RadialScalar> evaluate_coefficients(const std::vector<const RadialScalar*>& coeffs,
                                                                   const std::vector<std::pair<Rational, Rational>>& parts) {
  const int m = coeffs.front()->dimension();
  const int degree = coeffs.front()->degree();
  RadialSum rational_part(m, degree), surd_part(m, degree);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k]->is_zero()) continue;
    if (parts[k].first != 0) rational_part.add(coeffs[k]->scaled(parts[k].first));
    if (parts[k].second != 0) surd_part.add(coeffs[k]->scaled(parts[k].second));
  }
  return {rational_part.result(), surd_part.result()};
}

}  // namespace detail

/// Residual fields of component b at the exact parameter t: (rational part,
/// surd part). The true residual vanishes iff both do.
inline std::pair<RadialScalar, RadialScalar> block_component_at(const DeformedResidual& res, std::size_t b,
                                                                const QuadExt& t) {
  std::vector<const RadialScalar*> coeffs;
  for (const auto& fam : res.block) coeffs.push_back(&fam[b]);
  return detail::evaluate_coefficients(coeffs, detail::power_parts(t, coeffs.size()));
}

inline bool block_vanishes_at(const DeformedResidual& res, const QuadExt& t) {
  for (std::size_t b = 0; b < res.components(); ++b) {
    auto [a, s] = block_component_at(res, b, t);
    if (!a.is_zero() || !s.is_zero()) return false;
  }
  return true;
}

inline bool last_vanishes_at(const DeformedResidual& res, const QuadExt& t) {
  if (res.last.empty()) return true;
  std::vector<const RadialScalar*> coeffs;
  for (const auto& f : res.last) coeffs.push_back(&f);
  auto [a, s] = detail::evaluate_coefficients(coeffs, detail::power_parts(t, coeffs.size()));
  return a.is_zero() && s.is_zero();
}

inline bool vanishes_at(const DeformedResidual& res, const QuadExt& t) {
  return block_vanishes_at(res, t) && last_vanishes_at(res, t);
}

/// kappa with family[b] == kappa * reference[b] for every b, if it exists.
inline std::optional<Rational> proportionality(const std::vector<RadialScalar>& family,
                                               const std::vector<RadialScalar>& reference) {
  if (family.size() != reference.size()) throw std::invalid_argument("family size mismatch");
  std::optional<Rational> kappa;
  for (std::size_t b = 0; b < family.size(); ++b) {
    if (reference[b].is_zero()) {
      if (!family[b].is_zero()) return std::nullopt;
      continue;
    }
    if (!kappa) {
      if (family[b].is_zero()) {
        kappa = Rational(0);
      } else {
        if (family[b].radial_exponent() != reference[b].radial_exponent()) return std::nullopt;
        kappa = family[b].numerator().leading_coefficient() / reference[b].numerator().leading_coefficient();
      }
    }
    if (!(family[b] == reference[b].scaled(*kappa))) return std::nullopt;
  }
  return kappa.value_or(Rational(0));
}

/// W_b / r^(2k) for every component.
inline std::vector<RadialScalar> base_over_radius(const TensorMap& base, int radial_exponent) {
  const RadialScalar w = RadialScalar::inverse_radius_power(base.m, radial_exponent);
  std::vector<RadialScalar> out;
  out.reserve(base.size());
  for (const auto& c : base.components) out.push_back(c * w);
  return out;
}

/// If every block coefficient factors as c_k * W / r^e, returns c(t) so that
/// the block residual equals c(t) * q / r^e.
inline std::optional<ConstraintPoly> factor_block(const DeformedResidual& res, const TensorMap& base, int radial_exponent) {
  const auto ref = base_over_radius(base, radial_exponent);
  std::vector<Rational> coeffs;
  for (const auto& fam : res.block) {
    auto k = proportionality(fam, ref);
    if (!k) return std::nullopt;
    coeffs.push_back(*k);
  }
  return ConstraintPoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Tension

/// Exact residual of lap q + |grad q|^2 q for q = (sin u, cos).
inline DeformedResidual deformed_tension(const TensorMap& base) {
  DeformedResidual res;
  res.m = base.m;
  const RadialScalar e = energy_density(base);  // already includes K^2
  std::vector<RadialScalar> f0, f1;
  for (const auto& w : base.components) {
    f0.push_back(laplacian(w));
    f1.push_back(e * w);
  }
  res.block = {std::move(f0), std::move(f1)};
  res.last = {RadialScalar::zero(base.m, -2), e};
  return res;
}

/// Exact tension residual of an undeformed map, componentwise.
inline ResidualReport tension_residual(const TensorMap& t) {
  ResidualReport rep = verify_harmonicity(t);
  rep.equation = "tension";
  return rep;
}

/// Exact tension residual of a deformed map at its parameter t.
inline ResidualReport tension_residual(const DeformedMap& q) {
  ResidualReport rep;
  rep.equation = "tension";
  const DeformedResidual res = deformed_tension(q.base);
  rep.components_checked = res.components() + 1;
  const bool sin_zero = q.t.sign() == 0;
  const bool cos_zero = (QuadExt(Rational(1)) - q.t).sign() == 0;
  if (!sin_zero) {
    for (std::size_t b = 0; b < res.components(); ++b) {
      auto [a, s] = block_component_at(res, b, q.t);
      if (!a.is_zero() || !s.is_zero())
        rep.fail({b, a.to_string() + (s.is_zero() ? "" : " + sqrt(D)*(" + s.to_string() + ")"), 0.0, {}});
    }
  }
  if (!cos_zero && !last_vanishes_at(res, q.t)) rep.fail({res.components(), "nonzero", 0.0, {}});
  return rep;
}

/// True iff the deformed map at 0 < t < 1 is not harmonic.
inline bool properness_check(const TensorMap& base, const QuadExt& t) {
  if (t.sign() <= 0 || !(t < QuadExt(Rational(1)))) throw std::domain_error("properness_check needs 0 < t < 1");
  return !vanishes_at(deformed_tension(base), t);
}

inline bool properness_check(int ell, int m, const QuadExt& t, ConstructionLimits limits = {}) {
  return properness_check(construct_nakauchi(ell, m, limits), t);
}

/// An undeformed map is proper iff it is not harmonic.
inline bool properness_check(const TensorMap& map) { return !verify_harmonicity(map).pass; }

// ---------------------------------------------------------------------------
// Biharmonic

/// Residual of the sphere-target biharmonic equation
///   lap^2 q + 2 div(|grad q|^2 grad q) - (<lap^2 q, q> - 2 |grad q|^4) q
/// for q = (sin K W, cos).
inline DeformedResidual deformed_bitension(const TensorMap& base) {
  const int m = base.m;
  const std::size_t n = base.size();
  const Rational& k2 = base.scale_sq;
  DeformedResidual res;
  res.m = m;

  std::vector<RadialScalar> grad_sq(n, RadialScalar::zero(m, -2)), lap2(n, RadialScalar::zero(m, -4));
  parallel_for(n, [&](std::size_t b) {
    grad_sq[b] = gradient_dot(base.components[b], base.components[b]);
    lap2[b] = iterated_laplacian(base.components[b], 2);
  });
  RadialSum e_sum(m, -2), s1_sum(m, -4);
  for (std::size_t b = 0; b < n; ++b) {
    e_sum.add(grad_sq[b]);
    s1_sum.add(lap2[b] * base.components[b]);
  }
  const RadialScalar e = e_sum.result();    // unscaled |grad W|^2
  const RadialScalar s1 = s1_sum.result();  // unscaled <lap^2 W, W>
  const RadialScalar e2 = e * e;

  std::vector<RadialScalar> f0(n, RadialScalar::zero(m, -4)), f1 = f0, f2 = f0;
  parallel_for(n, [&](std::size_t b) {
    const RadialScalar& w = base.components[b];
    RadialVector flux;
    for (int j = 0; j < m; ++j) flux.push_back(e * derive(w, j));
    f0[b] = lap2[b];
    f1[b] = (divergence(flux).scaled(Rational(2)) - s1 * w).scaled(k2);
    f2[b] = (e2 * w).scaled(Rational(2) * k2 * k2);
  });
  res.block = {std::move(f0), std::move(f1), std::move(f2)};
  res.last = {RadialScalar::zero(m, -4), (-s1).scaled(k2), e2.scaled(Rational(2) * k2 * k2)};
  return res;
}

/// Reduced biharmonicity condition for q = (sin v, cos) with v harmonic:
///   (lap|grad v|^2) v + 2(1-t) grad|grad v|^2 . grad v - (1-2t)|grad v|^4 v.
struct BitensionAnalysis {
  int ell = 1, m = 1;
  DeformedResidual reduced;              // overall factor K (from v = K W), no sin
  bool middle_term_vanishes = false;     // grad|grad v|^2 . grad v == 0
  std::optional<ConstraintPoly> poly;    // reduced residual = poly(t) * v / r^4
  std::optional<Rational> root;
  DeformedResidual full;                 // sphere-target equation on q
  std::optional<ConstraintPoly> full_block_poly;  // full block = poly(t) * q / r^4
};

inline BitensionAnalysis analyze_biharmonic(const TensorMap& base) {
  const int m = base.m;
  const std::size_t n = base.size();
  const Rational& k2 = base.scale_sq;
  BitensionAnalysis out;
  out.ell = base.ell;
  out.m = m;

  std::vector<RadialScalar> grad_sq(n, RadialScalar::zero(m, -2));
  parallel_for(n, [&](std::size_t b) { grad_sq[b] = gradient_dot(base.components[b], base.components[b]); });
  RadialSum e_sum(m, -2);
  for (const auto& g : grad_sq) e_sum.add(g);
  const RadialScalar e = e_sum.result();
  const RadialScalar lap_e = laplacian(e);
  const RadialScalar e2 = e * e;

  std::vector<RadialScalar> middle(n, RadialScalar::zero(m, -4)), f0 = middle, f1 = middle;
  parallel_for(n, [&](std::size_t b) {
    const RadialScalar& w = base.components[b];
    middle[b] = gradient_dot(e, w);
    f0[b] = (lap_e * w + middle[b].scaled(Rational(2))).scaled(k2) - (e2 * w).scaled(k2 * k2);
    f1[b] = middle[b].scaled(Rational(-2) * k2) + (e2 * w).scaled(Rational(2) * k2 * k2);
  });
  out.middle_term_vanishes = std::all_of(middle.begin(), middle.end(), [](const RadialScalar& f) { return f.is_zero(); });
  out.reduced.m = m;
  out.reduced.block = {std::move(f0), std::move(f1)};
  out.poly = factor_block(out.reduced, base, 4);
  if (out.poly && out.poly->degree() == 1)
    out.root = -out.poly->coefficient(0) / out.poly->coefficient(1);

  out.full = deformed_bitension(base);
  out.full_block_poly = factor_block(out.full, base, 4);
  return out;
}

/// Linear polynomial whose root is the biharmonicity condition for the
/// deformed u^(ell); std::nullopt if the residual does not factor.
inline std::optional<ConstraintPoly> bitension_residual_poly(int ell, int m, ConstructionLimits limits = {}) {
  return analyze_biharmonic(construct_nakauchi(ell, m, limits)).poly;
}

// ---------------------------------------------------------------------------
// Triharmonic

inline constexpr std::size_t kTritensionTerms = 12;

struct TermEntry {
  std::string name;
  std::string expression;
  int degree_in_q = 1;
  int sign_in_p3 = 1;
  std::optional<Rational> kappa;       // term on W equals kappa * W / r^6
  std::optional<ConstraintPoly> computed;  // term on q = computed(t) * q / r^6
  ConstraintPoly printed;
  bool matches = false;
};

struct TermTable {
  int ell = 1, m = 1;
  std::vector<TermEntry> entries;
  bool all_match() const {
    return std::all_of(entries.begin(), entries.end(), [](const TermEntry& e) { return e.matches; });
  }
};

/// Printed closed forms, as coefficients of q / r^6 in t = sin^2.
inline std::array<ConstraintPoly, kTritensionTerms> printed_tritension_terms(int ell, int m) {
  const Integer l = ell, n = m;
  const Integer A = l * (n + l - 2);  // ell(m+ell-2)
  const Integer a2 = A * A;
  const Integer a3 = a2 * A;
  const Integer lap3 = -(l * (l + 2) * (l + 4) * (n + l - 2) * (n + l - 4) * (n + l - 6));
  auto lin = [](const Integer& c) { return ConstraintPoly({Rational(0), Rational(c)}); };
  const ConstraintPoly zero;
  return {
      ConstraintPoly({Rational(lap3)}),
      zero,
      zero,
      lin(2 * a2 * (n - 4)),
      ConstraintPoly({Rational(0), Rational(0), Rational(-a3)}),
      zero,
      zero,
      lin(-2 * a2 * (n - 4)),
      zero,
      lin(4 * a2),
      lin(a2 * (n + l - 6) * (4 + l)),
      lin(-a3),
  };
}

struct TritensionAnalysis {
  TermTable table;
  DeformedResidual residual;             // P3(q) = sin K sum_k t^k block[k]
  std::optional<ConstraintPoly> poly;    // P3(q) = poly(t) * q / r^6
  std::optional<Rational> proportionality;  // poly == k * triharmonic_poly
};

/// Evaluates the twelve terms of P3 on the base fields W (q replaced by W),
/// then lifts them to q = sin K W by homogeneity: a term of degree d in q picks
/// up (sin K)^d = sin K (t K^2)^((d-1)/2).
inline TritensionAnalysis analyze_triharmonic(const TensorMap& base) {
  const int m = base.m;
  const std::size_t n = base.size();
  const auto& W = base.components;
  const Rational& k2 = base.scale_sq;

  // Per-component derivatives.
  std::vector<RadialVector> grad(n), grad_lap(n);
  std::vector<RadialScalar> lap1(n, RadialScalar::zero(m, -2)), lap2(n, RadialScalar::zero(m, -4)),
      lap3(n, RadialScalar::zero(m, -6));
  parallel_for(n, [&](std::size_t b) {
    grad[b] = gradient(W[b]);
    lap1[b] = laplacian(W[b]);
    lap2[b] = laplacian(lap1[b]);
    lap3[b] = laplacian(lap2[b]);
    grad_lap[b] = gradient(lap1[b]);
  });

  // Contractions over the target index.
  RadialSum e_sum(m, -2), s1_sum(m, -4), s2_sum(m, -4), lapsq_sum(m, -4);
  std::vector<RadialSum> v_sum(static_cast<std::size_t>(m), RadialSum(m, -3)), u_sum = v_sum;
  for (std::size_t b = 0; b < n; ++b) {
    e_sum.add(dot(grad[b], grad[b]));
    s1_sum.add(lap2[b] * W[b]);
    s2_sum.add(dot(grad_lap[b], grad[b]));
    lapsq_sum.add(lap1[b] * lap1[b]);
    for (int j = 0; j < m; ++j) {
      v_sum[j].add(lap1[b] * grad[b][j]);
      u_sum[j].add(grad_lap[b][j] * W[b]);
    }
  }
  const RadialScalar e = e_sum.result();          // |grad q|^2
  const RadialScalar s1 = s1_sum.result();        // <lap^2 q, q>
  const RadialScalar s2 = s2_sum.result();        // <grad lap q, grad q>
  const RadialScalar lapsq = lapsq_sum.result();  // |lap q|^2
  RadialVector v, u;                              // <lap q, d_j q>, <d_j lap q, q>
  for (int j = 0; j < m; ++j) {
    v.push_back(v_sum[j].result());
    u.push_back(u_sum[j].result());
  }
  const RadialScalar lap_e = laplacian(e);
  const RadialScalar e2 = e * e;
  const RadialVector grad_s1 = gradient(s1), grad_s2 = gradient(s2);
  const RadialScalar div_u = divergence(u);

  auto contract = [&](const RadialVector& a, const RadialVector& bvec) { return dot(a, bvec); };
  auto scaled_flux = [&](const RadialScalar& s, const RadialVector& g) {
    RadialVector out;
    for (const auto& gj : g) out.push_back(s * gj);
    return out;
  };

  std::array<std::vector<RadialScalar>, kTritensionTerms> terms;
  for (auto& t : terms) t.assign(n, RadialScalar::zero(m, -6));
  parallel_for(n, [&](std::size_t b) {
    const RadialVector& g = grad[b];
    terms[0][b] = lap3[b];
    terms[1][b] = laplacian(contract(v, g));
    RadialVector vl;
    for (int j = 0; j < m; ++j) vl.push_back(v[j] * lap1[b]);
    terms[2][b] = divergence(vl);
    terms[3][b] = divergence(scaled_flux(lap_e, g));
    terms[4][b] = divergence(scaled_flux(e2, g));
    terms[5][b] = contract(grad_s1, g);
    terms[6][b] = contract(grad_s2, g);
    terms[7][b] = div_u * lap1[b];
    terms[8][b] = laplacian(contract(u, g));
    terms[9][b] = contract(u, grad_lap[b]);
    terms[10][b] = laplacian(lap1[b] * e);
    terms[11][b] = divergence(scaled_flux(lapsq, g));
  });

  static const std::array<const char*, kTritensionTerms> names = {
      "lap3_q",          "lap_vq_grad_q",   "div_vq_lap_q",       "div_lap_energy_grad_q",
      "div_energy2_grad_q", "grad_s1_grad_q", "grad_s2_grad_q",    "div_uq_lap_q",
      "lap_uq_grad_q",   "uq_grad_lap_q",   "lap_lap_q_energy",   "div_lapsq_grad_q"};
  static const std::array<const char*, kTritensionTerms> expressions = {
      "Δ³q",
      "Δ(⟨Δq,∇q⟩∇q)",
      "∇(⟨Δq,∇q⟩Δq)",
      "∇((Δ|∇q|²)∇q)",
      "∇(|∇q|⁴∇q)",
      "(∇⟨Δ²q,q⟩)∇q",
      "∇(⟨∇Δq,∇q⟩)∇q",
      "(∇⟨∇Δq,q⟩)Δq",
      "Δ(⟨∇Δq,q⟩∇q)",
      "⟨∇Δq,q⟩∇Δq",
      "Δ(Δq|∇q|²)",
      "∇(|Δq|²∇q)"};
  static constexpr std::array<int, kTritensionTerms> degrees = {1, 3, 3, 3, 5, 3, 3, 3, 3, 3, 3, 3};
  static constexpr std::array<int, kTritensionTerms> p3_signs = {-1, 1, -1, 2, -3, 4, 4, 2, 2, -2, -2, 2};

  TritensionAnalysis out;
  out.table.ell = base.ell;
  out.table.m = m;
  const auto printed = printed_tritension_terms(base.ell, m);
  const auto ref = base_over_radius(base, 6);

  out.residual.m = m;
  out.residual.block.assign(3, std::vector<RadialScalar>(n, RadialScalar::zero(m, -6)));
  for (std::size_t i = 0; i < kTritensionTerms; ++i) {
    const int power = (degrees[i] - 1) / 2;
    const Rational lift = rational_pow(k2, static_cast<unsigned>(power));
    TermEntry entry;
    entry.name = names[i];
    entry.expression = expressions[i];
    entry.degree_in_q = degrees[i];
    entry.sign_in_p3 = p3_signs[i];
    entry.printed = printed[i];
    entry.kappa = proportionality(terms[i], ref);
    if (entry.kappa) {
      std::vector<Rational> c(static_cast<std::size_t>(power) + 1, Rational(0));
      c.back() = *entry.kappa * lift;
      entry.computed = ConstraintPoly(std::move(c));
      entry.matches = *entry.computed == entry.printed;
    }
    out.table.entries.push_back(std::move(entry));

    const Rational weight = lift * p3_signs[i];
    for (std::size_t b = 0; b < n; ++b)
      out.residual.block[static_cast<std::size_t>(power)][b] += terms[i][b].scaled(weight);
  }
  out.poly = factor_block(out.residual, base, 6);
  if (out.poly) out.proportionality = out.poly->proportionality_to(triharmonic_poly(base.ell, m));
  return out;
}

inline TermTable tritension_terms(int ell, int m, ConstructionLimits limits = {}) {
  return analyze_triharmonic(construct_nakauchi(ell, m, limits)).table;
}

inline std::optional<ConstraintPoly> tritension_residual_poly(int ell, int m, ConstructionLimits limits = {}) {
  return analyze_triharmonic(construct_nakauchi(ell, m, limits)).poly;
}

}  // namespace polyharm
