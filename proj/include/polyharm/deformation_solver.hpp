#pragma once

#include "polyharm/constraint_poly.hpp"
#include "polyharm/parallel.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyharm {

enum class AngleKind { alpha, gamma, delta };

inline const char* to_string(AngleKind k) {
  switch (k) {
    case AngleKind::alpha: return "alpha";
    case AngleKind::gamma: return "gamma";
    case AngleKind::delta: return "delta";
  }
  return "?";
}

/// Exact sin^2 of a deformation angle.
struct DeformationParameter {
  QuadExt t;
  AngleKind angle_kind = AngleKind::alpha;

  /// 0 < t < 1, strictly.
  bool admissible() const { return t.sign() > 0 && t < QuadExt(Rational(1)); }
};

enum class Branch { minus, plus, both, none, single };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::minus: return "minus";
    case Branch::plus: return "plus";
    case Branch::both: return "both";
    case Branch::none: return "none";
    case Branch::single: return "single";
  }
  return "?";
}

enum class EquationKind { biharmonic, triharmonic };

struct AdmissibilityRecord {
  EquationKind kind = EquationKind::biharmonic;
  int ell = 1, m = 1;
  bool equation_solvable = false;
  bool map_exists = false;
  Branch which_branch = Branch::none;
  /// Biharmonic: the single value. Triharmonic: minus root then plus root
  /// (both present when real, whether or not admissible).
  std::vector<DeformationParameter> roots;
  bool degenerate = false;
  std::string note;
};

// ---------------------------------------------------------------------------
// Biharmonic

inline Integer nakauchi_eigenvalue(int ell, int m) { return Integer(ell) * (ell + m - 2); }

/// (l(l+m-2) + 2m - 8) / (2 l(l+m-2)).
inline Rational biharmonic_t(int ell, int m) {
  if (ell < 1 || m < 1) throw std::invalid_argument("ell and m must be positive");
  const Integer a = nakauchi_eigenvalue(ell, m);
  if (a == 0) throw std::domain_error("biharmonic condition has a zero denominator at ell=" + std::to_string(ell) +
                                      ", m=" + std::to_string(m));
  return Rational(a + 2 * m - 8) / Rational(2 * a);
}

inline AdmissibilityRecord biharmonic_admissible(int ell, int m) {
  AdmissibilityRecord rec;
  rec.kind = EquationKind::biharmonic;
  rec.ell = ell;
  rec.m = m;
  rec.map_exists = ell <= m;
  if (nakauchi_eigenvalue(ell, m) == 0) {
    rec.degenerate = true;
    rec.note = "u^(1) on R^1 is locally constant; the condition is vacuous";
    return rec;
  }
  DeformationParameter p{QuadExt(biharmonic_t(ell, m)), AngleKind::alpha};
  rec.equation_solvable = p.admissible();
  rec.which_branch = rec.equation_solvable ? Branch::single : Branch::none;
  rec.roots.push_back(p);
  return rec;
}

// ---------------------------------------------------------------------------
// Triharmonic

/// 3 t^2 l^3 (m+l-2)^3 - 2 t l^2 (m+l-2)^2 [4 + (m+l-6)(4+l) + l(m+l-2)]
///   + l(l+2)(l+4)(m+l-2)(m+l-4)(m+l-6).
inline ConstraintPoly triharmonic_poly(int ell, int m) {
  if (ell < 1 || m < 1) throw std::invalid_argument("ell and m must be positive");
  const Integer l = ell, n = m;
  const Integer b = n + l - 2;
  const Integer quad = 3 * l * l * l * b * b * b;
  const Integer lin = -2 * l * l * b * b * (4 + (n + l - 6) * (4 + l) + l * b);
  const Integer cst = l * (l + 2) * (l + 4) * b * (n + l - 4) * (n + l - 6);
  return ConstraintPoly({Rational(cst), Rational(lin), Rational(quad)});
}

/// Quadratic-formula roots, minus branch first. Empty if the discriminant is
/// negative.
inline std::vector<DeformationParameter> triharmonic_roots(int ell, int m) {
  const ConstraintPoly p = triharmonic_poly(ell, m);
  if (p.degree() != 2) throw std::domain_error("triharmonic condition is not quadratic at ell=" + std::to_string(ell) +
                                               ", m=" + std::to_string(m));
  const Rational& a = p.coefficient(2);
  const Rational b = p.coefficient(1), c = p.coefficient(0);
  const Rational disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  const QuadExt root = QuadExt::sqrt_of(disc);
  const QuadExt two_a(Rational(2) * a);
  return {{(QuadExt(-b) - root) / two_a, AngleKind::gamma}, {(QuadExt(-b) + root) / two_a, AngleKind::gamma}};
}

/// 2/3 + 4(m-5)/(3A) -+ (1/3) sqrt(1 + 2(8-m)/A - 8(m^2-10m+22)/A^2),
/// A = l(l+m-2).
inline std::vector<DeformationParameter> triharmonic_roots_closed_form(int ell, int m) {
  const Integer a_int = nakauchi_eigenvalue(ell, m);
  if (a_int == 0) throw std::domain_error("closed form needs l(l+m-2) != 0");
  const Rational a(a_int);
  const Rational centre = Rational(2, 3) + Rational(4 * (m - 5)) / (3 * a);
  const Rational radicand = 1 + Rational(2 * (8 - m)) / a - Rational(8 * (m * m - 10 * m + 22)) / (a * a);
  if (radicand < 0) return {};
  const QuadExt half = QuadExt::sqrt_of(radicand) * QuadExt(Rational(1, 3));
  return {{QuadExt(centre) - half, AngleKind::gamma}, {QuadExt(centre) + half, AngleKind::gamma}};
}

inline AdmissibilityRecord triharmonic_admissible(int ell, int m) {
  AdmissibilityRecord rec;
  rec.kind = EquationKind::triharmonic;
  rec.ell = ell;
  rec.m = m;
  rec.map_exists = ell <= m;
  if (triharmonic_poly(ell, m).degree() != 2) {
    rec.degenerate = true;
    rec.note = "u^(1) on R^1 is locally constant; the condition is vacuous";
    return rec;
  }
  rec.roots = triharmonic_roots(ell, m);
  if (rec.roots.empty()) {
    rec.note = "no real solution";
    return rec;
  }
  const bool minus = rec.roots[0].admissible(), plus = rec.roots[1].admissible();
  rec.equation_solvable = minus || plus;
  rec.which_branch = minus && plus ? Branch::both : minus ? Branch::minus : plus ? Branch::plus : Branch::none;
  return rec;
}

/// Scans 1 <= ell <= ell_max, 1 <= m <= m_max in (ell, m) lexicographic order;
/// require_map drops pairs with ell > m.
inline std::vector<AdmissibilityRecord> enumerate_admissible(EquationKind kind, int ell_max, int m_max,
                                                             bool require_map = true) {
  if (ell_max < 1 || m_max < 1) throw std::invalid_argument("scan bounds must be positive");
  const std::size_t count = static_cast<std::size_t>(ell_max) * static_cast<std::size_t>(m_max);
  std::vector<AdmissibilityRecord> all(count);
  parallel_for(count, [&](std::size_t i) {
    const int ell = static_cast<int>(i / static_cast<std::size_t>(m_max)) + 1;
    const int m = static_cast<int>(i % static_cast<std::size_t>(m_max)) + 1;
    all[i] = kind == EquationKind::biharmonic ? biharmonic_admissible(ell, m) : triharmonic_admissible(ell, m);
  });
  std::vector<AdmissibilityRecord> out;
  for (auto& r : all)
    if (!require_map || r.map_exists) out.push_back(std::move(r));
  return out;
}

inline std::vector<AdmissibilityRecord> solvable_only(std::vector<AdmissibilityRecord> records) {
  std::erase_if(records, [](const AdmissibilityRecord& r) { return !r.equation_solvable; });
  return records;
}

/// Dimensions m in [3, m_max] with no solvable record having ell <= m.
inline std::vector<int> corollary_gaps(const std::vector<AdmissibilityRecord>& records, int m_max) {
  std::vector<int> gaps;
  for (int m = 3; m <= m_max; ++m) {
    bool found = false;
    for (const auto& r : records)
      if (r.m == m && r.map_exists && r.equation_solvable) found = true;
    if (!found) gaps.push_back(m);
  }
  return gaps;
}

}  // namespace polyharm
