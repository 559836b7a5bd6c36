#include "polyharm/deformation_solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace polyharm;

namespace {

constexpr int kEllMax = 10, kMaxM = 30;

// Four-case description of the biharmonic solvability set.
bool biharmonic_table(int ell, int m) {
  return (ell == 1 && m >= 4 && m <= 6) || (ell == 2 && m >= 3) || (ell >= 3 && m >= 2) || (ell >= 4 && m == 1);
}

// Six-case list of the triharmonic solvability set, as stated.
bool triharmonic_statement(int ell, int m) {
  switch (ell) {
    case 1: return m == 6 || m == 7;
    case 2: return m == 3 || (m >= 5 && m <= 11);
    case 3: return m >= 2 && m <= 26;
    case 4: return m >= 3;
    case 5: return m >= 2;
    default: return m >= 1;
  }
}

// Pairs the proof solves on the plus branch although the list omits them.
bool proof_plus_extra(int ell, int m) {
  return (ell == 4 && m == 1) || (ell == 4 && m == 2) || (ell == 5 && m == 1);
}

// Branch attribution from the case analysis for ell <= 3.
bool minus_branch_table(int ell, int m) {
  if (ell == 1) return m == 6 || m == 7;
  if (ell == 2) return m >= 5 && m <= 11;
  if (ell == 3) return m >= 4 && m <= 26;
  return true;
}

bool plus_branch_table(int ell, int m) {
  if (ell == 1) return false;
  if (ell == 2) return m == 3;
  return m == 2 || m == 3;  // ell == 3
}

// Independent evaluation c0 + c1 t + c2 t^2 in QuadExt.
QuadExt substitute(const ConstraintPoly& p, const QuadExt& t) {
  return QuadExt(p.coefficient(0)) + QuadExt(p.coefficient(1)) * t + QuadExt(p.coefficient(2)) * t * t;
}

QuadExt surd(Rational a, Rational b, long d) { return QuadExt(std::move(a), std::move(b), Integer(d)); }

}  // namespace

TEST(Biharmonic, ExactValues) {
  EXPECT_EQ(biharmonic_t(4, 4), Rational(1, 2));
  EXPECT_EQ(biharmonic_t(2, 4), Rational(1, 2));
  EXPECT_EQ(biharmonic_t(3, 1), Rational(0));
  EXPECT_EQ(biharmonic_t(2, 3), Rational(1, 3));
  EXPECT_EQ(biharmonic_t(1, 7), Rational(1));
}

TEST(Biharmonic, ClosedFormsFromCaseAnalysis) {
  for (int m = 2; m <= kMaxM; ++m) EXPECT_EQ(biharmonic_t(1, m), Rational(1, 2) + Rational(m - 4) / (m - 1));
  for (int m = 1; m <= kMaxM; ++m) EXPECT_EQ(biharmonic_t(2, m), 1 - Rational(2) / m);
  for (int ell = 3; ell <= kEllMax; ++ell)
    for (int m = 1; m <= kMaxM; ++m)
      EXPECT_EQ(biharmonic_t(ell, m), Rational(1, 2) + Rational(m - 4) / (ell * (ell + m - 2)));
}

TEST(Biharmonic, Records) {
  const auto r17 = biharmonic_admissible(1, 7);
  EXPECT_FALSE(r17.equation_solvable);
  ASSERT_EQ(r17.roots.size(), 1u);
  EXPECT_EQ(r17.roots[0].t, QuadExt(Rational(1)));

  const auto r23 = biharmonic_admissible(2, 3);
  EXPECT_TRUE(r23.equation_solvable);
  EXPECT_TRUE(r23.map_exists);
  EXPECT_EQ(r23.roots[0].t, QuadExt(Rational(1, 3)));
  EXPECT_EQ(r23.roots[0].angle_kind, AngleKind::alpha);
  EXPECT_EQ(r23.which_branch, Branch::single);

  const auto r51 = biharmonic_admissible(5, 1);
  EXPECT_TRUE(r51.equation_solvable);
  EXPECT_FALSE(r51.map_exists);

  EXPECT_FALSE(biharmonic_admissible(3, 1).equation_solvable);  // t = 0
}

TEST(Biharmonic, DegeneratePair) {
  EXPECT_THROW(biharmonic_t(1, 1), std::domain_error);
  const auto r = biharmonic_admissible(1, 1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.equation_solvable);
  EXPECT_THROW(biharmonic_t(0, 3), std::invalid_argument);
}

TEST(Biharmonic, SolvabilityTable) {
  const auto all = enumerate_admissible(EquationKind::biharmonic, kEllMax, kMaxM, false);
  ASSERT_EQ(all.size(), static_cast<std::size_t>(kEllMax * kMaxM));
  for (const auto& r : all) EXPECT_EQ(r.equation_solvable, biharmonic_table(r.ell, r.m)) << r.ell << "," << r.m;
}

TEST(Triharmonic, PolynomialExamples) {
  EXPECT_EQ(triharmonic_poly(1, 6), ConstraintPoly({Rational(225), Rational(-700), Rational(375)}));
  EXPECT_EQ(triharmonic_poly(1, 7), ConstraintPoly({Rational(720), Rational(-1440), Rational(648)}));
  EXPECT_GT(triharmonic_poly(1, 6).coefficient(0), 0);
  EXPECT_TRUE(triharmonic_poly(1, 1).is_zero());
}

TEST(Triharmonic, PolynomialByDirectSubstitution) {
  // coefficients recomputed with plain integers
  for (int ell = 1; ell <= 8; ++ell)
    for (int m = 1; m <= 12; ++m) {
      const long l = ell, b = m + ell - 2;
      const long quad = 3 * l * l * l * b * b * b;
      const long lin = -2 * l * l * b * b * (4 + (m + l - 6) * (4 + l) + l * b);
      const long cst = l * (l + 2) * (l + 4) * b * (m + l - 4) * (m + l - 6);
      const ConstraintPoly p = triharmonic_poly(ell, m);
      EXPECT_EQ(p.coefficient(2), quad);
      EXPECT_EQ(p.coefficient(1), lin);
      EXPECT_EQ(p.coefficient(0), cst);
    }
}

TEST(Triharmonic, RootsOfFirstOrderMaps) {
  const auto r16 = triharmonic_roots(1, 6);
  ASSERT_EQ(r16.size(), 2u);
  EXPECT_EQ(r16[0].t, surd(Rational(14, 15), Rational(-1, 15), 61));
  EXPECT_EQ(r16[1].t, surd(Rational(14, 15), Rational(1, 15), 61));
  EXPECT_NEAR(r16[0].t.to_double(), 0.41267, 5e-5);
  EXPECT_TRUE(r16[0].admissible());
  EXPECT_FALSE(r16[1].admissible());

  const auto r17 = triharmonic_roots(1, 7);
  ASSERT_EQ(r17.size(), 2u);
  EXPECT_EQ(r17[0].t, surd(Rational(10, 9), Rational(-1, 9), 10));
  EXPECT_NEAR(r17[0].t.to_double(), (10 - std::sqrt(10.0)) / 9, 1e-15);
  EXPECT_TRUE(r17[0].admissible());

  const auto r15 = triharmonic_admissible(1, 5);
  EXPECT_FALSE(r15.equation_solvable);
  for (const auto& p : r15.roots) EXPECT_FALSE(p.admissible());
}

TEST(Triharmonic, Records) {
  const auto r23 = triharmonic_admissible(2, 3);
  EXPECT_TRUE(r23.equation_solvable);
  EXPECT_EQ(r23.which_branch, Branch::plus);
  const auto r326 = triharmonic_admissible(3, 26);
  EXPECT_TRUE(r326.equation_solvable);
  EXPECT_EQ(r326.which_branch, Branch::minus);
  EXPECT_FALSE(triharmonic_admissible(3, 27).equation_solvable);
  EXPECT_FALSE(triharmonic_admissible(1, 8).equation_solvable);
  EXPECT_TRUE(triharmonic_admissible(1, 1).degenerate);
  EXPECT_THROW(triharmonic_roots(1, 1), std::domain_error);
}

TEST(Triharmonic, RootsAreExactZeros) {
  for (int ell = 1; ell <= kEllMax; ++ell)
    for (int m = 1; m <= kMaxM; ++m) {
      if (ell == 1 && m == 1) continue;
      const ConstraintPoly p = triharmonic_poly(ell, m);
      for (const auto& r : triharmonic_roots(ell, m)) {
        EXPECT_EQ(substitute(p, r.t), QuadExt()) << ell << "," << m;
        EXPECT_EQ(p(r.t), QuadExt());
      }
    }
}

TEST(Triharmonic, ClosedFormAgreesWithQuadraticFormula) {
  for (int ell = 1; ell <= 30; ++ell)
    for (int m = 1; m <= 30; ++m) {
      if (ell == 1 && m == 1) continue;
      const auto a = triharmonic_roots(ell, m), b = triharmonic_roots_closed_form(ell, m);
      ASSERT_EQ(a.size(), b.size()) << ell << "," << m;
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].t, b[i].t) << ell << "," << m;
    }
}

TEST(Triharmonic, FloatingRootsAgree) {
  for (int ell = 1; ell <= kEllMax; ++ell)
    for (int m = 1; m <= kMaxM; ++m) {
      if (ell == 1 && m == 1) continue;
      const ConstraintPoly p = triharmonic_poly(ell, m);
      const double a = p.coefficient(2).get_d(), b = p.coefficient(1).get_d(), c = p.coefficient(0).get_d();
      const double disc = b * b - 4 * a * c;
      const auto roots = triharmonic_roots(ell, m);
      if (disc < -1e-9 * b * b) {
        EXPECT_TRUE(roots.empty());
        continue;
      }
      ASSERT_EQ(roots.size(), 2u);
      const double s = std::sqrt(std::max(disc, 0.0));
      EXPECT_NEAR(roots[0].t.to_double(), (-b - s) / (2 * a), 1e-6);
      EXPECT_NEAR(roots[1].t.to_double(), (-b + s) / (2 * a), 1e-6);
    }
}

TEST(Triharmonic, SolvabilityTableMatchesStatementPlusProof) {
  const auto all = enumerate_admissible(EquationKind::triharmonic, kEllMax, kMaxM, false);
  ASSERT_EQ(all.size(), static_cast<std::size_t>(kEllMax * kMaxM));
  int disagreements_with_statement = 0;
  for (const auto& r : all) {
    EXPECT_EQ(r.equation_solvable, triharmonic_statement(r.ell, r.m) || proof_plus_extra(r.ell, r.m))
        << r.ell << "," << r.m;
    if (r.equation_solvable != triharmonic_statement(r.ell, r.m)) {
      ++disagreements_with_statement;
      EXPECT_TRUE(proof_plus_extra(r.ell, r.m));
      EXPECT_FALSE(r.map_exists);
    }
  }
  EXPECT_EQ(disagreements_with_statement, 3);
}

TEST(Triharmonic, BranchAttribution) {
  for (int ell = 1; ell <= kEllMax; ++ell)
    for (int m = 1; m <= kMaxM; ++m) {
      if (ell == 1 && m == 1) continue;
      const auto r = triharmonic_admissible(ell, m);
      const bool minus = !r.roots.empty() && r.roots[0].admissible();
      const bool plus = !r.roots.empty() && r.roots[1].admissible();
      if (ell <= 3 || !proof_plus_extra(ell, m)) {
        EXPECT_EQ(minus, minus_branch_table(ell, m)) << ell << "," << m;
      }
      if (ell <= 3) {
        EXPECT_EQ(plus, plus_branch_table(ell, m)) << ell << "," << m;
      }
      if (proof_plus_extra(ell, m)) {
        EXPECT_TRUE(plus) << ell << "," << m;
      }
    }
}

TEST(Triharmonic, LargeEllMinusRootBounds) {
  // ell >= 4, m >= 8: 1/3 < t_minus < 1
  for (int ell = 4; ell <= kEllMax; ++ell)
    for (int m = 8; m <= kMaxM; ++m) {
      const auto roots = triharmonic_roots(ell, m);
      ASSERT_EQ(roots.size(), 2u);
      EXPECT_TRUE(roots[0].t > QuadExt(Rational(1, 3)));
      EXPECT_TRUE(roots[0].t < QuadExt(Rational(1)));
    }
}

TEST(Admissibility, StrictInterval) {
  EXPECT_FALSE((DeformationParameter{QuadExt(Rational(0)), AngleKind::alpha}.admissible()));
  EXPECT_FALSE((DeformationParameter{QuadExt(Rational(1)), AngleKind::gamma}.admissible()));
  EXPECT_TRUE((DeformationParameter{QuadExt(Rational(1, 1000)), AngleKind::gamma}.admissible()));
  EXPECT_TRUE((DeformationParameter{surd(Rational(1), Rational(-1, 1000000), 2), AngleKind::gamma}.admissible()));
  EXPECT_FALSE((DeformationParameter{surd(Rational(1), Rational(1, 1000000), 2), AngleKind::gamma}.admissible()));
}

TEST(Enumeration, ExamplesAndFiltering) {
  const auto bih = enumerate_admissible(EquationKind::biharmonic, 3, 3);
  auto find = [](const std::vector<AdmissibilityRecord>& v, int ell, int m) -> const AdmissibilityRecord* {
    for (const auto& r : v)
      if (r.ell == ell && r.m == m) return &r;
    return nullptr;
  };
  ASSERT_NE(find(bih, 2, 3), nullptr);
  EXPECT_TRUE(find(bih, 2, 3)->equation_solvable);
  EXPECT_FALSE(find(solvable_only(bih), 1, 3));
  for (const auto& r : bih) EXPECT_LE(r.ell, r.m);
  const auto tri = solvable_only(enumerate_admissible(EquationKind::triharmonic, 3, 3));
  ASSERT_NE(find(tri, 2, 3), nullptr);
  EXPECT_THROW(enumerate_admissible(EquationKind::biharmonic, 0, 3), std::invalid_argument);
}

TEST(Enumeration, LexicographicOrderAndDeterminism) {
  const auto a = enumerate_admissible(EquationKind::triharmonic, kEllMax, kMaxM, false);
  const auto b = enumerate_admissible(EquationKind::triharmonic, kEllMax, kMaxM, false);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].ell, static_cast<int>(i) / kMaxM + 1);
    EXPECT_EQ(a[i].m, static_cast<int>(i) % kMaxM + 1);
    EXPECT_EQ(a[i].equation_solvable, b[i].equation_solvable);
    ASSERT_EQ(a[i].roots.size(), b[i].roots.size());
    for (std::size_t k = 0; k < a[i].roots.size(); ++k) EXPECT_EQ(a[i].roots[k].t, b[i].roots[k].t);
  }
}

TEST(Enumeration, EveryDimensionHasAMap) {
  for (auto kind : {EquationKind::biharmonic, EquationKind::triharmonic}) {
    const auto recs = enumerate_admissible(kind, kMaxM, kMaxM);
    EXPECT_TRUE(corollary_gaps(recs, kMaxM).empty());
  }
  // without ell = 2 the biharmonic statement still holds through ell = 3
  auto recs = enumerate_admissible(EquationKind::biharmonic, kMaxM, kMaxM);
  std::erase_if(recs, [](const AdmissibilityRecord& r) { return r.ell == 2; });
  EXPECT_EQ(corollary_gaps(recs, kMaxM), std::vector<int>{});
  // a scan capped at ell = 1 leaves gaps
  EXPECT_EQ(corollary_gaps(enumerate_admissible(EquationKind::biharmonic, 1, 8), 8), (std::vector<int>{3, 7, 8}));
}
