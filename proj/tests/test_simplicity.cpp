#include "jacdec/simplicity.hpp"
#include "property_checks.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace jacdec;
using namespace jacdec::test;

namespace {

std::vector<Rational> q(std::initializer_list<Rational> v) { return v; }

bool proportional(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if ((u[i] == 0) != (v[i] == 0))
      return false;
    if (u[i] == 0)
      continue;
    Rational r = u[i] / v[i];
    if (ratio && *ratio != r)
      return false;
    ratio = r;
  }
  return ratio.has_value();
}

// Expected rows for (1/2) Z1 in the power basis. The second carries +a24;
// the sign-flipped variant with -a24 is not satisfied by the family.
const std::vector<std::vector<Rational>> kExpectedRows = {
    q({0, 0, 1, 1, 0, 0}), q({1, -1, -1, 0, 1, 0}), q({1, -1, 2, 1, 1, 0}), q({2, -3, 1, 1, 3, 1})};
const std::vector<Rational> kSignFlippedRow = q({1, -1, -1, 0, -1, 0});

std::vector<Rational> family_point(const Rational& mu) {
  return {mu, (mu - 1) / 2, 0, 0, -(1 + mu) / 2, mu};
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

CriterionSystem raw_system(const RatMatrix& linear, std::vector<Rational> rhs) {
  FieldPtr f = CyclotomicField::make(3);
  CycNum z(f, 0);
  return {z, z, z, z, linear, std::move(rhs)};
}

} // namespace

TEST(CriterionSystem, MatchesTheExpectedRows) {
  CriterionSystem s = build_system(z_tilde(1));
  ASSERT_EQ(s.linear.rows(), 5u);
  EXPECT_EQ(s.linear.row(0), q({0, 1, 0, 0, 1, 0}));
  EXPECT_EQ(s.rhs, q({-1, 0, 0, 0, 0}));
  // each expected row matches exactly one computed row up to scaling
  std::vector<bool> used(5, false);
  for (const auto& shown : kExpectedRows) {
    std::size_t hits = 0;
    for (std::size_t r = 1; r < 5; ++r)
      if (!used[r] && proportional(s.linear.row(r), shown)) {
        used[r] = true;
        ++hits;
        break;
      }
    EXPECT_EQ(hits, 1u);
  }
  for (std::size_t r = 1; r < 5; ++r)
    EXPECT_FALSE(proportional(s.linear.row(r), kSignFlippedRow));
}

TEST(CriterionSystem, SignFlippedRowContradictsTheFamily) {
  for (Rational mu : {Rational(0), Rational(2), Rational(1, 3)}) {
    EXPECT_EQ(dot(kSignFlippedRow, family_point(mu)), mu + 1);
    for (const auto& row : kExpectedRows)
      EXPECT_EQ(dot(row, family_point(mu)), 0);
  }
}

TEST(CriterionSystem, DeterminantAndDiagonalStructure) {
  EXPECT_EQ(build_system(z_tilde(1)).determinant, cyc(curve().field, {2, 0, 2, 2}));
  FieldPtr f = CyclotomicField::make(4);
  const CycNum i = zeta_pow(f, 1), zero(f, 0);
  CriterionSystem s = build_system(CycMatrix(2, 2, {i, zero, zero, Rational(2) * i}, zero));
  EXPECT_EQ(s.determinant, CycNum(f, -2));
  // tau2 = 0: a13 and a24 appear only in (i)
  for (std::size_t r = 1; r < s.linear.rows(); ++r) {
    EXPECT_EQ(s.linear(r, 1), 0);
    EXPECT_EQ(s.linear(r, 4), 0);
  }
}

TEST(CriterionSystem, RejectsBadShapes) {
  EXPECT_THROW(build_system(curve().z), DimensionMismatch);
  FieldPtr f = CyclotomicField::make(4);
  const CycNum i = zeta_pow(f, 1), zero(f, 0), one(f, 1);
  EXPECT_THROW(build_system(CycMatrix(2, 2, {i, one, zero, i}, zero)), std::invalid_argument);
}

TEST(Decide, FirstSurfaceIsSimpleWithTheExpectedFamilyAndResidual) {
  Verdict v = decide(z_tilde(1));
  ASSERT_EQ(v.kind, Verdict::Kind::Simple);
  EXPECT_FALSE(v.witness.has_value());
  ASSERT_EQ(v.solution_dimension, 1u);
  ASSERT_TRUE(v.residual.has_value());
  const std::size_t fc = v.residual->free_columns.at(0);
  const auto& dir = v.directions[0];
  // reparametrise t = alpha + beta mu so that our line is mu -> family_point(mu)
  const std::vector<Rational> p0 = family_point(0), p1 = family_point(1);
  const Rational beta = (p1[fc] - p0[fc]) / dir[fc];
  const Rational alpha = (p0[fc] - v.particular[fc]) / dir[fc];
  for (Rational mu : {Rational(0), Rational(1), Rational(-4), Rational(3, 5)})
    EXPECT_EQ(detail::point_at(v, {alpha + beta * mu}), family_point(mu));
  std::vector<Rational> in_mu = substitute_affine(v.residual->univariate(), alpha, beta);
  EXPECT_EQ(in_mu, q({Rational(-1, 4), 0, Rational(5, 4)}));
  EXPECT_EQ(primitive_integer_form(in_mu), (std::vector<Integer>{-1, 0, 5}));
}

TEST(Decide, SecondSurfaceIsSimple) {
  Verdict v = decide(z_tilde(2));
  EXPECT_EQ(v.kind, Verdict::Kind::Simple);
  EXPECT_EQ(v.solution_dimension, 1u);
}

TEST(Decide, ResidualAgreesWithDirectSubstitution) {
  Verdict v = decide(z_tilde(1));
  ASSERT_TRUE(v.residual.has_value());
  for (Rational t : {Rational(0), Rational(1), Rational(-1), Rational(1, 2)}) {
    std::vector<Rational> x = detail::point_at(v, {t});
    EXPECT_EQ(v.residual->evaluate({t}), criterion_quadratic(x));
    EXPECT_EQ(dot(build_system(z_tilde(1)).linear.row(0), x), -1);
  }
}

TEST(Decide, RowOrderDoesNotMatter) {
  CriterionSystem s = build_system(z_tilde(1));
  std::vector<std::size_t> perm{4, 2, 0, 3, 1};
  CriterionSystem t = s;
  t.linear = select_rows(s.linear, perm);
  for (std::size_t i = 0; i < perm.size(); ++i)
    t.rhs[i] = s.rhs[perm[i]];
  Verdict a = decide(s), b = decide(t);
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.particular, b.particular);
  EXPECT_EQ(a.directions, b.directions);
}

TEST(Decide, DiagonalMatricesContainEllipticCurves) {
  FieldPtr f = CyclotomicField::make(4);
  const CycNum i = zeta_pow(f, 1), zero(f, 0);
  CycMatrix z(2, 2, {i, zero, zero, i}, zero);
  Verdict v = decide(z);
  ASSERT_EQ(v.kind, Verdict::Kind::HasEllipticCurve);
  EXPECT_TRUE(verify_witness(z, *v.witness).ok());
  EXPECT_TRUE(verify_witness(z, SixTuple{0, 0, 0, 0, -1, 0}).ok());
}

TEST(Decide, SplitGaussianSurface) {
  FieldPtr f = CyclotomicField::make(4);
  const CycNum i = zeta_pow(f, 1), zero(f, 0);
  CycMatrix z(2, 2, {Rational(2) * i, i, i, Rational(2) * i}, zero);
  Verdict v = decide(z);
  ASSERT_EQ(v.kind, Verdict::Kind::HasEllipticCurve);
  EXPECT_TRUE(verify_witness(z, *v.witness).ok());
}

TEST(VerifyWitness, FamilyPointFailsOnlyTheQuadric) {
  WitnessCheck c = verify_witness(z_tilde(1), SixTuple{1, 0, 0, 0, -1, 1});
  EXPECT_TRUE(c.eq_i);
  EXPECT_TRUE(c.eq_ii);
  EXPECT_FALSE(c.eq_iii);
  EXPECT_FALSE(c.ok());
  WitnessCheck off = verify_witness(z_tilde(1), SixTuple{0, 0, 0, 0, 0, 0});
  EXPECT_FALSE(off.eq_i);
}

TEST(Decide, UniqueSolution) {
  RatMatrix id = RatMatrix::identity(6, Rational(0));
  // a13 = -1, everything else 0: a13 a24 = 0 so (iii) holds
  Verdict has = decide(raw_system(id, q({0, -1, 0, 0, 0, 0})));
  EXPECT_EQ(has.kind, Verdict::Kind::HasEllipticCurve);
  EXPECT_EQ(has.solution_dimension, 0u);
  Verdict simple = decide(raw_system(id, q({1, -1, 0, 0, 0, 1})));
  EXPECT_EQ(simple.kind, Verdict::Kind::Simple);
}

TEST(Decide, InconsistentLinearSystemIsSimple) {
  RatMatrix a(2, 6, Rational(0));
  a(0, 1) = a(0, 4) = a(1, 1) = a(1, 4) = 1;
  Verdict v = decide(raw_system(a, q({-1, 0})));
  EXPECT_EQ(v.kind, Verdict::Kind::Simple);
  EXPECT_FALSE(v.linear_system_consistent);
}

TEST(Decide, HigherDimensionalFamiliesAreSearched) {
  RatMatrix a(1, 6, Rational(0));
  a(0, 1) = a(0, 4) = 1;
  Verdict v = decide(raw_system(a, q({-1})));
  EXPECT_EQ(v.solution_dimension, 5u);
  ASSERT_EQ(v.kind, Verdict::Kind::HasEllipticCurve);
  const SixTuple& w = *v.witness;
  EXPECT_EQ(w[1] + w[4], -1);
  EXPECT_EQ(criterion_quadratic(w), 0);
}

TEST(Decide, WitnessSoundnessAcrossConductors) {
  PropertyOutcome p = witness_soundness_properties(40, 41);
  EXPECT_TRUE(p.ok()) << (p.failures.empty() ? "" : p.failures.front());
}

TEST(Rendering, QuadraticForms) {
  EXPECT_EQ(primitive_integer_form(q({Rational(-1, 4), 0, Rational(5, 4)})), (std::vector<Integer>{-1, 0, 5}));
  EXPECT_EQ(primitive_integer_form(q({2, 0, -10})), (std::vector<Integer>{-1, 0, 5}));
  EXPECT_EQ(render_quadratic({-1, 0, 5}), "5mu^2 - 1");
  EXPECT_EQ(render_quadratic({3, -2, 1}, "t"), "t^2 - 2t + 3");
  EXPECT_EQ(substitute_affine(q({0, 0, 1}), 1, 2), q({1, 4, 4}));
}
