#include "jacdec/cyclofield.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace jacdec;
using jacdec::test::cyc;
using jacdec::test::zeta_pow;

namespace {

using QPoly = std::vector<Rational>; // ascending coefficients

void strip(QPoly& p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty())
    return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  strip(r);
  return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size())
    a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  strip(a);
  return a;
}

// schoolbook long division, quotient and remainder
std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] -= f * b[i];
    strip(a);
  }
  strip(q);
  return {q, a};
}

// Oracle: s with s a == 1 mod m, by the textbook extended Euclid recurrence.
QPoly euclid_inverse(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = a, s0 = {}, s1 = {Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = poly_divmod(r0, r1);
    QPoly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r1 is a nonzero constant
  for (auto& c : s1)
    c /= r1[0];
  return poly_divmod(s1, m).second;
}

std::complex<double> float_eval(const CycNum& a) {
  const double n = a.field()->conductor();
  std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi / n), p = 1, s = 0;
  for (const auto& q : a.coeffs()) {
    s += q.get_d() * p;
    p *= z;
  }
  return s;
}

} // namespace

TEST(CyclotomicPolynomial, DegreeIsTotientAndDividesXnMinusOne) {
  for (unsigned n = 1; n <= 40; ++n) {
    auto phi = cyclotomic_polynomial(n);
    ASSERT_EQ(phi.size() - 1, euler_phi(n)) << n;
    EXPECT_EQ(phi.back(), 1) << n;
    QPoly xn(n + 1);
    xn[0] = -1;
    xn[n] = 1;
    QPoly p(phi.begin(), phi.end());
    EXPECT_TRUE(poly_divmod(xn, p).second.empty()) << n;
  }
}

TEST(CyclotomicPolynomial, KnownSmallCases) {
  EXPECT_EQ(cyclotomic_polynomial(5), (std::vector<Integer>{1, 1, 1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<Integer>{1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<Integer>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<Integer>{-1, 1}));
}

TEST(CyclotomicPolynomial, PrimitiveRootsAreRoots) {
  for (unsigned n : {7u, 9u, 15u, 20u}) {
    auto phi = cyclotomic_polynomial(n);
    for (unsigned k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1)
        continue;
      std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * k / n), s = 0, p = 1;
      for (const auto& c : phi) {
        s += c.get_d() * p;
        p *= z;
      }
      EXPECT_LT(std::abs(s), 1e-9) << n << " " << k;
    }
  }
}

TEST(CycNum, PowersOfZetaReduce) {
  FieldPtr f = CyclotomicField::make(5);
  const CycNum one(f, 1);
  EXPECT_EQ(zeta_pow(f, 1) * zeta_pow(f, 4), one);
  EXPECT_EQ(zeta_pow(f, 2) * zeta_pow(f, 3), one);
  EXPECT_TRUE((zeta_pow(f, 4) + cyc(f, {1, 1, 1, 1})).is_zero());
  EXPECT_EQ(rational_coordinates(zeta_pow(f, 4)), (std::vector<Rational>{-1, -1, -1, -1}));
  EXPECT_EQ(zeta_pow(f, 5), one);
  EXPECT_EQ(zeta_pow(f, -1), zeta_pow(f, 4));
}

TEST(CycNum, RationalCoordinates) {
  FieldPtr f = CyclotomicField::make(5);
  EXPECT_EQ(rational_coordinates(CycNum(f, 0)), (std::vector<Rational>{0, 0, 0, 0}));
  CycNum z = zeta_pow(f, 1);
  CycNum e = Rational(-2) * z * z * z + z * z - z + CycNum(f, Rational(-1, 2));
  EXPECT_EQ(rational_coordinates(e), (std::vector<Rational>{Rational(-1, 2), -1, 1, -2}));
}

TEST(CycNum, Inverse) {
  FieldPtr f = CyclotomicField::make(5);
  EXPECT_EQ(inv(zeta_pow(f, 1)), zeta_pow(f, 4));
  EXPECT_EQ(inv(CycNum(f, 2)), CycNum(f, Rational(1, 2)));

  CycNum a = CycNum(f, 1) + zeta_pow(f, 1);
  QPoly phi5(5, Rational(1));
  QPoly oracle = euclid_inverse({Rational(1), Rational(1)}, phi5);
  oracle.resize(4);
  EXPECT_EQ(inv(a).coeffs(), oracle);
  // frozen from the oracle: 1/(1 + zeta) = -zeta - zeta^3
  EXPECT_EQ(inv(a), cyc(f, {0, -1, 0, -1}));
  EXPECT_EQ(a * inv(a), CycNum(f, 1));
}

TEST(CycNum, InverseAgreesWithEuclidOracleOnAssortedElements) {
  for (unsigned n : {5u, 7u, 8u, 12u}) {
    FieldPtr f = CyclotomicField::make(n);
    auto mp = cyclotomic_polynomial(n);
    QPoly m(mp.begin(), mp.end());
    for (int s = 1; s < 6; ++s) {
      std::vector<Rational> c(f->degree());
      for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = Rational(static_cast<long>((s * 7 + 3 * i * i + i) % 11) - 5, s);
      CycNum a(f, c);
      if (a.is_zero())
        continue;
      QPoly ac = c;
      strip(ac);
      QPoly o = euclid_inverse(ac, m);
      o.resize(f->degree());
      EXPECT_EQ(inv(a).coeffs(), o) << "n=" << n << " s=" << s;
    }
  }
}

TEST(CycNum, Errors) {
  FieldPtr f5 = CyclotomicField::make(5), f4 = CyclotomicField::make(4);
  EXPECT_THROW(inv(CycNum(f5, 0)), DivisionByZero);
  EXPECT_THROW(CycNum(f5, 1) + CycNum(f4, 1), FieldMismatch);
  EXPECT_THROW(CycNum(f5, 1) * CycNum(f4, 1), FieldMismatch);
}

TEST(CycNum, Conjugation) {
  FieldPtr f = CyclotomicField::make(5);
  EXPECT_EQ(conj(zeta_pow(f, 1)), zeta_pow(f, 4));
  EXPECT_EQ(conj(CycNum(f, Rational(3, 7))), CycNum(f, Rational(3, 7)));
  CycNum r = zeta_pow(f, 2) + zeta_pow(f, 3);
  EXPECT_EQ(conj(r), r);
  EXPECT_EQ(galois(zeta_pow(f, 1), 2), zeta_pow(f, 2));
  EXPECT_EQ(galois(zeta_pow(f, 3), 4), conj(zeta_pow(f, 3)));
}

TEST(CycNum, GaussianIntegers) {
  FieldPtr f = CyclotomicField::make(4);
  CycNum i = zeta_pow(f, 1);
  EXPECT_EQ(i * i, CycNum(f, -1));
  EXPECT_EQ(conj(i), -i);
}

TEST(Embed, MatchesFloatingEvaluation) {
  FieldPtr f = CyclotomicField::make(5);
  BigComplex one = embed(CycNum(f, 1));
  EXPECT_EQ(one.re.to_double(), 1.0);
  EXPECT_EQ(one.im.to_double(), 0.0);

  CycNum r = zeta_pow(f, 2) + zeta_pow(f, 3);
  BigComplex er = embed(r);
  EXPECT_NEAR(er.re.to_double(), 2 * std::cos(4 * std::numbers::pi / 5), 1e-15);
  EXPECT_NEAR(er.re.to_double(), -1.6180339887498949, 1e-15);
  EXPECT_LT(er.im.abs().to_double(), 1e-35);

  CycNum d = cyc(f, {2, 0, 2, 2});
  BigComplex ed = embed(d);
  std::complex<double> oracle = float_eval(d);
  EXPECT_NEAR(ed.re.to_double(), oracle.real(), 1e-13);
  EXPECT_NEAR(ed.im.to_double(), oracle.imag(), 1e-13);
  EXPECT_GT(std::abs(ed.to_std()), 1.0);
}

TEST(Embed, OtherEmbeddingsAreGaloisConjugates) {
  FieldPtr f = CyclotomicField::make(5);
  CycNum a = cyc(f, {Rational(1, 3), -2, 5, Rational(-7, 2)});
  for (unsigned k : {1u, 2u, 3u, 4u}) {
    BigComplex x = embed(a, 160, k), y = embed(galois(a, k), 160, 1);
    EXPECT_LT(((x.re - y.re).abs() + (x.im - y.im).abs()).to_double(), 1e-40) << k;
  }
}

TEST(Embed, ErrorShrinksWithPrecision) {
  FieldPtr f = CyclotomicField::make(7);
  CycNum a = cyc(f, {Rational(1, 3), -2, 5, Rational(-7, 2), 4, Rational(9, 5)});
  double mass = 1;
  for (const auto& q : a.coeffs())
    mass += std::fabs(q.get_d());
  BigComplex hi = embed(a, 512);
  for (long p : {64L, 128L, 200L}) {
    BigComplex lo = embed(a, p);
    BigFloat err = (lo.re - hi.re).abs() + (lo.im - hi.im).abs();
    // documented bound 2^(-p + 2) (1 + sum |q_j|), per component
    EXPECT_LE(err.to_double(), 2 * std::ldexp(mass, static_cast<int>(-p + 2))) << p;
  }
}

TEST(RootsOfUnity, TenthRootsLiveInQZeta5) {
  FieldPtr f = CyclotomicField::make(5);
  auto roots = roots_of_unity(f, {10});
  EXPECT_EQ(roots.size(), 10u);
  const CycNum one(f, 1);
  for (const auto& r : roots) {
    CycNum p = one;
    for (int k = 0; k < 10; ++k)
      p = p * r;
    EXPECT_EQ(p, one);
  }
  // the fourth roots of unity other than +-1 are not in Q(zeta_5)
  EXPECT_EQ(roots_of_unity(f, {4}).size(), 2u);
}

TEST(CycNum, ToStringIsReadable) {
  FieldPtr f = CyclotomicField::make(5);
  EXPECT_EQ(to_string(cyc(f, {2, 0, 2, 2})), "2+2*zeta^2+2*zeta^3");
  EXPECT_EQ(to_string(CycNum(f, 0)), "0");
  EXPECT_EQ(to_string(-zeta_pow(f, 1)), "-zeta");
}
