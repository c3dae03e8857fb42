#pragma once

// Does the principally polarised abelian surface with Riemann matrix
// [[t1, t2], [t2, t3]] contain an elliptic curve?
//
// It does iff some rational (a12, a13, a14, a23, a24, a34) satisfies
//   (i)   a13 + a24 = -1
//   (ii)  (t1 t3 - t2^2) a12 - t1 a14 + t2 a13 - t2 a24 + t3 a23 + a34 = 0
//   (iii) a14 a23 - a13 a24 + a12 a34 = 0.
// With entries in Q(zeta_n), (ii) splits into phi(n) rational equations, so
// (i)-(ii) is a rational linear system and (iii) a quadratic on its
// solution set.

#include "jacdec/cyclofield.hpp"
#include "jacdec/matrix.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

using SixTuple = std::array<Rational, 6>; // (a12, a13, a14, a23, a24, a34)

inline const std::array<const char*, 6>& criterion_unknowns() {
  static const std::array<const char*, 6> names{"a12", "a13", "a14", "a23", "a24", "a34"};
  return names;
}

struct CriterionSystem {
  CycNum tau1, tau2, tau3;
  CycNum determinant;  // t1 t3 - t2^2
  RatMatrix linear;    // (1 + phi(n)) x 6 coefficients
  std::vector<Rational> rhs;
};

inline CriterionSystem build_system(const CycMatrix& z) {
  if (z.rows() != 2 || z.cols() != 2)
    throw DimensionMismatch("criterion needs a 2x2 Riemann matrix, got " + z.shape());
  if (z(0, 1) != z(1, 0))
    throw std::invalid_argument("Riemann matrix is not symmetric");
  CriterionSystem s{z(0, 0), z(0, 1), z(1, 1), z(0, 0) * z(1, 1) - z(0, 1) * z(0, 1), {}, {}};
  const std::size_t deg = z.zero().field()->degree();
  s.linear = RatMatrix(1 + deg, 6, Rational(0));
  s.rhs.assign(1 + deg, Rational(0));
  s.linear(0, 1) = 1;
  s.linear(0, 4) = 1;
  s.rhs[0] = -1;
  const CycNum one(z.zero().field(), 1);
  const std::array<CycNum, 6> coef{s.determinant, s.tau2, -s.tau1, s.tau3, -s.tau2, one};
  for (std::size_t k = 0; k < deg; ++k)
    for (std::size_t u = 0; u < 6; ++u)
      s.linear(1 + k, u) = coef[u].coeffs()[k];
  return s;
}

/// a14 a23 - a13 a24 + a12 a34.
inline Rational criterion_quadratic(const SixTuple& a) {
  return a[2] * a[3] - a[1] * a[4] + a[0] * a[5];
}

inline Rational criterion_quadratic(const std::vector<Rational>& a) {
  return criterion_quadratic(SixTuple{a[0], a[1], a[2], a[3], a[4], a[5]});
}

struct WitnessCheck {
  bool eq_i = false;
  bool eq_ii = false;
  bool eq_iii = false;
  bool ok() const { return eq_i && eq_ii && eq_iii; }
};

/// Exact re-substitution of a 6-tuple into (i), (ii), (iii).
inline WitnessCheck verify_witness(const CycMatrix& z, const SixTuple& a) {
  CriterionSystem s = build_system(z);
  WitnessCheck c;
  c.eq_i = a[1] + a[4] == -1;
  CycNum lhs = a[0] * s.determinant - a[2] * s.tau1 + a[1] * s.tau2 - a[4] * s.tau2 + a[3] * s.tau3 +
               CycNum(s.tau1.field(), a[5]);
  c.eq_ii = lhs.is_zero();
  c.eq_iii = criterion_quadratic(a) == 0;
  return c;
}

/// (iii) restricted to particular + sum_i t_i direction_i:
/// constant + sum linear_i t_i + sum_{i <= j} quadratic(i, j) t_i t_j.
struct ResidualForm {
  std::vector<std::size_t> free_columns; // unknown that each parameter equals
  Rational constant;
  std::vector<Rational> linear;
  RatMatrix quadratic; // upper triangular

  /// [c, b, a] for c + b mu + a mu^2 (one parameter only).
  std::vector<Rational> univariate() const {
    if (linear.size() != 1)
      throw std::logic_error("residual form has " + std::to_string(linear.size()) + " parameters");
    return {constant, linear[0], quadratic(0, 0)};
  }

  Rational evaluate(const std::vector<Rational>& t) const {
    Rational v = constant;
    for (std::size_t i = 0; i < t.size(); ++i) {
      v += linear[i] * t[i];
      for (std::size_t j = i; j < t.size(); ++j)
        v += quadratic(i, j) * t[i] * t[j];
    }
    return v;
  }
};

/// [c, b, a] of q(alpha + beta mu) as a polynomial in mu.
inline std::vector<Rational> substitute_affine(const std::vector<Rational>& q, const Rational& alpha,
                                               const Rational& beta) {
  const Rational &c = q[0], &b = q[1], &a = q[2];
  return {c + b * alpha + a * alpha * alpha, b * beta + 2 * a * alpha * beta, a * beta * beta};
}

/// Primitive integer multiple of a univariate quadratic [c, b, a] with
/// positive leading coefficient, e.g. [-1/4, 0, 5/4] -> [-1, 0, 5].
inline std::vector<Integer> primitive_integer_form(const std::vector<Rational>& coeffs) {
  Integer l = lcm_of_denominators(coeffs.data(), coeffs.data() + coeffs.size());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : coeffs) {
    Rational s = c * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g == 0)
    return out;
  Integer sign = 1;
  for (std::size_t i = out.size(); i-- > 0;)
    if (out[i] != 0) {
      sign = out[i] < 0 ? -1 : 1;
      break;
    }
  for (auto& x : out)
    x = sign * x / g;
  return out;
}

/// "5mu^2 - 1" style rendering of [c, b, a].
inline std::string render_quadratic(const std::vector<Integer>& c, const std::string& var = "mu") {
  std::string s;
  auto term = [&](const Integer& x, const std::string& mono) {
    if (x == 0)
      return;
    Integer ax = abs(x);
    if (s.empty())
      s += x < 0 ? "-" : "";
    else
      s += x < 0 ? " - " : " + ";
    if (ax != 1 || mono.empty())
      s += ax.get_str();
    s += mono;
  };
  for (std::size_t i = c.size(); i-- > 0;)
    term(c[i], i == 0 ? "" : i == 1 ? var : var + "^" + std::to_string(i));
  return s.empty() ? "0" : s;
}

struct Verdict {
  enum class Kind { Simple, HasEllipticCurve, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<SixTuple> witness;
  std::optional<ResidualForm> residual;
  std::size_t solution_dimension = 0;      // of the affine solution set of (i)-(ii)
  bool linear_system_consistent = false;
  std::vector<Rational> particular;        // free parameters = 0
  std::vector<std::vector<Rational>> directions;
};

inline const char* to_string(Verdict::Kind k) {
  switch (k) {
  case Verdict::Kind::Simple:
    return "Simple";
  case Verdict::Kind::HasEllipticCurve:
    return "HasEllipticCurve";
  case Verdict::Kind::Inconclusive:
    return "Inconclusive";
  }
  return "?";
}

namespace detail {

inline SixTuple to_six(const std::vector<Rational>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }

inline std::vector<Rational> point_at(const Verdict& v, const std::vector<Rational>& t) {
  std::vector<Rational> x = v.particular;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t u = 0; u < 6; ++u)
      x[u] += t[i] * v.directions[i][u];
  return x;
}

// Rationals p/q in lowest terms with max(|p|, q) <= bound, ordered by that
// height; the second member is the height.
inline std::vector<std::pair<Rational, long>> rationals_by_height(long bound) {
  std::vector<std::pair<Rational, long>> out{{Rational(0), 0}};
  for (long h = 1; h <= bound; ++h) {
    std::vector<Rational> shell;
    for (long q = 1; q <= h; ++q) // p = h
      if (std::gcd(h, q) == 1)
        shell.emplace_back(h, q);
    for (long p = 1; p < h; ++p) // q = h
      if (std::gcd(p, h) == 1)
        shell.emplace_back(p, h);
    std::sort(shell.begin(), shell.end(), [](const Rational& a, const Rational& b) { return a < b; });
    for (const auto& r : shell) {
      out.emplace_back(r, h);
      out.emplace_back(-r, h);
    }
  }
  return out;
}

} // namespace detail

/// Decides the criterion. Dimensions 0 and 1 of the linear solution set are
/// decided exactly; from dimension 2 on, parameters p/q with |p|, q <=
/// search_bound are tried in order of height (at most `budget` points), and
/// failure to find a point is Inconclusive.
inline Verdict decide(const CriterionSystem& s, long search_bound = 20, std::size_t budget = 2'000'000) {
  Verdict v;
  SolveResult<Rational> sol = solve(s.linear, s.rhs);
  if (sol.kind == SolveResult<Rational>::Kind::Inconsistent) {
    v.kind = Verdict::Kind::Simple;
    return v;
  }
  v.linear_system_consistent = true;
  v.particular = sol.particular;
  for (std::size_t i = 0; i < sol.kernel.rows(); ++i)
    v.directions.push_back(sol.kernel.row(i));
  const std::size_t d = v.directions.size();
  v.solution_dimension = d;

  if (d == 0) {
    if (criterion_quadratic(v.particular) == 0) {
      v.kind = Verdict::Kind::HasEllipticCurve;
      v.witness = detail::to_six(v.particular);
    } else {
      v.kind = Verdict::Kind::Simple;
    }
    return v;
  }

  // residual quadratic in the free parameters, via polarisation of (iii)
  ResidualForm r;
  r.free_columns = sol.free_columns;
  r.constant = criterion_quadratic(v.particular);
  r.linear.assign(d, Rational(0));
  r.quadratic = RatMatrix(d, d, Rational(0));
  auto bil = [](const std::vector<Rational>& x, const std::vector<Rational>& y) -> Rational {
    std::vector<Rational> sum(6);
    for (std::size_t u = 0; u < 6; ++u)
      sum[u] = x[u] + y[u];
    return criterion_quadratic(sum) - criterion_quadratic(x) - criterion_quadratic(y);
  };
  for (std::size_t i = 0; i < d; ++i) {
    r.linear[i] = bil(v.particular, v.directions[i]);
    r.quadratic(i, i) = criterion_quadratic(v.directions[i]);
    for (std::size_t j = i + 1; j < d; ++j)
      r.quadratic(i, j) = bil(v.directions[i], v.directions[j]);
  }
  v.residual = r;

  if (d == 1) {
    const Rational c = r.constant, b = r.linear[0], a = r.quadratic(0, 0);
    std::optional<Rational> root;
    if (a != 0) {
      std::vector<Integer> ic = primitive_integer_form({c, b, a});
      Integer disc = ic[1] * ic[1] - 4 * ic[2] * ic[0];
      if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
        Integer sq = sqrt(disc);
        root = Rational(-ic[1] + sq, 2 * ic[2]);
      }
    } else if (b != 0) {
      root = Rational(-c / b);
    } else if (c == 0) {
      root = Rational(0);
    }
    if (root) {
      root->canonicalize();
      v.kind = Verdict::Kind::HasEllipticCurve;
      v.witness = detail::to_six(detail::point_at(v, {*root}));
    } else {
      v.kind = Verdict::Kind::Simple;
    }
    return v;
  }

  // d >= 2: bounded search in height shells
  const auto rats = detail::rationals_by_height(search_bound);
  std::size_t checked = 0;
  for (long shell = 0; shell <= search_bound; ++shell) {
    std::size_t limit = 0;
    while (limit < rats.size() && rats[limit].second <= shell)
      ++limit;
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      long mx = 0;
      for (auto i : idx)
        mx = std::max(mx, rats[i].second);
      if (mx == shell) {
        if (checked++ >= budget)
          return v; // Inconclusive
        std::vector<Rational> t(d);
        for (std::size_t i = 0; i < d; ++i)
          t[i] = rats[idx[i]].first;
        if (r.evaluate(t) == 0) {
          v.kind = Verdict::Kind::HasEllipticCurve;
          v.witness = detail::to_six(detail::point_at(v, t));
          return v;
        }
      }
      std::size_t i = 0;
      while (i < d && idx[i] + 1 == limit) {
        idx[i] = 0;
        ++i;
      }
      if (i == d)
        break;
      ++idx[i];
    }
  }
  v.kind = Verdict::Kind::Inconclusive;
  return v;
}

inline Verdict decide(const CycMatrix& z, long search_bound = 20) { return decide(build_system(z), search_bound); }

} // namespace jacdec
