#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) and
// kept reduced modulo the n-th cyclotomic polynomial at all times, so equality
// is coefficient comparison.

#include "jacdec/bigfloat.hpp"
#include "jacdec/rational.hpp"

#include <cstddef>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

class FieldMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

namespace poly {

// Dense univariate polynomials, index i holds the coefficient of x^i.
template <class T> using Poly = std::vector<T>;

template <class T> void trim(Poly<T>& p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

template <class T> Poly<T> mul(const Poly<T>& a, const Poly<T>& b) {
  if (a.empty() || b.empty())
    return {};
  Poly<T> r(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

template <class T> Poly<T> sub(Poly<T> a, const Poly<T>& b) {
  if (a.size() < b.size())
    a.resize(b.size(), T(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder over a field (or exact division over Z when the
/// divisor is monic).
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(Poly<T> a, const Poly<T>& b) {
  trim(a);
  if (b.empty())
    throw DivisionByZero("polynomial division by zero");
  if (a.size() < b.size())
    return {{}, a};
  Poly<T> q(a.size() - b.size() + 1, T(0));
  const T& lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] == 0)
      continue;
    T c = a[i] / lead;
    q[i - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[i - b.size() + 1 + j] -= c * b[j];
  }
  trim(q);
  a.resize(b.size() - 1);
  trim(a);
  return {q, a};
}

} // namespace poly

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0)
        n /= p;
      result -= result / p;
    }
  }
  if (n > 1)
    result -= result / n;
  return result;
}

/// Phi_n via x^n - 1 = prod_{d | n} Phi_d, dividing out every proper divisor.
inline std::vector<Integer> cyclotomic_polynomial(unsigned n) {
  if (n == 0)
    throw std::invalid_argument("cyclotomic polynomial of order 0");
  poly::Poly<Integer> p(n + 1, Integer(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    auto [q, r] = poly::divmod(p, cyclotomic_polynomial(d));
    if (!r.empty())
      throw std::logic_error("inexact cyclotomic division");
    p = std::move(q);
  }
  return p;
}

class CyclotomicField {
public:
  explicit CyclotomicField(unsigned conductor)
      : n_(conductor), min_poly_(cyclotomic_polynomial(conductor)) {
    degree_ = static_cast<unsigned>(min_poly_.size() - 1);
  }

  static std::shared_ptr<const CyclotomicField> make(unsigned conductor) {
    return std::make_shared<const CyclotomicField>(conductor);
  }

  unsigned conductor() const { return n_; }
  unsigned degree() const { return degree_; }
  const std::vector<Integer>& min_poly() const { return min_poly_; }

  /// Reduces an arbitrary-degree polynomial modulo Phi_n in place and pads
  /// it to exactly degree() coefficients.
  void reduce(std::vector<Rational>& p) const {
    for (std::size_t i = p.size(); i-- > degree_;) {
      if (p[i] == 0)
        continue;
      Rational c = p[i];
      for (unsigned j = 0; j < degree_; ++j)
        p[i - degree_ + j] -= c * min_poly_[j];
      p[i] = 0;
    }
    p.resize(degree_, Rational(0));
  }

  friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) {
    return a.n_ == b.n_;
  }

private:
  unsigned n_;
  unsigned degree_ = 0;
  std::vector<Integer> min_poly_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

class CycNum {
public:
  CycNum() = default;
  CycNum(FieldPtr field, const Rational& q) : field_(std::move(field)) {
    coeffs_.assign(field_->degree(), Rational(0));
    coeffs_[0] = q;
  }
  CycNum(FieldPtr field, long q) : CycNum(std::move(field), Rational(q)) {}
  /// Any-length polynomial in zeta; reduced on construction.
  CycNum(FieldPtr field, std::vector<Rational> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    field_->reduce(coeffs_);
  }

  /// zeta^k, k taken modulo n.
  static CycNum zeta_power(const FieldPtr& field, long k) {
    long n = field->conductor();
    long e = ((k % n) + n) % n;
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
    c[static_cast<std::size_t>(e)] = 1;
    return CycNum(field, std::move(c));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0)
        return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0)
        return false;
    return true;
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) {
    check_same(a, b);
    CycNum r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
      r.coeffs_[i] += b.coeffs_[i];
    return r;
  }
  friend CycNum operator-(const CycNum& a, const CycNum& b) {
    check_same(a, b);
    CycNum r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
      r.coeffs_[i] -= b.coeffs_[i];
    return r;
  }
  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_)
      c = -c;
    return r;
  }
  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    check_same(a, b);
    std::vector<Rational> p = poly::mul(a.coeffs_, b.coeffs_);
    return CycNum(a.field_, std::move(p));
  }
  friend CycNum operator*(const Rational& q, const CycNum& a) {
    CycNum r = a;
    for (auto& c : r.coeffs_)
      c *= q;
    return r;
  }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * inv(b); }

  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    check_same(a, b);
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Inverse via the extended Euclidean algorithm in Q[x] against Phi_n.
  friend CycNum inv(const CycNum& a) {
    if (a.is_zero())
      throw DivisionByZero("inverse of zero in Q(zeta_" +
                           std::to_string(a.field_->conductor()) + ")");
    using P = poly::Poly<Rational>;
    P r0(a.field_->min_poly().begin(), a.field_->min_poly().end());
    P r1 = a.coeffs_;
    poly::trim(r1);
    P s0, s1{Rational(1)};
    // invariant: r_i == s_i * a (mod Phi_n)
    while (r1.size() > 1) {
      auto [q, r] = poly::divmod(r0, r1);
      P s = poly::sub(s0, poly::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r1 is a nonzero constant since Phi_n is irreducible
    Rational c = 1 / r1[0];
    for (auto& x : s1)
      x *= c;
    return CycNum(a.field_, std::move(s1));
  }

  /// Complex conjugation: the automorphism zeta -> zeta^(n-1).
  friend CycNum conj(const CycNum& a) {
    unsigned n = a.field_->conductor();
    std::vector<Rational> p(n, Rational(0));
    for (unsigned j = 0; j < a.coeffs_.size(); ++j)
      p[(n - j) % n] += a.coeffs_[j];
    return CycNum(a.field_, std::move(p));
  }

  /// Galois automorphism zeta -> zeta^k (k coprime to n).
  friend CycNum galois(const CycNum& a, unsigned k) {
    unsigned n = a.field_->conductor();
    std::vector<Rational> p(n, Rational(0));
    for (unsigned j = 0; j < a.coeffs_.size(); ++j)
      p[(static_cast<unsigned long>(j) * k) % n] += a.coeffs_[j];
    return CycNum(a.field_, std::move(p));
  }

private:
  static void check_same(const CycNum& a, const CycNum& b) {
    if (!a.field_ || !b.field_)
      throw FieldMismatch("operation on an uninitialised CycNum");
    if (a.field_ != b.field_ && !(*a.field_ == *b.field_))
      throw FieldMismatch("operands in Q(zeta_" + std::to_string(a.field_->conductor()) +
                          ") and Q(zeta_" + std::to_string(b.field_->conductor()) + ")");
  }

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

inline CycNum scalar_mul(const Rational& q, const CycNum& a) { return q * a; }

inline std::vector<Rational> rational_coordinates(const CycNum& a) { return a.coeffs(); }

inline CycNum zero_like(const CycNum& a) { return CycNum(a.field(), 0); }
inline CycNum one_like(const CycNum& a) { return CycNum(a.field(), 1); }

/// Numeric value of a under zeta -> exp(2 pi i k / n).
///
/// Every cos/sin is evaluated with 16 guard bits and each product/sum is
/// correctly rounded, so for deg = phi(n) <= 2^10 the absolute error of each
/// part is below 2^(-precision_bits + 2) * (1 + sum |q_j|).
inline BigComplex embed(const CycNum& a, long precision_bits = 128, unsigned k = 1) {
  if (precision_bits < 53)
    throw std::invalid_argument("embedding precision must be at least 53 bits");
  const long work = precision_bits + 16;
  const unsigned n = a.field()->conductor();
  BigFloat re(work), im(work);
  BigFloat two_pi_over_n = BigFloat::pi(work) * BigFloat(Rational(2, n), work);
  for (unsigned j = 0; j < a.coeffs().size(); ++j) {
    const Rational& q = a.coeffs()[j];
    if (q == 0)
      continue;
    BigFloat coef(q, work);
    unsigned e = static_cast<unsigned>((static_cast<unsigned long>(j) * k) % n);
    auto [s, c] = BigFloat::sin_cos(two_pi_over_n * BigFloat(Rational(e), work));
    re += coef * c;
    im += coef * s;
  }
  BigFloat out_re(precision_bits), out_im(precision_bits);
  out_re = re;
  out_im = im;
  return {std::move(out_re), std::move(out_im)};
}

/// All roots of unity in Q(zeta_n) whose order divides one of `orders`,
/// deduplicated, in the order (+zeta^0, ..., +zeta^(n-1), -zeta^0, ...).
inline std::vector<CycNum> roots_of_unity(const FieldPtr& field, const std::vector<unsigned>& orders) {
  std::vector<CycNum> out;
  const unsigned n = field->conductor();
  for (int sign : {1, -1}) {
    for (unsigned j = 0; j < n; ++j) {
      CycNum c = CycNum::zeta_power(field, j);
      if (sign < 0)
        c = -c;
      bool matches = false;
      for (unsigned m : orders) {
        CycNum p(field, 1);
        for (unsigned e = 0; e < m; ++e)
          p *= c;
        if (p == CycNum(field, 1)) {
          matches = true;
          break;
        }
      }
      if (!matches)
        continue;
      bool dup = false;
      for (const auto& o : out)
        dup = dup || (o == c);
      if (!dup)
        out.push_back(std::move(c));
    }
  }
  return out;
}

inline std::string to_string(const CycNum& a) {
  std::string s;
  for (std::size_t j = 0; j < a.coeffs().size(); ++j) {
    const Rational& q = a.coeffs()[j];
    if (q == 0)
      continue;
    std::string term = j == 0 ? q.get_str() : (q == 1 ? "" : q == -1 ? "-" : q.get_str() + "*");
    if (j == 1)
      term += "zeta";
    else if (j > 1)
      term += "zeta^" + std::to_string(j);
    if (!s.empty() && term[0] != '-')
      s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

} // namespace jacdec
