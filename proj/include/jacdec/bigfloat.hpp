#pragma once

// Minimal RAII value type over mpfr_t. Each value carries its own precision;
// binary operations produce a result at the larger of the two precisions.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <string>
#include <utility>

namespace jacdec {

class BigFloat {
public:
  explicit BigFloat(long precision_bits = 128) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(precision_bits));
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const mpq_class& q, long precision_bits) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(precision_bits));
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(double d, long precision_bits) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(precision_bits));
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  /// 2^e at the given precision.
  static BigFloat pow2(long e, long precision_bits) {
    BigFloat r(precision_bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }
  static BigFloat pi(long precision_bits) {
    BigFloat r(precision_bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static std::pair<BigFloat, BigFloat> sin_cos(const BigFloat& x) {
    BigFloat s(x.precision()), c(x.precision());
    mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    return {std::move(s), std::move(c)};
  }

  BigFloat abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define JACDEC_BIGFLOAT_BINOP(op, fn)                                          \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {          \
    BigFloat r(std::max(a.precision(), b.precision()));                        \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                           \
    return r;                                                                  \
  }                                                                            \
  BigFloat& operator op##=(const BigFloat& b) { return *this = *this op b; }
  JACDEC_BIGFLOAT_BINOP(+, mpfr_add)
  JACDEC_BIGFLOAT_BINOP(-, mpfr_sub)
  JACDEC_BIGFLOAT_BINOP(*, mpfr_mul)
  JACDEC_BIGFLOAT_BINOP(/, mpfr_div)
#undef JACDEC_BIGFLOAT_BINOP

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }

  std::string to_string(int digits = 20) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

private:
  mpfr_t v_;
};

/// Complex number with BigFloat parts.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  BigFloat abs_sq() const { return re * re + im * im; }
};

} // namespace jacdec
