#pragma once

// Dense exact matrices over Z, Q and Q(zeta_n).
//
// Row-vector convention: lattice vectors and subspace bases are rows, and
// matrices act on the right (v -> v * A). A Matrix carries a prototype zero
// element so that Q(zeta_n) matrices know their field even when empty.

#include "jacdec/cyclofield.hpp"
#include "jacdec/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

inline Integer zero_like(const Integer&) { return 0; }
inline Integer one_like(const Integer&) { return 1; }
inline Rational zero_like(const Rational&) { return 0; }
inline Rational one_like(const Rational&) { return 1; }
inline bool is_zero(const Integer& x) { return x == 0; }
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const CycNum& x) { return x.is_zero(); }

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& zero)
      : rows_(rows), cols_(cols), zero_(zero_like(zero)), data_(rows * cols, zero_) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries, const T& zero)
      : rows_(rows), cols_(cols), zero_(zero_like(zero)), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
      throw DimensionMismatch("entry count does not match matrix shape");
  }
  /// Nested-initializer constructor for Z and Q; rows must be nonempty and equal length.
  Matrix(std::initializer_list<std::initializer_list<T>> rows)
    requires(!std::is_same_v<T, CycNum>)
      : zero_(0) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n, const T& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = one_like(zero);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const T& zero() const { return zero_; }
  const std::vector<T>& entries() const { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
      throw DimensionMismatch("block out of range");
    Matrix b(nr, nc, zero_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k)
      r.data_[k] += b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k)
      r.data_[k] -= b.data_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_)
      x = -x;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matmul: " + a.shape() + " times " + b.shape());
    Matrix r(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik))
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r(i, j) += aik * b(k, j);
      }
    return r;
  }
  /// Scalar multiple.
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_)
      x = s * x;
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionMismatch("shape mismatch: " + a.shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  T zero_{};
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using CycMatrix = Matrix<CycNum>;

template <class T> Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows(), a.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

template <class T> Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols())
    throw DimensionMismatch("vstack: column counts differ");
  std::vector<T> e = a.entries();
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return Matrix<T>(a.rows() + b.rows(), a.cols(), std::move(e), a.zero());
}

template <class T> Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("hstack: row counts differ");
  Matrix<T> r(a.rows(), a.cols() + b.cols(), a.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

/// Sub-matrix made of the given rows, in the given order.
template <class T> Matrix<T> select_rows(const Matrix<T>& a, const std::vector<std::size_t>& idx) {
  Matrix<T> r(idx.size(), a.cols(), a.zero());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = a(idx[i], j);
  return r;
}

// Conversions between coefficient rings.

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols(), Rational(0));
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    r(k / a.cols(), k % a.cols()) = Rational(a.entries()[k]);
  return r;
}

/// Exact conversion; throws std::domain_error if some entry is not integral.
inline IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).get_den() != 1)
        throw std::domain_error("matrix entry " + a(i, j).get_str() + " is not an integer");
      r(i, j) = a(i, j).get_num();
    }
  return r;
}

inline CycMatrix to_field(const RatMatrix& a, const FieldPtr& field) {
  CycMatrix r(a.rows(), a.cols(), CycNum(field, 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = CycNum(field, a(i, j));
  return r;
}

inline CycMatrix to_field(const IntMatrix& a, const FieldPtr& field) {
  return to_field(to_rational(a), field);
}

inline CycMatrix conj(const CycMatrix& a) {
  CycMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = conj(a(i, j));
  return r;
}

inline CycMatrix operator*(const Rational& q, const CycMatrix& a) {
  CycMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = q * a(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Elimination over a field (Rational or CycNum). Pivot = first nonzero entry.

template <class T> struct RrefResult {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

template <class T> RrefResult<T> rref(Matrix<T> a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c)))
      ++p;
    if (p == a.rows())
      continue;
    a.swap_rows(r, p);
    T pinv = one_like(a.zero()) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      a(r, j) = pinv * a(r, j);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c)))
        continue;
      T f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

template <class T> std::size_t rank(const Matrix<T>& a) { return rref(a).pivots.size(); }

/// Basis rows k of the right null space: a * k^t = 0. One row per free
/// column, with a 1 in that column (the standard RREF basis).
template <class T> Matrix<T> kernel(const Matrix<T>& a) {
  auto [r, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c])
      free.push_back(c);
  Matrix<T> k(free.size(), a.cols(), a.zero());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(f, free[f]) = one_like(a.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i)
      k(f, pivots[i]) = -r(i, free[f]);
  }
  return k;
}

template <class T> struct SolveResult {
  enum class Kind { Unique, Affine, Inconsistent };
  Kind kind = Kind::Inconsistent;
  std::vector<T> particular;           // free variables set to zero
  Matrix<T> kernel;                    // homogeneous solutions, one per row
  std::vector<std::size_t> free_columns;
};

/// Solves a * x = b for a column vector x.
template <class T> SolveResult<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows())
    throw DimensionMismatch("solve: rhs length does not match row count");
  Matrix<T> aug(a.rows(), a.cols() + 1, a.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [r, pivots] = rref(aug);
  SolveResult<T> out;
  if (!pivots.empty() && pivots.back() == a.cols())
    return out;
  out.particular.assign(a.cols(), a.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    out.particular[pivots[i]] = r(i, a.cols());
  out.kernel = kernel(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c])
      out.free_columns.push_back(c);
  out.kind = out.kernel.rows() == 0 ? SolveResult<T>::Kind::Unique : SolveResult<T>::Kind::Affine;
  return out;
}

template <class T> T det(Matrix<T> a) {
  if (!a.is_square())
    throw DimensionMismatch("det of non-square " + a.shape() + " matrix");
  T d = one_like(a.zero());
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c)))
      ++p;
    if (p == n)
      return a.zero();
    if (p != c) {
      a.swap_rows(p, c);
      d = -d;
    }
    d = d * a(c, c);
    T pinv = one_like(a.zero()) / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c)))
        continue;
      T f = a(i, c) * pinv;
      for (std::size_t j = c; j < n; ++j)
        a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline Integer det(IntMatrix a) {
  if (!a.is_square())
    throw DimensionMismatch("det of non-square " + a.shape() + " matrix");
  const std::size_t n = a.rows();
  if (n == 0)
    return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

template <class T> Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.is_square())
    throw DimensionMismatch("inverse of non-square " + a.shape() + " matrix");
  const std::size_t n = a.rows();
  auto [r, pivots] = rref(hstack(a, Matrix<T>::identity(n, a.zero())));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw SingularMatrix("matrix is singular");
  return r.block(0, n, n, n);
}

/// Integer inverse of a unimodular integer matrix.
inline IntMatrix inverse(const IntMatrix& a) { return to_integer(inverse(to_rational(a))); }

/// Rows v with v * (a - lambda I) = 0.
template <class T> Matrix<T> eigenspace(const Matrix<T>& a, const T& lambda) {
  if (!a.is_square())
    throw DimensionMismatch("eigenspace of non-square matrix");
  Matrix<T> shifted = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    shifted(i, i) -= lambda;
  return kernel(transpose(shifted));
}

template <class T> T trace(const Matrix<T>& a) {
  T t = a.zero();
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    t += a(i, i);
  return t;
}

template <class T> bool is_symmetric(const Matrix<T>& a) { return a.is_square() && a == transpose(a); }

} // namespace jacdec
