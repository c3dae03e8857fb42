#pragma once

// Hermite and Smith normal forms of integer matrices, and lattice saturation.

#include "jacdec/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace jacdec {

namespace detail {

// rows (i, j) <- [[s, t], [u, v]] * rows (i, j)
inline void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const Integer& s,
                         const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer a = m(i, c), b = m(j, c);
    m(i, c) = s * a + t * b;
    m(j, c) = u * a + v * b;
  }
}

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    m(dst, c) += f * m(src, c);
}

inline void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    m(i, c) = -m(i, c);
}

inline void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    m(r, dst) += f * m(r, src);
}

inline bool is_diagonal(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0)
        return false;
  return true;
}

} // namespace detail

struct HermiteResult {
  IntMatrix form;      // row-style HNF, zero rows last
  IntMatrix transform; // unimodular, transform * input == form
};

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot).
inline HermiteResult hnf_with_transform(IntMatrix h) {
  const std::size_t m = h.rows();
  IntMatrix u = IntMatrix::identity(m, Integer(0));
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, c) == 0)
        continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, c).get_mpz_t(),
                 h(i, c).get_mpz_t());
      Integer a_g = h(r, c) / g, b_g = h(i, c) / g;
      // det [[s, t], [-b/g, a/g]] = (s a + t b) / g = 1
      detail::combine_rows(h, r, i, s, t, -b_g, a_g);
      detail::combine_rows(u, r, i, s, t, -b_g, a_g);
    }
    if (h(r, c) == 0)
      continue;
    if (h(r, c) < 0) {
      detail::negate_row(h, r);
      detail::negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q != 0) {
        detail::add_row_multiple(h, i, r, -q);
        detail::add_row_multiple(u, i, r, -q);
      }
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

inline IntMatrix hnf(const IntMatrix& m) { return hnf_with_transform(m).form; }

/// Nonzero rows of the HNF: the canonical basis of the row lattice.
inline IntMatrix lattice_basis(const IntMatrix& m) {
  IntMatrix h = hnf(m);
  auto nonzero_row = [&h](std::size_t i) {
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0)
        return true;
    return false;
  };
  std::size_t r = 0;
  while (r < h.rows() && nonzero_row(r))
    ++r;
  return h.block(0, 0, r, h.cols());
}

inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return a.cols() == b.cols() && lattice_basis(a) == lattice_basis(b);
}

struct SmithResult {
  IntMatrix form;  // diagonal, d1 | d2 | ..., zeros last
  IntMatrix left;  // U, unimodular
  IntMatrix right; // V, unimodular; U * M * V == D
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(form.rows(), form.cols()); ++i)
      d.push_back(form(i, i));
    return d;
  }
};

/// Smith normal form by alternating row HNF of the matrix and of its
/// transpose until diagonal, then repairing the divisibility chain.
inline SmithResult snf(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows(), Integer(0));
  IntMatrix v = IntMatrix::identity(m.cols(), Integer(0));
  for (;;) {
    // at least one pass, so that zero diagonal entries end up last
    do {
      auto rows = hnf_with_transform(d);
      d = std::move(rows.form);
      u = rows.transform * u;
      if (detail::is_diagonal(d))
        break;
      auto cols = hnf_with_transform(transpose(d));
      d = transpose(cols.form);
      v = v * transpose(cols.transform);
    } while (!detail::is_diagonal(d));
    // d is diagonal with its nonzero entries first
    const std::size_t k = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < k; ++i)
      if (d(i, i) < 0) {
        d(i, i) = -d(i, i);
        detail::negate_row(u, i);
      }
    bool repaired = false;
    for (std::size_t i = 0; i < k && !repaired; ++i)
      for (std::size_t j = i + 1; j < k && !repaired; ++j) {
        if (d(i, i) == 0 || mpz_divisible_p(d(j, j).get_mpz_t(), d(i, i).get_mpz_t()))
          continue;
        // column i += column j puts d_j at (j, i); the next row HNF pass
        // replaces d_i by gcd(d_i, d_j)
        detail::add_col_multiple(d, i, j, 1);
        detail::add_col_multiple(v, i, j, 1);
        repaired = true;
      }
    if (!repaired)
      break;
  }
  return {std::move(d), std::move(u), std::move(v)};
}

inline std::vector<Integer> elementary_divisors(const IntMatrix& m) {
  std::vector<Integer> out;
  for (auto& x : snf(m).diagonal())
    if (x != 0)
      out.push_back(x);
  return out;
}

/// HNF basis of (row space over Q) intersected with Z^cols.
inline IntMatrix saturation(const IntMatrix& m) {
  SmithResult s = snf(m);
  std::size_t r = 0;
  for (const auto& x : s.diagonal())
    if (x != 0)
      ++r;
  // M = U^-1 D V^-1, so the row space is spanned by the first r rows of V^-1,
  // which extend to a unimodular matrix and hence span a saturated lattice.
  IntMatrix vinv = inverse(s.right);
  return lattice_basis(vinv.block(0, 0, r, vinv.cols()));
}

} // namespace jacdec
