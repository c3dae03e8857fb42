#pragma once

// Sp(2g, Z), the Siegel upper half-space and its Sp(2g, Z) action
//
//   R . Z = (A + Z C)^-1 (B + Z D),   R = [[A, B], [C, D]] in g x g blocks,
//
// which comes from (I Z) R = (A + Z C) (I  R.Z). It is a right action:
// (R1 R2) . Z = R2 . (R1 . Z).

#include "jacdec/bigfloat.hpp"
#include "jacdec/cyclofield.hpp"
#include "jacdec/grouprep.hpp"
#include "jacdec/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

class NotSymplectic : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotRiemannMatrix : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// J = [[0, I_g], [-I_g, 0]].
inline IntMatrix standard_symplectic_form(std::size_t g) {
  IntMatrix j(2 * g, 2 * g, Integer(0));
  for (std::size_t i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

inline bool is_symplectic(const IntMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0)
    throw DimensionMismatch("symplectic test needs an even square matrix, got " + m.shape());
  IntMatrix j = standard_symplectic_form(m.rows() / 2);
  return transpose(m) * j * m == j;
}

class SymplecticMatrix {
public:
  explicit SymplecticMatrix(IntMatrix m) : m_(std::move(m)) {
    if (!is_symplectic(m_))
      throw NotSymplectic("matrix does not satisfy R^t J R = J");
  }
  std::size_t g() const { return m_.rows() / 2; }
  const IntMatrix& matrix() const { return m_; }

private:
  IntMatrix m_;
};

// ---------------------------------------------------------------------------
// Positivity of Im(Z) at a chosen complex embedding.

struct PositivityOptions {
  long precision_bits = 128;
  double threshold = std::ldexp(1.0, -40); // leading minors must exceed this
};

/// Leading principal minors of Im(Z) under zeta -> exp(2 pi i k / n).
inline std::vector<BigFloat> imaginary_leading_minors(const CycMatrix& z, unsigned k,
                                                      long precision_bits) {
  const std::size_t g = z.rows();
  std::vector<BigFloat> im;
  im.reserve(g * g);
  for (const auto& e : z.entries())
    im.push_back(embed(e, precision_bits, k).im);
  auto at = [&im, g](std::size_t i, std::size_t j) -> BigFloat& { return im[i * g + j]; };
  std::vector<BigFloat> minors;
  BigFloat running(1.0, precision_bits);
  for (std::size_t c = 0; c < g; ++c) {
    // without pivoting, the c-th pivot is minor_c / minor_{c-1}
    running = running * at(c, c);
    minors.push_back(running);
    if (at(c, c).sign() == 0) {
      while (minors.size() < g)
        minors.emplace_back(precision_bits);
      break;
    }
    for (std::size_t i = c + 1; i < g; ++i) {
      BigFloat f = at(i, c) / at(c, c);
      for (std::size_t j = c; j < g; ++j)
        at(i, j) = at(i, j) - f * at(c, j);
    }
  }
  return minors;
}

inline bool imaginary_part_positive(const CycMatrix& z, unsigned k, const PositivityOptions& opts = {}) {
  BigFloat thr(opts.threshold, opts.precision_bits);
  for (const auto& m : imaginary_leading_minors(z, k, opts.precision_bits))
    if (!(m > thr))
      return false;
  return true;
}

/// A point of the Siegel upper half-space with entries in Q(zeta_n), together
/// with the embedding index k at which Im(Z) is positive definite.
class RiemannMatrix {
public:
  RiemannMatrix(CycMatrix z, unsigned embedding_k, const PositivityOptions& opts = {})
      : z_(std::move(z)), k_(embedding_k) {
    if (!z_.is_square() || z_.rows() == 0)
      throw NotRiemannMatrix("Riemann matrix must be square and nonempty");
    if (!is_symmetric(z_))
      throw NotRiemannMatrix("Riemann matrix is not symmetric");
    if (!imaginary_part_positive(z_, k_, opts))
      throw NotRiemannMatrix("imaginary part is not positive definite at embedding k=" +
                             std::to_string(k_));
  }
  std::size_t g() const { return z_.rows(); }
  const CycMatrix& matrix() const { return z_; }
  unsigned embedding_k() const { return k_; }
  const FieldPtr& field() const { return z_.zero().field(); }

private:
  CycMatrix z_;
  unsigned k_;
};

/// (I_g Z).
inline CycMatrix period_matrix(const CycMatrix& z) {
  return hstack(CycMatrix::identity(z.rows(), z.zero()), z);
}

/// (A + Z C)^-1 (B + Z D); throws SingularMatrix if A + Z C is singular.
inline CycMatrix siegel_act(const IntMatrix& r, const CycMatrix& z) {
  const std::size_t g = z.rows();
  if (!z.is_square() || r.rows() != 2 * g || r.cols() != 2 * g)
    throw DimensionMismatch("siegel_act: " + r.shape() + " on " + z.shape());
  const FieldPtr& f = z.zero().field();
  CycMatrix a = to_field(r.block(0, 0, g, g), f), b = to_field(r.block(0, g, g, g), f);
  CycMatrix c = to_field(r.block(g, 0, g, g), f), d = to_field(r.block(g, g, g, g), f);
  return inverse(a + z * c) * (b + z * d);
}

inline RiemannMatrix siegel_act(const SymplecticMatrix& r, const RiemannMatrix& z,
                                const PositivityOptions& opts = {}) {
  return RiemannMatrix(siegel_act(r.matrix(), z.matrix()), z.embedding_k(), opts);
}

// ---------------------------------------------------------------------------
// Fixed point of a finite subgroup of Sp(2g, Z).

class FixedPointError : public std::runtime_error {
public:
  enum class Kind { NoRegularElement, NoSurvivor, MultipleSurvivors };
  FixedPointError(Kind kind, const std::string& what, std::vector<CycMatrix> survivors = {})
      : std::runtime_error(what), kind_(kind), survivors_(std::move(survivors)) {}
  Kind kind() const { return kind_; }
  const std::vector<CycMatrix>& survivors() const { return survivors_; }

private:
  Kind kind_;
  std::vector<CycMatrix> survivors_;
};

struct FixedPointResult {
  RiemannMatrix z;
  std::size_t regular_element;        // index into MatrixGroup::elements
  std::size_t regular_order;
  std::vector<std::size_t> eigenlines; // chosen lines, indices into the eigenvalue list
  std::vector<CycNum> eigenvalues;     // eigenvalue of every eigenline of the regular element
};

inline std::vector<unsigned> coprime_residues(unsigned n) {
  std::vector<unsigned> ks;
  if (n <= 2)
    return {1};
  for (unsigned k = 1; k < n; ++k)
    if (std::gcd(k, n) == 1)
      ks.push_back(k);
  return ks;
}

namespace detail {

inline bool is_scalar_sign(const IntMatrix& m) {
  IntMatrix id = IntMatrix::identity(m.rows(), Integer(0));
  return m == id || m == -id;
}

/// Next g-subset of {0..n-1} in lexicographic order; false when exhausted.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j)
        c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace detail

/// The unique Z in H_g fixed by every element of the group.
///
/// A group element of maximal order whose eigenvalues are distinct roots of
/// unity (of the given orders, lying in the field) is diagonalised; every
/// g-subset of its 2g eigenlines spans a candidate row space W of (I Z).
/// W survives if it is invariant under every generator, W + conj(W) is the
/// whole space, its left g x g block is invertible, the normalised Z is
/// symmetric and Im(Z) is positive definite. Embeddings k coprime to n are
/// tried in increasing order; the first k with survivors is used.
inline FixedPointResult fixed_riemann_matrix(const MatrixGroup& group, const FieldPtr& field,
                                             const std::vector<unsigned>& rou_orders,
                                             const PositivityOptions& opts = {}) {
  const std::size_t dim = group.degree();
  if (dim == 0 || dim % 2 != 0)
    throw DimensionMismatch("group must act on an even-rank lattice");
  const std::size_t g = dim / 2;
  if (g > 8)
    throw std::invalid_argument("fixed-point solver supports g <= 8");
  for (const auto& [name, m] : group.generators)
    if (!is_symplectic(m))
      throw NotSymplectic("generator '" + name + "' is not symplectic");

  bool all_scalar = true;
  for (const auto& m : group.elements)
    all_scalar = all_scalar && detail::is_scalar_sign(m);
  if (all_scalar)
    throw FixedPointError(FixedPointError::Kind::MultipleSurvivors,
                          "every element acts trivially on H_g: the fixed locus is all of H_g");

  const std::vector<CycNum> candidates = roots_of_unity(field, rou_orders);
  const CycNum zero(field, 0);

  // (1) regular element of maximal order
  std::vector<std::pair<std::size_t, std::size_t>> by_order; // (order, index)
  for (std::size_t i = 0; i < group.order(); ++i)
    by_order.emplace_back(element_order(group.elements[i], group.order()), i);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::optional<std::size_t> regular;
  std::size_t regular_order = 0;
  CycMatrix lines;
  std::vector<CycNum> line_values;
  for (const auto& [ord, idx] : by_order) {
    CycMatrix r = to_field(group.elements[idx], field);
    CycMatrix acc(0, dim, zero);
    std::vector<CycNum> values;
    bool distinct = true;
    for (const auto& lambda : candidates) {
      CycMatrix e = eigenspace(r, lambda);
      if (e.rows() > 1) {
        distinct = false;
        break;
      }
      if (e.rows() == 1) {
        acc = vstack(acc, e);
        values.push_back(lambda);
      }
    }
    if (distinct && acc.rows() == dim) {
      regular = idx;
      regular_order = ord;
      lines = std::move(acc);
      line_values = std::move(values);
      break;
    }
  }
  if (!regular)
    throw FixedPointError(FixedPointError::Kind::NoRegularElement,
                          "no group element has 2g distinct eigenvalues among the given roots of unity");

  std::vector<CycMatrix> gens;
  for (const auto& [name, m] : group.generators)
    gens.push_back(to_field(m, field));

  // (2)-(3) exact conditions, independent of the embedding
  struct Candidate {
    std::vector<std::size_t> subset;
    CycMatrix z;
  };
  std::vector<Candidate> exact;
  std::vector<std::size_t> subset(g);
  std::iota(subset.begin(), subset.end(), 0);
  do {
    CycMatrix w = select_rows(lines, subset);
    bool invariant = true;
    for (const auto& r : gens)
      if (rank(vstack(w, w * r)) != g) {
        invariant = false;
        break;
      }
    if (!invariant)
      continue;
    if (rank(vstack(w, conj(w))) != dim)
      continue;
    CycMatrix p1 = w.block(0, 0, g, g), p2 = w.block(0, g, g, g);
    if (det(p1).is_zero())
      continue;
    CycMatrix z = inverse(p1) * p2;
    if (!is_symmetric(z))
      continue;
    exact.push_back({subset, std::move(z)});
  } while (detail::next_combination(subset, dim));

  for (unsigned k : coprime_residues(field->conductor())) {
    std::vector<const Candidate*> survivors;
    for (const auto& c : exact)
      if (imaginary_part_positive(c.z, k, opts))
        survivors.push_back(&c);
    if (survivors.empty())
      continue;
    if (survivors.size() > 1) {
      std::vector<CycMatrix> zs;
      for (auto* s : survivors)
        zs.push_back(s->z);
      throw FixedPointError(FixedPointError::Kind::MultipleSurvivors,
                            std::to_string(zs.size()) + " distinct fixed points at embedding k=" +
                                std::to_string(k),
                            std::move(zs));
    }
    return {RiemannMatrix(survivors.front()->z, k, opts), *regular, regular_order,
            survivors.front()->subset, line_values};
  }
  throw FixedPointError(FixedPointError::Kind::NoSurvivor, "no invariant subspace yields a point of H_g");
}

// ---------------------------------------------------------------------------
// Isomorphisms of principally polarised abelian varieties.

struct IsomorphismWitness {
  IntMatrix t; // symplectic, T = [[A, B], [C, D]]
  CycMatrix m; // analytic part, M = A + Zb C
};

/// M (I Za) == (I Zb) T and T^t J T == J, exactly.
inline bool verify_isomorphism_witness(const CycMatrix& za, const CycMatrix& zb,
                                       const IsomorphismWitness& w) {
  const std::size_t g = za.rows();
  if (w.t.rows() != 2 * g || w.t.cols() != 2 * g || w.m.rows() != g || w.m.cols() != g)
    return false;
  if (!is_symplectic(w.t))
    return false;
  return w.m * period_matrix(za) == period_matrix(zb) * to_field(w.t, za.zero().field());
}

struct WitnessSearch {
  enum class Status { Found, None, Inconclusive };
  Status status = Status::None;
  std::optional<IsomorphismWitness> witness;
  std::size_t solution_dimension = 0;
  std::size_t candidates_checked = 0;
};

namespace detail {

// T^t J T == J for a row-major 2g x 2g integer matrix.
template <class Int> bool symplectic_flat(const std::vector<Int>& t, std::size_t g) {
  const std::size_t n = 2 * g;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Int s = 0;
      for (std::size_t i = 0; i < g; ++i)
        s += t[i * n + a] * t[(i + g) * n + b] - t[(i + g) * n + a] * t[i * n + b];
      Int expect = (b == a + g) ? 1 : 0;
      if (s != expect)
        return false;
    }
  return true;
}

template <class Int>
std::optional<std::vector<Integer>> enumerate_witness(const std::vector<std::vector<Int>>& basis,
                                                      const Int& denom, std::size_t g, long bound,
                                                      std::size_t budget, std::size_t& checked) {
  const std::size_t d = basis.size(), len = basis.front().size();
  std::vector<long> c(d);
  std::vector<Int> t(len);
  for (long shell = 0; shell <= bound; ++shell) {
    std::fill(c.begin(), c.end(), -shell);
    for (;;) {
      long mx = 0;
      for (long x : c)
        mx = std::max(mx, x < 0 ? -x : x);
      if (mx == shell) {
        if (checked++ >= budget)
          return std::nullopt;
        std::fill(t.begin(), t.end(), Int(0));
        for (std::size_t f = 0; f < d; ++f)
          if (c[f] != 0)
            for (std::size_t u = 0; u < len; ++u)
              t[u] += Int(c[f]) * basis[f][u];
        bool integral = true;
        for (auto& x : t) {
          if (x % denom != 0) {
            integral = false;
            break;
          }
          x /= denom;
        }
        if (integral && symplectic_flat(t, g)) {
          std::vector<Integer> out;
          for (const auto& x : t)
            out.emplace_back(Integer(x));
          return out;
        }
      }
      std::size_t i = 0;
      while (i < d && c[i] == shell) {
        c[i] = -shell;
        ++i;
      }
      if (i == d)
        break;
      ++c[i];
    }
  }
  return std::nullopt;
}

} // namespace detail

/// Searches for integral symplectic T with B + Zb D = (A + Zb C) Za.
///
/// The relation is linear in T; expanded over the power basis it is a
/// rational system whose kernel is computed exactly. The free variables of
/// that kernel are entries of T, and integer values for them in
/// [-search_bound, search_bound] are enumerated in shells of growing max-norm.
inline WitnessSearch ppav_isomorphism_witness(const CycMatrix& za, const CycMatrix& zb, long search_bound,
                                              std::size_t budget = 50'000'000) {
  if (!za.is_square() || za.rows() != zb.rows() || zb.rows() != zb.cols())
    throw DimensionMismatch("witness search needs two g x g matrices of the same g");
  const std::size_t g = za.rows(), n = 2 * g, unknowns = n * n;
  const FieldPtr& field = za.zero().field();
  const std::size_t deg = field->degree();
  WitnessSearch out;
  if (za == zb) {
    IntMatrix id = IntMatrix::identity(n, Integer(0));
    out.status = WitnessSearch::Status::Found;
    out.witness = IsomorphismWitness{id, CycMatrix::identity(g, za.zero())};
    return out;
  }

  const CycNum zero(field, 0);
  RatMatrix system(g * g * deg, unknowns, Rational(0));
  for (std::size_t u = 0; u < unknowns; ++u) {
    CycMatrix t(n, n, zero);
    t(u / n, u % n) = CycNum(field, 1);
    CycMatrix a = t.block(0, 0, g, g), b = t.block(0, g, g, g);
    CycMatrix c = t.block(g, 0, g, g), d = t.block(g, g, g, g);
    CycMatrix e = b + zb * d - (a + zb * c) * za;
    for (std::size_t p = 0; p < g; ++p)
      for (std::size_t q = 0; q < g; ++q)
        for (std::size_t k = 0; k < deg; ++k)
          system((p * g + q) * deg + k, u) = e(p, q).coeffs()[k];
  }
  RatMatrix ker = kernel(system);
  out.solution_dimension = ker.rows();
  if (ker.rows() == 0)
    return out; // only T = 0

  Integer denom = lcm_of_denominators(ker.entries().data(), ker.entries().data() + ker.entries().size());
  std::vector<std::vector<Integer>> basis(ker.rows(), std::vector<Integer>(unknowns));
  Integer max_abs = 0;
  for (std::size_t f = 0; f < ker.rows(); ++f)
    for (std::size_t u = 0; u < unknowns; ++u) {
      Rational s = ker(f, u) * denom;
      basis[f][u] = s.get_num();
      max_abs = std::max(max_abs, Integer(abs(basis[f][u])));
    }

  std::optional<std::vector<Integer>> found;
  // entries of T^t J T are bounded by 2g (d * bound * max_abs)^2
  Integer worst = Integer(ker.rows()) * search_bound * max_abs;
  worst = worst * worst * static_cast<unsigned long>(2 * g + 1);
  if (worst < (Integer(1) << 62)) {
    std::vector<std::vector<std::int64_t>> b64(basis.size(), std::vector<std::int64_t>(unknowns));
    for (std::size_t f = 0; f < basis.size(); ++f)
      for (std::size_t u = 0; u < unknowns; ++u)
        b64[f][u] = basis[f][u].get_si();
    found = detail::enumerate_witness<std::int64_t>(b64, denom.get_si(), g, search_bound, budget,
                                                    out.candidates_checked);
  } else {
    found = detail::enumerate_witness<Integer>(basis, denom, g, search_bound, budget,
                                               out.candidates_checked);
  }

  if (!found) {
    out.status = WitnessSearch::Status::Inconclusive;
    return out;
  }
  IntMatrix t(n, n, std::move(*found), Integer(0));
  CycMatrix tf = to_field(t, field);
  IsomorphismWitness w{t, tf.block(0, 0, g, g) + zb * tf.block(g, 0, g, g)};
  if (!verify_isomorphism_witness(za, zb, w))
    throw std::logic_error("witness search produced a matrix that fails substitution");
  out.status = WitnessSearch::Status::Found;
  out.witness = std::move(w);
  return out;
}

} // namespace jacdec
