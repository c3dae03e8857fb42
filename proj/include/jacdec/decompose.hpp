#pragma once

// Abelian subvarieties cut out by group-algebra idempotents.
//
// For a subgroup H the averaging element p_H = (1/|H|) sum h acts on the
// period lattice; its image is a saturated sublattice whose induced
// alternating form, polarization type and Riemann matrix are computed here.
// Lattice vectors are rows in the symplectic basis. The rational
// representation acts on coordinate columns (Pi rho(f) = rho_a(f) Pi), so
// the image of p_H is spanned by the rows of rho(p_H)^t.

#include "jacdec/matrix.hpp"
#include "jacdec/normal_form.hpp"
#include "jacdec/symplectic.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

class NotASubgroup : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateForm : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct Idempotent {
  std::vector<IntMatrix> subgroup;
  RatMatrix rho; // (1/|H|) sum_{h in H} h
};

inline Idempotent make_idempotent(const std::vector<IntMatrix>& subgroup) {
  if (subgroup.empty())
    throw NotASubgroup("empty element list");
  const std::size_t n = subgroup.front().rows();
  RatMatrix rho(n, n, Rational(0));
  for (const auto& h : subgroup)
    rho = rho + to_rational(h);
  rho = Rational(1, static_cast<long>(subgroup.size())) * rho;
  if (rho * rho != rho)
    throw NotASubgroup("averaging element is not idempotent; the elements do not form a subgroup");
  return {subgroup, std::move(rho)};
}

struct PolarizationType {
  std::vector<Integer> divisors; // d1 | d2 | ..., one per symplectic pair
  Integer content;               // gcd of all entries of the form
};

/// Alternating form B J B^t of a row basis B.
inline IntMatrix induced_form(const IntMatrix& b) {
  if (b.cols() % 2 != 0)
    throw DimensionMismatch("lattice rank must be even");
  return b * standard_symplectic_form(b.cols() / 2) * transpose(b);
}

inline PolarizationType polarization_type_of_form(const IntMatrix& e) {
  std::vector<Integer> diag = snf(e).diagonal();
  if (diag.size() % 2 != 0)
    throw DegenerateForm("alternating form of odd rank");
  PolarizationType t;
  for (std::size_t i = 0; i < diag.size(); i += 2) {
    if (diag[i] == 0 || diag[i] != diag[i + 1])
      throw DegenerateForm("induced alternating form is degenerate");
    t.divisors.push_back(diag[i]);
  }
  t.content = 0;
  for (const auto& x : e.entries())
    mpz_gcd(t.content.get_mpz_t(), t.content.get_mpz_t(), x.get_mpz_t());
  return t;
}

inline PolarizationType polarization_type(const IntMatrix& b) {
  return polarization_type_of_form(induced_form(b));
}

struct Sublattice {
  IntMatrix basis; // k x 2g
  IntMatrix form;  // k x k, basis J basis^t
  PolarizationType type;

  std::size_t rank() const { return basis.rows(); }
};

inline Sublattice make_sublattice(IntMatrix basis) {
  if (basis.rows() % 2 != 0)
    throw DegenerateForm("sublattice rank must be even");
  if (rank(to_rational(basis)) != basis.rows())
    throw DegenerateForm("sublattice basis rows are dependent");
  IntMatrix e = induced_form(basis);
  PolarizationType t = polarization_type_of_form(e);
  return {std::move(basis), std::move(e), std::move(t)};
}

/// Image of p_H on the lattice Z^{2g}, as an HNF basis.
inline Sublattice idempotent_image(const std::vector<IntMatrix>& subgroup, std::size_t lattice_rank) {
  Idempotent p = make_idempotent(subgroup);
  if (p.rho.rows() != lattice_rank)
    throw DimensionMismatch("subgroup matrices do not act on a rank-" + std::to_string(lattice_rank) +
                            " lattice");
  IntMatrix sum(lattice_rank, lattice_rank, Integer(0));
  for (const auto& h : subgroup)
    sum = sum + h;
  Sublattice l = make_sublattice(saturation(transpose(sum)));
  if (Rational(static_cast<long>(l.rank())) != trace(p.rho))
    throw std::logic_error("image rank differs from trace of the idempotent");
  return l;
}

// ---------------------------------------------------------------------------

struct SymplecticReduction {
  IntMatrix change;              // rows e_1..e_m, f_1..f_m in terms of the input basis
  std::vector<Integer> divisors; // <e_i, f_i> = d_i
};

/// Deterministic integral Frobenius reduction of an alternating form F:
/// returns unimodular U with U F U^t = [[0, D], [-D, 0]], D diagonal. The
/// pivot pair is the smallest nonzero |F(p, q)|, ties broken by (p, q).
inline SymplecticReduction frobenius_reduction(const IntMatrix& form) {
  if (!form.is_square() || form.rows() % 2 != 0)
    throw DimensionMismatch("alternating form must be square of even size");
  if (transpose(form) != -form)
    throw DegenerateForm("form is not alternating");
  const std::size_t k = form.rows();
  IntMatrix u = IntMatrix::identity(k, Integer(0));
  std::vector<std::size_t> remaining(k);
  for (std::size_t i = 0; i < k; ++i)
    remaining[i] = i;
  std::vector<std::size_t> es, fs;
  std::vector<Integer> divisors;

  while (!remaining.empty()) {
    IntMatrix f = u * form * transpose(u);
    std::size_t p = 0, q = 0;
    Integer best = 0;
    for (std::size_t a = 0; a < remaining.size(); ++a)
      for (std::size_t b = a + 1; b < remaining.size(); ++b) {
        const Integer& x = f(remaining[a], remaining[b]);
        if (x != 0 && (best == 0 || abs(x) < best)) {
          best = abs(x);
          p = remaining[a];
          q = remaining[b];
        }
      }
    if (best == 0)
      throw DegenerateForm("alternating form is degenerate");
    if (f(p, q) < 0)
      std::swap(p, q);
    const Integer d = f(p, q);

    bool reduced = false;
    for (std::size_t r : remaining) {
      if (r == p || r == q)
        continue;
      Integer t;
      if (!mpz_divisible_p(f(p, r).get_mpz_t(), d.get_mpz_t())) {
        // <p, r - t q> = F(p, r) - t d
        mpz_fdiv_q(t.get_mpz_t(), f(p, r).get_mpz_t(), d.get_mpz_t());
        detail::add_row_multiple(u, r, q, -t);
        reduced = true;
        break;
      }
      if (!mpz_divisible_p(f(q, r).get_mpz_t(), d.get_mpz_t())) {
        // <q, r + t p> = F(q, r) - t d
        mpz_fdiv_q(t.get_mpz_t(), f(q, r).get_mpz_t(), d.get_mpz_t());
        detail::add_row_multiple(u, r, p, t);
        reduced = true;
        break;
      }
    }
    if (reduced)
      continue; // a smaller pivot now exists

    for (std::size_t r : remaining) {
      if (r == p || r == q)
        continue;
      Integer beta = f(p, r) / d;
      Integer alpha = -f(q, r) / d;
      detail::add_row_multiple(u, r, p, -alpha);
      detail::add_row_multiple(u, r, q, -beta);
    }
    es.push_back(p);
    fs.push_back(q);
    divisors.push_back(d);
    std::erase(remaining, p);
    std::erase(remaining, q);
  }

  std::vector<std::size_t> order = es;
  order.insert(order.end(), fs.begin(), fs.end());
  return {select_rows(u, order), std::move(divisors)};
}

// ---------------------------------------------------------------------------

struct SubvarietyData {
  Sublattice lattice;
  RiemannMatrix z_sub;
  Integer divisor;           // content removed from the induced form
  IntMatrix symplectic_basis; // rows: lattice basis in which (form / divisor) is J
  CycMatrix period_matrix;   // (k/2) x k, in the symplectic basis, before normalisation
};

/// Riemann matrix of the subvariety whose lattice is `lattice`, inside the
/// abelian variety with period matrix (I Z).
inline SubvarietyData sub_period_matrix(const RiemannMatrix& z, const Sublattice& lattice,
                                        const PositivityOptions& opts = {}) {
  const std::size_t g = z.g(), k = lattice.rank();
  if (lattice.basis.cols() != 2 * g)
    throw DimensionMismatch("lattice lives in rank " + std::to_string(lattice.basis.cols()) +
                            ", period matrix has 2g = " + std::to_string(2 * g));
  const FieldPtr& field = z.field();
  // complex coordinates of the lattice basis: columns of Pi B^t
  CycMatrix coords = period_matrix(z.matrix()) * transpose(to_field(lattice.basis, field));
  auto [red, pivot_cols] = rref(coords);
  if (pivot_cols.size() * 2 != k)
    throw DegenerateForm("lattice of rank " + std::to_string(k) + " spans a complex subspace of dimension " +
                         std::to_string(pivot_cols.size()));
  // first independent columns form the complex basis; rref rows give the
  // coordinates of every column in that basis
  CycMatrix sub_periods = red.block(0, 0, pivot_cols.size(), k);

  Integer d = lattice.type.content;
  IntMatrix scaled = lattice.form;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      mpz_divexact(scaled(i, j).get_mpz_t(), scaled(i, j).get_mpz_t(), d.get_mpz_t());
  SymplecticReduction sr = frobenius_reduction(scaled);
  for (const auto& x : sr.divisors)
    if (x != 1)
      throw DegenerateForm("induced form divided by its content is not principal");

  CycMatrix p = sub_periods * transpose(to_field(sr.change, field));
  const std::size_t h = k / 2;
  CycMatrix zsub = inverse(p.block(0, 0, h, h)) * p.block(0, h, h, h);
  RiemannMatrix rz(std::move(zsub), z.embedding_k(), opts);
  return {lattice, std::move(rz), d, sr.change * lattice.basis, std::move(p)};
}

// ---------------------------------------------------------------------------

struct SumMapCertificate {
  enum class Verdict { Isomorphism, Isogeny, Degenerate };
  Integer det;          // |det| of the stacked bases
  Integer kernel_order; // equals |det| when nonzero
  Verdict verdict = Verdict::Degenerate;
};

inline const char* to_string(SumMapCertificate::Verdict v) {
  switch (v) {
  case SumMapCertificate::Verdict::Isomorphism:
    return "isomorphism";
  case SumMapCertificate::Verdict::Isogeny:
    return "isogeny";
  case SumMapCertificate::Verdict::Degenerate:
    return "degenerate";
  }
  return "?";
}

/// The sum map L1 x L2 -> Z^{2g} as the stacked basis matrix.
inline SumMapCertificate sum_map_certificate(const IntMatrix& b1, const IntMatrix& b2) {
  if (b1.cols() != b2.cols() || b1.rows() + b2.rows() != b1.cols())
    throw DimensionMismatch("sum map needs rank(L1) + rank(L2) = 2g");
  SumMapCertificate c;
  c.det = abs(det(vstack(b1, b2)));
  c.kernel_order = c.det;
  c.verdict = c.det == 1   ? SumMapCertificate::Verdict::Isomorphism
              : c.det == 0 ? SumMapCertificate::Verdict::Degenerate
                           : SumMapCertificate::Verdict::Isogeny;
  return c;
}

inline SumMapCertificate sum_map_certificate(const Sublattice& l1, const Sublattice& l2) {
  return sum_map_certificate(l1.basis, l2.basis);
}

} // namespace jacdec
