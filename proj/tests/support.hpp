#pragma once

#include "jacdec/json_io.hpp"
#include "jacdec/reproduce.hpp"

#include <initializer_list>
#include <string>
#include <vector>

#ifndef JACDEC_TEST_FIXTURES
#error "JACDEC_TEST_FIXTURES must point at the fixture directory"
#endif

namespace jacdec::test {

inline const CurveFixtures& curve() {
  static const CurveFixtures f = load_curve_fixtures(JACDEC_TEST_FIXTURES);
  return f;
}

inline const MatrixGroup& curve_group() {
  static const MatrixGroup g = generate_group(curve().group.generators);
  return g;
}

inline const IntMatrix& gen(const std::string& name) {
  for (const auto& [n, m] : curve().group.environment)
    if (n == name)
      return m;
  throw std::invalid_argument("no generator " + name);
}

inline CycNum cyc(const FieldPtr& f, std::initializer_list<Rational> c) {
  return CycNum(f, std::vector<Rational>(c));
}

inline CycNum zeta_pow(const FieldPtr& f, long k) { return CycNum::zeta_power(f, k); }

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Integer> e;
  std::size_t c = 0;
  for (const auto& r : rows) {
    c = r.size();
    for (long x : r)
      e.emplace_back(x);
  }
  return IntMatrix(rows.size(), c, std::move(e), Integer(0));
}

inline CycMatrix cyc_matrix(std::size_t r, std::size_t c, std::vector<CycNum> e) {
  CycNum zero(e.front().field(), 0);
  return CycMatrix(r, c, std::move(e), zero);
}

inline IntMatrix scaled(const IntMatrix& m, long s) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      r(i, j) *= s;
  return r;
}

inline CycMatrix z_tilde(int which) {
  return Rational(1, 2) * (which == 1 ? curve().z1 : curve().z2);
}

} // namespace jacdec::test
