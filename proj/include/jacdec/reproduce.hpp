#pragma once

// End-to-end check of the genus-4 Accola-Maclachlan computation against the
// bundled fixtures. Every step records pass/fail and a short detail line;
// nothing is hard-coded here, all matrices and target values come from the
// fixture directory.

#include "jacdec/decompose.hpp"
#include "jacdec/grouprep.hpp"
#include "jacdec/json_io.hpp"
#include "jacdec/normal_form.hpp"
#include "jacdec/simplicity.hpp"
#include "jacdec/symplectic.hpp"

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

struct CurveFixtures {
  GroupSpec group;
  FieldPtr field;
  CycMatrix z;
  IntMatrix b1, b2, rho_phi;
  CycMatrix z1, z2;
  Json expectations;
};

inline CurveFixtures load_curve_fixtures(const std::string& dir) {
  auto file = [&dir](const char* name) { return read_json_file(dir + "/" + name); };
  CurveFixtures f;
  f.group = group_spec_from_json(file("group.json"), "group.json");
  Json z = file("riemann_z.json");
  f.field = field_from_json(detail::member(z, "field", "riemann_z.json"), "riemann_z.json.field");
  f.z = cyc_matrix_from_json(z, f.field, "riemann_z.json");
  f.b1 = int_matrix_from_json(file("b1.json"), "b1.json");
  f.b2 = int_matrix_from_json(file("b2.json"), "b2.json");
  f.rho_phi = int_matrix_from_json(file("rho_phi.json"), "rho_phi.json");
  f.z1 = cyc_matrix_from_json(file("z1.json"), f.field, "z1.json");
  f.z2 = cyc_matrix_from_json(file("z2.json"), f.field, "z2.json");
  f.expectations = file("expectations.json");
  return f;
}

struct VerifyOptions {
  PositivityOptions positivity;
  long search_bound = 20;
};

struct RunStep {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunReport {
  std::vector<RunStep> steps;
  Json artifacts = Json::object();

  bool passed() const {
    for (const auto& s : steps)
      if (!s.passed)
        return false;
    return !steps.empty();
  }
  const RunStep* find(const std::string& name) const {
    for (const auto& s : steps)
      if (s.name == name)
        return &s;
    return nullptr;
  }
};

inline Json to_json(const RunReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back(Json{{"name", s.name}, {"status", s.passed ? "pass" : "fail"}, {"detail", s.detail}});
  return Json{{"passed", r.passed()}, {"steps", std::move(steps)}, {"artifacts", r.artifacts}};
}

inline std::string render_table(const RunReport& r) {
  std::size_t width = 0;
  for (const auto& s : r.steps)
    width = std::max(width, s.name.size());
  std::string out;
  for (const auto& s : r.steps)
    out += std::string(s.passed ? "PASS  " : "FAIL  ") + s.name + std::string(width - s.name.size() + 2, ' ') +
           s.detail + "\n";
  out += r.passed() ? "all steps passed\n" : "verification FAILED\n";
  return out;
}

namespace detail {

inline std::string join(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline std::vector<Rational> rational_list(const Json& j, const std::string& where) {
  std::vector<Rational> out;
  for (const auto& x : j)
    out.push_back(rational_from_json(x, where));
  return out;
}

// Does the one-parameter family of v trace the line p + mu d? On success
// returns (alpha, beta) with p + mu d = particular + (alpha + beta mu) direction.
inline std::optional<std::pair<Rational, Rational>> match_line(const Verdict& v, const std::vector<Rational>& p,
                                                               const std::vector<Rational>& d) {
  if (v.directions.size() != 1 || p.size() != 6 || d.size() != 6)
    return std::nullopt;
  const auto& dc = v.directions.front();
  std::size_t u = 0;
  while (u < 6 && dc[u] == 0)
    ++u;
  if (u == 6)
    return std::nullopt;
  Rational alpha = (p[u] - v.particular[u]) / dc[u], beta = d[u] / dc[u];
  for (std::size_t i = 0; i < 6; ++i)
    if (v.particular[i] + alpha * dc[i] != p[i] || beta * dc[i] != d[i])
      return std::nullopt;
  return std::make_pair(alpha, beta);
}

} // namespace detail

/// Runs every step; a step that throws is recorded as failed with the message.
/// Throws InputError only if the fixtures cannot be loaded.
inline RunReport run_verification(const CurveFixtures& fx, const VerifyOptions& opts = {}) {
  RunReport rep;
  auto step = [&rep](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    RunStep s{name, false, ""};
    try {
      auto [ok, detail] = body();
      s.passed = ok;
      s.detail = std::move(detail);
    } catch (const std::exception& e) {
      s.detail = std::string("error: ") + e.what();
    }
    rep.steps.push_back(std::move(s));
  };
  const Json& ex = fx.expectations;
  const auto& env = fx.group.environment;
  auto named = [&env](const std::string& n) -> const IntMatrix& {
    for (const auto& [name, m] : env)
      if (name == n)
        return m;
    throw InputError("no generator or derived element named '" + n + "'");
  };

  step("generators-symplectic", [&] {
    std::string bad;
    for (const auto& [name, m] : fx.group.generators)
      if (!is_symplectic(m))
        bad += (bad.empty() ? "" : ", ") + name;
    return std::make_pair(bad.empty(), bad.empty() ? "all generators satisfy R^t J R = J" : "not symplectic: " + bad);
  });

  std::optional<MatrixGroup> group;
  step("group-order", [&] {
    group = generate_group(fx.group.generators, 100000);
    std::size_t non_symplectic = 0;
    for (const auto& m : group->elements)
      non_symplectic += is_symplectic(m) ? 0 : 1;
    const std::size_t want = ex.at("group_order").get<std::size_t>();
    return std::make_pair(group->order() == want && non_symplectic == 0,
                          "order " + std::to_string(group->order()) + " (expected " + std::to_string(want) + "), " +
                              std::to_string(non_symplectic) + " non-symplectic elements");
  });

  step("element-orders", [&] {
    bool ok = true;
    std::string detail;
    for (const auto& [name, want] : ex.at("element_orders").items()) {
      std::size_t got = element_order(named(name), 1000);
      ok = ok && got == want.get<std::size_t>();
      detail += (detail.empty() ? "" : ", ") + name + ":" + std::to_string(got);
    }
    // the derived involution is central
    for (const auto& [dname, word] : fx.group.derived)
      for (const auto& [gname, g] : fx.group.generators) {
        const IntMatrix& d = named(dname);
        bool commutes = d * g == g * d;
        ok = ok && commutes;
        if (!commutes)
          detail += ", " + dname + " does not commute with " + gname;
      }
    return std::make_pair(ok, detail);
  });

  step("relations", [&] {
    auto checks = verify_relations(env, fx.group.relations);
    std::string failed;
    for (const auto& c : checks)
      if (!c.holds)
        failed += (failed.empty() ? "" : ", ") + c.word;
    return std::make_pair(!checks.empty() && failed.empty(),
                          failed.empty() ? std::to_string(checks.size()) + " relations hold" : "fail: " + failed);
  });

  step("surface-kernel", [&] {
    if (!group || !fx.group.signature)
      return std::make_pair(false, std::string("group or signature unavailable"));
    std::vector<IntMatrix> images;
    for (const auto& w : fx.group.skep)
      images.push_back(evaluate_word(w, env));
    SkepReport r = verify_skep(images, *fx.group.signature, *group);
    std::string orders;
    for (bool b : r.orders_match)
      orders += b ? '1' : '0';
    return std::make_pair(r.ok(), std::string("product=1: ") + (r.product_is_identity ? "yes" : "no") +
                                      ", orders match: " + orders +
                                      ", generates: " + (r.generates_group ? "yes" : "no"));
  });

  step("riemann-hurwitz-genus", [&] {
    if (!group || !fx.group.signature)
      return std::make_pair(false, std::string("group or signature unavailable"));
    Rational g = riemann_hurwitz_genus(static_cast<long>(group->order()), *fx.group.signature);
    const long want = ex.at("genus").get<long>();
    return std::make_pair(g == want && periods_divide_order(static_cast<long>(group->order()), *fx.group.signature),
                          "genus " + g.get_str() + " (expected " + std::to_string(want) + ")");
  });

  std::optional<RiemannMatrix> zfix;
  step("fixed-point", [&] {
    if (!group)
      return std::make_pair(false, std::string("group unavailable"));
    FixedPointResult r = fixed_riemann_matrix(*group, fx.field, fx.group.rou_orders, opts.positivity);
    zfix = r.z;
    rep.artifacts["fixed_point"] = to_json(r.z);
    std::size_t moved = 0;
    for (const auto& m : group->elements)
      moved += siegel_act(m, r.z.matrix()) == r.z.matrix() ? 0 : 1;
    bool equal = r.z.matrix() == fx.z;
    return std::make_pair(equal && moved == 0,
                          std::string(equal ? "equals" : "differs from") + " the fixture Z at embedding k=" +
                              std::to_string(r.z.embedding_k()) + "; fixed by " +
                              std::to_string(group->order() - moved) + "/" + std::to_string(group->order()) +
                              " elements");
  });

  std::vector<std::optional<Sublattice>> images(2);
  const IntMatrix* fixture_b[2] = {&fx.b1, &fx.b2};
  for (std::size_t j = 0; j < 2; ++j) {
    const std::string label = "B" + std::to_string(j + 1);
    step("lattice-" + label, [&, j, label] {
      if (!group)
        return std::make_pair(false, std::string("group unavailable"));
      if (fx.group.subgroups.size() < 2)
        throw InputError("group.json needs two entries under \"subgroups\"");
      std::vector<IntMatrix> gens;
      for (const auto& w : fx.group.subgroups[j].second)
        gens.push_back(evaluate_word(w, env));
      MatrixGroup h = generate_group(gens, group->order());
      images[j] = idempotent_image(h.elements, group->degree());
      rep.artifacts["lattice_" + label] = to_json(images[j]->basis);
      bool same = same_lattice(images[j]->basis, *fixture_b[j]);
      return std::make_pair(same, std::string("image of p_H for ") + fx.group.subgroups[j].first +
                                      (same ? " equals" : " differs from") + " the row lattice of " + label);
    });
  }

  step("polarization-types", [&] {
    std::vector<Integer> want;
    for (const auto& x : ex.at("polarization_type"))
      want.push_back(detail::integer_from_json(x, "polarization_type"));
    bool ok = true;
    std::string detail;
    for (std::size_t j = 0; j < 2; ++j) {
      PolarizationType t = polarization_type(*fixture_b[j]);
      ok = ok && t.divisors == want;
      if (images[j]) {
        ok = ok && images[j]->type.divisors == want;
        detail += (j ? ", " : "") + std::string("S") + std::to_string(j + 1) + " " + detail::join(t.divisors);
      } else {
        ok = false;
      }
    }
    return std::make_pair(ok, detail + " (expected " + detail::join(want) + ")");
  });

  step("sum-map-certificate", [&] {
    SumMapCertificate c = sum_map_certificate(fx.b1, fx.b2);
    Integer want = detail::integer_from_json(ex.at("sum_map_det"), "sum_map_det");
    return std::make_pair(c.det == want && c.verdict == SumMapCertificate::Verdict::Isomorphism,
                          "|det(B1; B2)| = " + c.det.get_str() + ", " + to_string(c.verdict));
  });

  step("rho-phi-determinant", [&] {
    Integer d = det(fx.rho_phi);
    Integer want = detail::integer_from_json(ex.at("rho_phi_det"), "rho_phi_det");
    return std::make_pair(d == want, "det = " + d.get_str());
  });

  const Rational scale = detail::rational_from_json(ex.at("criterion_scale"), "criterion_scale");
  CycMatrix zt[2] = {scale * fx.z1, scale * fx.z2};

  std::optional<RiemannMatrix> zsub[2];
  for (std::size_t j = 0; j < 2; ++j) {
    const std::string label = "S" + std::to_string(j + 1);
    step("witness-" + label, [&, j, label] {
      if (!zfix || !images[j])
        return std::make_pair(false, std::string("fixed point or lattice unavailable"));
      SubvarietyData sd = sub_period_matrix(*zfix, *images[j], opts.positivity);
      zsub[j] = sd.z_sub;
      rep.artifacts["z_sub_" + label] = to_json(sd.z_sub);
      RiemannMatrix target(zt[j], zfix->embedding_k(), opts.positivity);
      WitnessSearch w = ppav_isomorphism_witness(sd.z_sub.matrix(), target.matrix(), opts.search_bound);
      bool ok = w.status == WitnessSearch::Status::Found &&
                verify_isomorphism_witness(sd.z_sub.matrix(), target.matrix(), *w.witness);
      if (w.witness)
        rep.artifacts["witness_" + label] = to_json(*w.witness);
      std::string how = sd.z_sub.matrix() == target.matrix()
                            ? "identical"
                            : (ok ? "witness verified" : "no verified witness") + std::string(", solution dimension ") +
                                  std::to_string(w.solution_dimension);
      return std::make_pair(ok, "Z_sub (divisor " + sd.divisor.get_str() + ") vs " + scale.get_str() + " Z" +
                                    std::to_string(j + 1) + ": " + how);
    });
  }

  step("witness-Z1-Z2", [&] {
    RiemannMatrix a(zt[0], 1, opts.positivity), b(zt[1], 1, opts.positivity);
    WitnessSearch w = ppav_isomorphism_witness(a.matrix(), b.matrix(), opts.search_bound);
    bool ok = w.status == WitnessSearch::Status::Found && verify_isomorphism_witness(a.matrix(), b.matrix(), *w.witness);
    if (w.witness)
      rep.artifacts["witness_Z1_Z2"] = to_json(*w.witness);
    return std::make_pair(ok, std::string(ok ? "witness verified" : "no verified witness") + " after " +
                                  std::to_string(w.candidates_checked) + " candidates");
  });

  const auto want_particular = detail::rational_list(ex.at("family").at("particular"), "family.particular");
  const auto want_direction = detail::rational_list(ex.at("family").at("direction"), "family.direction");
  std::vector<Integer> want_residual;
  for (const auto& x : ex.at("residual"))
    want_residual.push_back(detail::integer_from_json(x, "residual"));

  for (std::size_t j = 0; j < 2; ++j) {
    const std::string label = "S" + std::to_string(j + 1);
    step("simplicity-" + label, [&, j, label] {
      Verdict v = decide(build_system(zt[j]), opts.search_bound);
      rep.artifacts["verdict_" + label] = to_json(v);
      if (v.kind != Verdict::Kind::Simple)
        return std::make_pair(false, std::string("verdict ") + to_string(v.kind));
      if (j == 1)
        return std::make_pair(true, std::string("Simple, family dimension ") + std::to_string(v.solution_dimension));
      auto line = detail::match_line(v, want_particular, want_direction);
      if (!line)
        return std::make_pair(false, std::string("Simple, but the affine family differs from the expected one"));
      auto q = primitive_integer_form(substitute_affine(v.residual->univariate(), line->first, line->second));
      return std::make_pair(q == want_residual, "Simple; family matches; residual " + render_quadratic(q) +
                                                    " = 0 (expected " + render_quadratic(want_residual) + " = 0)");
    });
  }

  step("determinant-Z-tilde", [&] {
    CycNum d = det(zt[0]);
    CycNum want = cycnum_from_json(ex.at("det_z_tilde"), fx.field, "det_z_tilde");
    return std::make_pair(d == want, "det = " + to_string(d));
  });

  return rep;
}

} // namespace jacdec
