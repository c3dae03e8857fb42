// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include "property_checks.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace jacdec;
using namespace jacdec::test;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds; // 0: no runtime bound
  std::function<void(Outcome&)> body;
};

std::vector<IntMatrix> subgroup_elements(const std::vector<std::string>& words) {
  std::vector<IntMatrix> gens;
  for (const auto& w : words)
    gens.push_back(evaluate_word(w, curve().group.environment));
  return generate_group(gens).elements;
}

void group_regression(Outcome& o) {
  MatrixGroup g = generate_group(curve().group.generators);
  o.require(g.order() == 40, "order 40");
  bool symplectic = true;
  for (const auto& e : g.elements)
    symplectic = symplectic && is_symplectic(e);
  o.require(symplectic, "all elements symplectic");
  const auto& env = curve().group.environment;
  o.require(element_order(evaluate_word("a", env), 40) == 10, "a has order 10");
  o.require(element_order(evaluate_word("c", env), 40) == 2, "c has order 2");
  IntMatrix b = evaluate_word("(ac)^2", env);
  o.require(element_order(b, 40) == 2, "b is an involution");
  bool central = true;
  for (const auto& e : g.elements)
    central = central && e * b == b * e;
  o.require(central, "b is central");
  auto rel = verify_relations(env, curve().group.relations);
  o.require(rel.size() == 6 && all_hold(rel), "six relations hold");
  o.note << "|G| = " << g.order() << ", relations " << rel.size();
}

void riemann_hurwitz(Outcome& o) {
  const Signature& sig = *curve().group.signature;
  Rational genus = riemann_hurwitz_genus(40, sig);
  o.require(genus == 4, "genus 4");
  o.require(sig.orbit_genus == 0 && sig.periods == std::vector<long>{2, 4, 10}, "signature (0; 2, 4, 10)");
  std::vector<IntMatrix> images;
  for (const auto& w : curve().group.skep)
    images.push_back(evaluate_word(w, curve().group.environment));
  SkepReport r = verify_skep(images, sig, curve_group());
  o.require(r.product_is_identity, "product of the tuple is 1");
  o.require(r.orders_match == std::vector<bool>{true, true, true}, "orders 2, 4, 10");
  o.require(r.generates_group, "tuple generates G");
  o.note << "genus " << genus.get_str() << ", tuple (c, c a^-1, a)";
}

void fixed_point(Outcome& o) {
  MatrixGroup g = generate_group(curve().group.generators);
  FixedPointResult r = fixed_riemann_matrix(g, curve().field, curve().group.rou_orders);
  const CycMatrix& z = r.z.matrix();
  std::size_t equal = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      equal += z(i, j).coeffs() == curve().z(i, j).coeffs() ? 1 : 0;
  o.require(equal == 16, "all sixteen entries equal");
  std::size_t fixed = 0;
  for (const auto& e : g.elements)
    fixed += siegel_act(e, z) == z ? 1 : 0;
  o.require(fixed == 40, "fixed by all 40 elements");
  o.note << equal << "/16 entries equal, fixed by " << fixed << "/40, embedding k=" << r.z.embedding_k();
}

void decomposition(Outcome& o) {
  const auto& subs = curve().group.subgroups;
  o.require(subs.size() == 2 && subs[0].second == std::vector<std::string>{"c"} &&
                subs[1].second == std::vector<std::string>{"a c a^-1"},
            "subgroups <c> and its a-conjugate");
  Sublattice l1 = idempotent_image(subgroup_elements(subs[0].second), 8);
  Sublattice l2 = idempotent_image(subgroup_elements(subs[1].second), 8);
  o.require(hnf(l1.basis) == hnf(curve().b1), "HNF(image <c>) = HNF(B1)");
  o.require(hnf(l2.basis) == hnf(curve().b2), "HNF(image <aca^-1>) = HNF(B2)");
  const std::vector<Integer> two_two{2, 2};
  o.require(polarization_type(curve().b1).divisors == two_two, "type(B1) = (2,2)");
  o.require(polarization_type(curve().b2).divisors == two_two, "type(B2) = (2,2)");
  o.require(l1.type.divisors == two_two && l2.type.divisors == two_two, "types of the images");
  Integer d = abs(det(vstack(curve().b1, curve().b2)));
  o.require(d == 1, "|det(B1; B2)| = 1");
  Integer rho = det(curve().rho_phi);
  o.require(rho == 1, "det rho(phi) = 1");
  o.note << "types (2,2), |det(B1;B2)| = " << d.get_str() << ", det rho(phi) = " << rho.get_str();
}

void subvariety_witnesses(Outcome& o) {
  const RiemannMatrix z(curve().z, 1);
  const IntMatrix* b[2] = {&curve().b1, &curve().b2};
  for (int j = 0; j < 2; ++j) {
    SubvarietyData sd = sub_period_matrix(z, make_sublattice(*b[j]));
    CycMatrix target = z_tilde(j + 1);
    WitnessSearch w = ppav_isomorphism_witness(sd.z_sub.matrix(), target, 20);
    bool ok = w.status == WitnessSearch::Status::Found &&
              verify_isomorphism_witness(sd.z_sub.matrix(), target, *w.witness) && is_symplectic(w.witness->t);
    o.require(ok, "witness Z_sub(S" + std::to_string(j + 1) + ") ~ Z" + std::to_string(j + 1) + "/2");
  }
  WitnessSearch w = ppav_isomorphism_witness(z_tilde(1), z_tilde(2), 20);
  bool ok = w.status == WitnessSearch::Status::Found && verify_isomorphism_witness(z_tilde(1), z_tilde(2), *w.witness);
  o.require(ok, "witness Z1/2 ~ Z2/2");
  o.note << "three witnesses verified by exact substitution";
}

void simplicity(Outcome& o) {
  Verdict v = decide(z_tilde(1));
  o.require(v.kind == Verdict::Kind::Simple, "(1/2) Z1 is Simple");
  auto mu_point = [](const Rational& mu) -> std::vector<Rational> {
    return {mu, (mu - 1) / 2, 0, 0, -(1 + mu) / 2, mu};
  };
  auto line = detail::match_line(v, mu_point(0), [&] {
    std::vector<Rational> d = mu_point(1), p = mu_point(0);
    for (std::size_t i = 0; i < 6; ++i)
      d[i] -= p[i];
    return d;
  }());
  o.require(line.has_value(), "family (mu, (mu-1)/2, 0, 0, -(1+mu)/2, mu)");
  if (line && v.residual) {
    auto q = primitive_integer_form(substitute_affine(v.residual->univariate(), line->first, line->second));
    o.require(q == std::vector<Integer>{-1, 0, 5}, "residual proportional to 5mu^2 - 1");
    o.note << "residual " << render_quadratic(q) << " = 0; ";
  }
  Verdict v2 = decide(z_tilde(2));
  o.require(v2.kind == Verdict::Kind::Simple, "(1/2) Z2 is Simple");
  o.note << "verdicts " << to_string(v.kind) << ", " << to_string(v2.kind);
}

void properties(Outcome& o) {
  struct Run {
    const char* name;
    PropertyOutcome out;
    std::size_t expected;
  };
  Run runs[] = {
      {"field axioms", field_properties(1000, 7001), 1000},
      {"HNF/SNF transforms", normal_form_properties(1000, 7002), 1000},
      {"Siegel positivity", siegel_positivity_properties(RiemannMatrix(curve().z, 1), 100, 7003), 100},
      {"witness soundness", witness_soundness_properties(200, 7004), 200},
  };
  for (const auto& r : runs) {
    o.require(r.out.cases == r.expected && r.out.ok(),
              std::string(r.name) + (r.out.failures.empty() ? "" : ": " + r.out.failures.front()));
    o.note << r.name << " " << r.out.cases << "; ";
  }
}

void negative_controls(Outcome& o) {
  struct Control {
    const char* step;
    std::function<void(CurveFixtures&)> perturb;
  };
  const Control controls[] = {
      {"lattice-B1", [](CurveFixtures& f) { f.b1(0, 7) += 1; }},
      {"fixed-point", [](CurveFixtures& f) { f.z(0, 0) += CycNum(f.field, 1); }},
      {"simplicity-S1", [](CurveFixtures& f) { f.z1(0, 1) += CycNum(f.field, 1), f.z1(1, 0) += CycNum(f.field, 1); }},
      {"rho-phi-determinant",
       [](CurveFixtures& f) {
         for (std::size_t j = 0; j < f.rho_phi.cols(); ++j)
           f.rho_phi(0, j) *= 2;
       }},
      {"generators-symplectic",
       [](CurveFixtures& f) {
         // an involution that reverses the sign of one basis vector only
         IntMatrix s = IntMatrix::identity(8, Integer(0));
         s(0, 0) = -1;
         f.group.generators[1].second = s;
       }},
  };
  VerifyOptions opts;
  for (const auto& c : controls) {
    CurveFixtures f = curve();
    c.perturb(f);
    RunReport r = run_verification(f, opts);
    const RunStep* s = r.find(c.step);
    o.require(!r.passed() && s && !s->passed, std::string("perturbation caught by ") + c.step);
  }
  o.note << "5 perturbed fixture sets rejected; ";

  std::mt19937_64 rng(8008);
  std::size_t diagonal = 0;
  for (unsigned n : {3u, 4u, 5u, 7u, 8u, 12u})
    for (int t = 0; t < 10; ++t) {
      FieldPtr f = CyclotomicField::make(n);
      CycMatrix z(2, 2, {random_cycnum(rng, f, 5, 4), CycNum(f, 0), CycNum(f, 0), random_cycnum(rng, f, 5, 4)},
                  CycNum(f, 0));
      Verdict v = decide(z);
      bool ok = v.kind == Verdict::Kind::HasEllipticCurve && v.witness && verify_witness(z, *v.witness).ok();
      o.require(ok, "diagonal matrix over Q(zeta_" + std::to_string(n) + ") has an elliptic curve");
      ++diagonal;
    }
  o.note << diagonal << " diagonal matrices HasEllipticCurve";
}

} // namespace

int main() {
  const Criterion criteria[] = {
      {1, "group regression", 1.0, group_regression},
      {2, "Riemann-Hurwitz and surface kernel", 0.0, riemann_hurwitz},
      {3, "fixed point", 30.0, fixed_point},
      {4, "decomposition", 5.0, decomposition},
      {5, "subvariety Riemann matrices", 0.0, subvariety_witnesses},
      {6, "simplicity", 1.0, simplicity},
      {7, "property suites", 60.0, properties},
      {8, "negative controls", 0.0, negative_controls},
  };
  // fixture loading is shared setup, not part of any criterion's budget
  try {
    (void)curve();
    (void)curve_group();
  } catch (const std::exception& e) {
    std::cout << "cannot load fixtures: " << e.what() << "\n";
    return 1;
  }
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.ok = false;
      o.note << " [over the " << c.limit_seconds << " s limit]";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << c.id << " (" << c.title << "): " << (o.ok ? "PASS" : "FAIL") << " [" << timing
              << "] " << o.note.str() << "\n";
    failed += o.ok ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
