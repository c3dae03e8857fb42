// jacdec: command-line front end.
//
// Exit codes: 0 success, 1 input error, 2 degenerate mathematical situation,
// 3 verification failure.

#include "jacdec/decompose.hpp"
#include "jacdec/grouprep.hpp"
#include "jacdec/json_io.hpp"
#include "jacdec/reproduce.hpp"
#include "jacdec/simplicity.hpp"
#include "jacdec/symplectic.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef JACDEC_DEFAULT_FIXTURES
#define JACDEC_DEFAULT_FIXTURES "fixtures"
#endif

namespace {

using namespace jacdec;

enum Exit { kOk = 0, kInput = 1, kDegenerate = 2, kFailed = 3 };

struct Global {
  unsigned conductor = 0;
  long precision = 128;
  long search_bound = 20;
  std::string format = "json";

  PositivityOptions positivity() const {
    PositivityOptions p;
    p.precision_bits = precision;
    return p;
  }
  FieldPtr field() const { return conductor ? CyclotomicField::make(conductor) : nullptr; }
};

// Loosely human-readable rendering of a JSON document: nested objects become
// indented "key:" blocks and arrays of arrays become aligned rows.
void render(std::ostream& os, const Json& j, int indent);

std::string scalar_text(const Json& j) {
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_array()) { // a CycNum
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i)
      s += (i ? " " : "") + scalar_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_array())) {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      } else {
        os << pad << k << ": " << scalar_text(v) << "\n";
      }
    }
  } else if (j.is_array() && !j.empty() && j.front().is_array()) {
    for (const auto& row : j) {
      os << pad;
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "  " : "") << scalar_text(row[i]);
      os << "\n";
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

void emit(const Global& g, const Json& j) {
  if (g.format == "table")
    render(std::cout, j, 0);
  else
    std::cout << j.dump(2) << "\n";
}

std::string fixture_dir(const std::string& flag) {
  if (!flag.empty())
    return flag;
  if (const char* env = std::getenv("JACDEC_FIXTURES"); env && *env)
    return env;
  return JACDEC_DEFAULT_FIXTURES;
}

MatrixGroup build_group(const GroupSpec& spec) {
  for (const auto& [name, m] : spec.generators)
    if (m.rows() % 2 != 0 || !is_symplectic(m))
      throw InputError("generator '" + name + "' is not symplectic");
  return generate_group(spec.generators);
}

std::vector<IntMatrix> subgroup_elements(const GroupSpec& spec, const std::string& words, std::size_t bound) {
  std::vector<IntMatrix> gens;
  std::stringstream ss(words);
  std::string w;
  while (std::getline(ss, w, ','))
    gens.push_back(evaluate_word(w, spec.environment));
  if (gens.empty())
    throw InputError("empty subgroup specification");
  return generate_group(gens, bound).elements;
}

// ---------------------------------------------------------------------------

int cmd_fixed_point(const Global& g, const std::string& group_file, std::vector<unsigned> rou) {
  GroupSpec spec = group_spec_from_json(read_json_file(group_file), group_file);
  if (!g.conductor)
    throw InputError("fixed-point needs --conductor");
  if (rou.empty())
    rou = spec.rou_orders;
  if (rou.empty())
    throw InputError("no root-of-unity orders (use --rou or \"roots_of_unity_orders\")");
  MatrixGroup group = build_group(spec);
  try {
    FixedPointResult r = fixed_riemann_matrix(group, g.field(), rou, g.positivity());
    Json out = to_json(r.z);
    out["group_order"] = group.order();
    out["regular_element_order"] = r.regular_order;
    emit(g, out);
    return kOk;
  } catch (const FixedPointError& e) {
    Json out{{"error", e.what()}, {"survivors", Json::array()}};
    for (const auto& z : e.survivors())
      out["survivors"].push_back(to_json(z));
    emit(g, out);
    return kDegenerate;
  }
}

int cmd_decompose(const Global& g, const std::string& group_file, const std::vector<std::string>& subgroups,
                  const std::string& riemann_file) {
  GroupSpec spec = group_spec_from_json(read_json_file(group_file), group_file);
  MatrixGroup group = build_group(spec);
  std::optional<RiemannMatrix> z;
  if (!riemann_file.empty())
    z = riemann_from_json(read_json_file(riemann_file), g.field(), g.positivity(), riemann_file);
  else if (g.conductor && !spec.rou_orders.empty())
    z = fixed_riemann_matrix(group, g.field(), spec.rou_orders, g.positivity()).z;

  Json out{{"subvarieties", Json::array()}};
  std::vector<Sublattice> lattices;
  int code = kOk;
  for (const auto& words : subgroups) {
    Sublattice l = idempotent_image(subgroup_elements(spec, words, group.order()), group.degree());
    Json s{{"subgroup", words}, {"B", to_json(l.basis)}};
    s["type"] = to_json(l.type)["type"];
    s["d"] = to_json(l.type)["content"];
    if (z) {
      try {
        SubvarietyData sd = sub_period_matrix(*z, l, g.positivity());
        s["Z_sub"] = to_json(sd.z_sub);
        s["symplectic_basis"] = to_json(sd.symplectic_basis);
      } catch (const DegenerateForm& e) {
        s["Z_sub_error"] = e.what();
        code = kDegenerate;
      }
    }
    out["subvarieties"].push_back(std::move(s));
    lattices.push_back(std::move(l));
  }
  if (lattices.size() == 2) {
    try {
      SumMapCertificate c = sum_map_certificate(lattices[0], lattices[1]);
      out["certificate"] = to_json(c);
      if (c.verdict == SumMapCertificate::Verdict::Degenerate)
        code = kDegenerate;
    } catch (const DimensionMismatch& e) {
      out["certificate"] = Json{{"error", e.what()}};
      code = kDegenerate;
    }
  }
  emit(g, out);
  return code;
}

int cmd_simple(const Global& g, const std::string& riemann_file, const std::string& scale) {
  Json doc = read_json_file(riemann_file);
  CycMatrix z = cyc_matrix_from_json(doc, g.field(), riemann_file);
  if (!scale.empty())
    z = parse_rational(scale) * z;
  Verdict v;
  try {
    v = decide(build_system(z), g.search_bound);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  emit(g, to_json(v));
  return kOk;
}

int cmd_siegel_act(const Global& g, const std::string& matrix_file, const std::string& riemann_file) {
  IntMatrix r = int_matrix_from_json(read_json_file(matrix_file), matrix_file);
  RiemannMatrix z = riemann_from_json(read_json_file(riemann_file), g.field(), g.positivity(), riemann_file);
  if (r.rows() != 2 * z.g() || r.cols() != 2 * z.g())
    throw InputError("matrix is " + r.shape() + ", Riemann matrix has g = " + std::to_string(z.g()));
  if (!is_symplectic(r))
    throw InputError("'" + matrix_file + "' is not symplectic");
  try {
    emit(g, to_json(siegel_act(SymplecticMatrix(r), z, g.positivity())));
  } catch (const SingularMatrix& e) {
    emit(g, Json{{"error", std::string("A + ZC is singular: ") + e.what()}});
    return kDegenerate;
  }
  return kOk;
}

int cmd_group_check(const Global& g, const std::string& group_file) {
  GroupSpec spec = group_spec_from_json(read_json_file(group_file), group_file);
  Json out;
  bool ok = true;
  Json sym = Json::object();
  for (const auto& [name, m] : spec.generators) {
    bool s = m.rows() % 2 == 0 && is_symplectic(m);
    sym[name] = s;
    ok = ok && s;
  }
  out["symplectic"] = sym;
  MatrixGroup group = generate_group(spec.generators);
  out["order"] = group.order();
  Json orders = Json::object();
  for (const auto& [name, m] : spec.environment)
    orders[name] = element_order(m, group.order());
  out["element_orders"] = orders;
  Json rel = Json::object();
  for (const auto& c : verify_relations(spec.environment, spec.relations)) {
    rel[c.word] = c.holds;
    ok = ok && c.holds;
  }
  out["relations"] = rel;
  if (spec.signature) {
    Rational genus = riemann_hurwitz_genus(static_cast<long>(group.order()), *spec.signature);
    out["genus"] = genus.get_str();
    ok = ok && genus.get_den() == 1;
    if (!periods_divide_order(static_cast<long>(group.order()), *spec.signature))
      out["warning"] = "some period does not divide the group order";
    if (!spec.skep.empty()) {
      std::vector<IntMatrix> images;
      for (const auto& w : spec.skep)
        images.push_back(evaluate_word(w, spec.environment));
      SkepReport r = verify_skep(images, *spec.signature, group);
      out["skep"] = Json{{"product_is_identity", r.product_is_identity},
                         {"orders_match", r.orders_match},
                         {"generates_group", r.generates_group}};
      ok = ok && r.ok();
    }
  }
  out["passed"] = ok;
  emit(g, out);
  return ok ? kOk : kFailed;
}

int cmd_verify(const Global& g, const std::string& dir_flag, std::optional<double> tolerance) {
  VerifyOptions opts;
  opts.positivity = g.positivity();
  if (tolerance)
    opts.positivity.threshold = *tolerance;
  opts.search_bound = g.search_bound;
  RunReport rep = run_verification(load_curve_fixtures(fixture_dir(dir_flag)), opts);
  if (g.format == "table")
    std::cout << render_table(rep);
  else
    std::cout << to_json(rep).dump(2) << "\n";
  return rep.passed() ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann matrices, idempotent decompositions and simplicity of abelian surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--conductor", g.conductor, "conductor n of Q(zeta_n)");
  app.add_option("--precision", g.precision, "embedding precision in bits")->check(CLI::Range(53L, 1L << 20));
  app.add_option("--search-bound", g.search_bound, "bound for bounded searches")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}));

  std::string group_file, riemann_file, matrix_file, fixtures, scale;
  std::vector<unsigned> rou;
  std::vector<std::string> subgroups;
  std::optional<double> tolerance;

  auto* fp = app.add_subcommand("fixed-point", "Riemann matrix fixed by a finite symplectic group");
  fp->add_option("group", group_file, "group JSON")->required();
  fp->add_option("--rou", rou, "orders of the candidate roots of unity")->delimiter(',');

  auto* dc = app.add_subcommand("decompose", "image lattices, types and sub-period matrices of p_H");
  dc->add_option("group", group_file, "group JSON")->required();
  dc->add_option("--subgroup", subgroups, "comma-separated generating words (repeatable)")->required();
  dc->add_option("--riemann", riemann_file, "Riemann matrix JSON (default: the fixed point)");

  auto* sp = app.add_subcommand("simple", "decide whether an abelian surface contains an elliptic curve");
  sp->add_option("riemann", riemann_file, "2x2 Riemann matrix JSON")->required();
  sp->add_option("--scale", scale, "rational factor applied to the matrix first, e.g. 1/2");

  auto* sa = app.add_subcommand("siegel-act", "R . Z = (A + Z C)^-1 (B + Z D)");
  sa->add_option("matrix", matrix_file, "symplectic matrix JSON")->required();
  sa->add_option("riemann", riemann_file, "Riemann matrix JSON")->required();

  auto* gc = app.add_subcommand("group-check", "closure, relations, genus and surface-kernel checks");
  gc->add_option("group", group_file, "group JSON")->required();

  auto* vf = app.add_subcommand("verify", "reproduce the genus-4 computation from the fixtures");
  vf->add_option("--fixtures", fixtures, "fixture directory (default: $JACDEC_FIXTURES or the bundled one)");
  vf->add_option("--tolerance", tolerance, "positivity threshold on leading minors")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*fp)
      return cmd_fixed_point(g, group_file, rou);
    if (*dc)
      return cmd_decompose(g, group_file, subgroups, riemann_file);
    if (*sp)
      return cmd_simple(g, riemann_file, scale);
    if (*sa)
      return cmd_siegel_act(g, matrix_file, riemann_file);
    if (*gc)
      return cmd_group_check(g, group_file);
    if (*vf)
      return cmd_verify(g, fixtures, tolerance);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NotSymplectic& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NotRiemannMatrix& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const WordError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NotASubgroup& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const GroupNotFinite& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const FixedPointError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const DegenerateForm& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
