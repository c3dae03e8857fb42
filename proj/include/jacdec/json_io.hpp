#pragma once

// JSON encodings.
//
//   CycNum       ["p/q", ...]               phi(n) power-basis coordinates
//   field        {"conductor": n}
//   IntMatrix    {"rows", "cols", "entries": [[int, ...], ...]}
//   CycMatrix    {"field", "rows", "cols", "entries": [[CycNum, ...], ...]}
//   Riemann      CycMatrix plus {"embedding_k": k}
//
// Integer entries may be JSON numbers or decimal strings (for values that do
// not fit in 64 bits). Malformed documents raise InputError.

#include "jacdec/cyclofield.hpp"
#include "jacdec/decompose.hpp"
#include "jacdec/grouprep.hpp"
#include "jacdec/matrix.hpp"
#include "jacdec/simplicity.hpp"
#include "jacdec/symplectic.hpp"

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace detail {

inline const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::size_t dimension(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InputError(where + ": \"" + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline Integer integer_from_json(const Json& v, const std::string& where) {
  if (v.is_number_integer())
    return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    Integer z;
    if (z.set_str(v.get<std::string>(), 10) != 0)
      throw InputError(where + ": '" + v.get<std::string>() + "' is not an integer");
    return z;
  }
  throw InputError(where + ": integer expected, got " + v.dump());
}

inline Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p())
    return Json(z.get_si());
  return Json(z.get_str());
}

inline Rational rational_from_json(const Json& v, const std::string& where) {
  if (v.is_number_integer())
    return Rational(integer_from_json(v, where));
  if (!v.is_string())
    throw InputError(where + ": rational string expected, got " + v.dump());
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception&) {
    throw InputError(where + ": '" + v.get<std::string>() + "' is not a rational");
  }
}

template <class T, class F>
Matrix<T> matrix_from_json(const Json& j, const T& zero, const std::string& where, F entry) {
  const std::size_t r = dimension(j, "rows", where), c = dimension(j, "cols", where);
  const Json& rows = member(j, "entries", where);
  if (!rows.is_array() || rows.size() != r)
    throw InputError(where + ": \"entries\" must hold " + std::to_string(r) + " rows");
  Matrix<T> m(r, c, zero);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c)
      throw InputError(where + ": row " + std::to_string(i) + " must hold " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k)
      m(i, k) = entry(rows[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

} // namespace detail

// ---------------------------------------------------------------------------

inline Json to_json(const CyclotomicField& f) { return Json{{"conductor", f.conductor()}}; }

inline FieldPtr field_from_json(const Json& j, const std::string& where = "field") {
  const std::size_t n = detail::dimension(j, "conductor", where);
  if (n < 1)
    throw InputError(where + ": conductor must be positive");
  return CyclotomicField::make(static_cast<unsigned>(n));
}

inline Json to_json(const CycNum& a) {
  Json out = Json::array();
  for (const auto& q : a.coeffs())
    out.push_back(to_string(q));
  return out;
}

/// Also accepts a bare rational (string or integer) for a rational element.
inline CycNum cycnum_from_json(const Json& j, const FieldPtr& field, const std::string& where = "value") {
  if (!j.is_array())
    return CycNum(field, detail::rational_from_json(j, where));
  if (j.size() != field->degree())
    throw InputError(where + ": expected " + std::to_string(field->degree()) + " coordinates, got " +
                     std::to_string(j.size()));
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i)
    c.push_back(detail::rational_from_json(j[i], where));
  return CycNum(field, std::move(c));
}

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(detail::integer_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline IntMatrix int_matrix_from_json(const Json& j, const std::string& where = "matrix") {
  return detail::matrix_from_json<Integer>(j, Integer(0), where, detail::integer_from_json);
}

inline Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(to_string(m(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline Json to_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"field", to_json(*m.zero().field())},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(rows)}};
}

/// The field comes from the document's "field" member, else from `fallback`.
inline CycMatrix cyc_matrix_from_json(const Json& j, const FieldPtr& fallback = nullptr,
                                      const std::string& where = "matrix") {
  FieldPtr field = fallback;
  if (j.is_object() && j.contains("field"))
    field = field_from_json(j.at("field"), where + ".field");
  if (!field)
    throw InputError(where + ": no field given (add {\"field\": {\"conductor\": n}} or --conductor)");
  if (fallback && *fallback != *field)
    throw InputError(where + ": conductor " + std::to_string(field->conductor()) + " conflicts with " +
                     std::to_string(fallback->conductor()));
  return detail::matrix_from_json<CycNum>(j, CycNum(field, 0), where, [&field](const Json& v, const std::string& w) {
    return cycnum_from_json(v, field, w);
  });
}

inline Json to_json(const RiemannMatrix& z) {
  Json j = to_json(z.matrix());
  j["embedding_k"] = z.embedding_k();
  return j;
}

inline RiemannMatrix riemann_from_json(const Json& j, const FieldPtr& fallback = nullptr,
                                       const PositivityOptions& opts = {}, const std::string& where = "riemann") {
  CycMatrix z = cyc_matrix_from_json(j, fallback, where);
  unsigned k = 1;
  if (j.contains("embedding_k"))
    k = static_cast<unsigned>(detail::dimension(j, "embedding_k", where));
  try {
    return RiemannMatrix(std::move(z), k, opts);
  } catch (const NotRiemannMatrix& e) {
    throw InputError(where + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct GroupSpec {
  NamedMatrices generators;        // as listed in "generators"
  NamedMatrices environment;       // generators followed by "derived" elements
  std::vector<std::string> relations;
  std::vector<std::pair<std::string, std::string>> derived;
  std::optional<Signature> signature;
  std::vector<std::string> skep;
  std::vector<std::pair<std::string, std::vector<std::string>>> subgroups;
  std::vector<unsigned> rou_orders;
};

inline GroupSpec group_spec_from_json(const Json& j, const std::string& where = "group") {
  GroupSpec s;
  const Json& gens = detail::member(j, "generators", where);
  if (!gens.is_object() || gens.empty())
    throw InputError(where + ": \"generators\" must be a nonempty object");
  for (const auto& [name, m] : gens.items()) {
    s.generators.emplace_back(name, int_matrix_from_json(m, where + ".generators." + name));
    if (!s.generators.back().second.is_square() ||
        s.generators.back().second.rows() != s.generators.front().second.rows())
      throw InputError(where + ": generator '" + name + "' is not square of the common size");
  }
  s.environment = s.generators;
  try {
    if (j.contains("derived"))
      for (const auto& [name, word] : j.at("derived").items()) {
        s.derived.emplace_back(name, word.get<std::string>());
        s.environment.emplace_back(name, evaluate_word(word.get<std::string>(), s.environment));
      }
    if (j.contains("relations"))
      s.relations = j.at("relations").get<std::vector<std::string>>();
    if (j.contains("skep"))
      s.skep = j.at("skep").get<std::vector<std::string>>();
    if (j.contains("signature")) {
      Signature sig;
      sig.orbit_genus = j.at("signature").value("orbit_genus", 0L);
      sig.periods = j.at("signature").at("periods").get<std::vector<long>>();
      s.signature = sig;
    }
    if (j.contains("subgroups"))
      for (const auto& [name, words] : j.at("subgroups").items())
        s.subgroups.emplace_back(name, words.get<std::vector<std::string>>());
    if (j.contains("roots_of_unity_orders"))
      s.rou_orders = j.at("roots_of_unity_orders").get<std::vector<unsigned>>();
  } catch (const Json::exception& e) {
    throw InputError(where + ": " + e.what());
  } catch (const WordError& e) {
    throw InputError(where + ": " + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------

inline Json to_json(const PolarizationType& t) {
  Json d = Json::array();
  for (const auto& x : t.divisors)
    d.push_back(detail::integer_to_json(x));
  return Json{{"type", std::move(d)}, {"content", detail::integer_to_json(t.content)}};
}

inline Json to_json(const SumMapCertificate& c) {
  return Json{{"det", detail::integer_to_json(c.det)},
              {"kernel_order", detail::integer_to_json(c.kernel_order)},
              {"verdict", to_string(c.verdict)}};
}

inline Json to_json(const IsomorphismWitness& w) { return Json{{"T", to_json(w.t)}, {"M", to_json(w.m)}}; }

inline Json to_json(const Verdict& v) {
  Json j{{"verdict", to_string(v.kind)},
         {"linear_system_consistent", v.linear_system_consistent},
         {"solution_dimension", v.solution_dimension}};
  auto tuple = [](const std::vector<Rational>& x) {
    Json a = Json::array();
    for (const auto& q : x)
      a.push_back(to_string(q));
    return a;
  };
  j["unknowns"] = Json(std::vector<std::string>(criterion_unknowns().begin(), criterion_unknowns().end()));
  if (v.witness)
    j["witness"] = tuple(std::vector<Rational>(v.witness->begin(), v.witness->end()));
  if (v.linear_system_consistent) {
    Json fam{{"particular", tuple(v.particular)}, {"directions", Json::array()}};
    for (const auto& d : v.directions)
      fam["directions"].push_back(tuple(d));
    j["family"] = std::move(fam);
  }
  if (v.residual) {
    const ResidualForm& r = *v.residual;
    Json res{{"constant", to_string(r.constant)}, {"linear", Json::array()}, {"quadratic", to_json(r.quadratic)}};
    for (const auto& q : r.linear)
      res["linear"].push_back(to_string(q));
    Json params = Json::array();
    for (auto c : r.free_columns)
      params.push_back(criterion_unknowns()[c]);
    res["parameters"] = std::move(params);
    if (r.linear.size() == 1) {
      std::vector<Integer> ic = primitive_integer_form(r.univariate());
      Json coeffs = Json::array();
      for (const auto& x : ic)
        coeffs.push_back(detail::integer_to_json(x));
      res["coefficients"] = std::move(coeffs); // [c, b, a] of c + b mu + a mu^2, primitive
      res["equation"] = render_quadratic(ic) + " = 0";
    }
    j["residual"] = std::move(res);
  }
  return j;
}

} // namespace jacdec
