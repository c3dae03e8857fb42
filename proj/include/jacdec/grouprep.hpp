#pragma once

// Finite matrix groups given by integral generators: closure, element orders,
// relation words, Riemann-Hurwitz bookkeeping and surface-kernel checks.

#include "jacdec/matrix.hpp"

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jacdec {

class GroupNotFinite : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class WordError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using NamedMatrices = std::vector<std::pair<std::string, IntMatrix>>;

struct MatrixGroup {
  NamedMatrices generators;
  std::vector<IntMatrix> elements; // BFS order, identity first

  std::size_t order() const { return elements.size(); }
  std::size_t degree() const { return elements.empty() ? 0 : elements.front().rows(); }

  std::optional<std::size_t> index_of(const IntMatrix& m) const {
    auto it = index_.find(m.entries());
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }
  bool contains(const IntMatrix& m) const { return index_of(m).has_value(); }

  // internal: entries -> position in `elements`
  std::map<std::vector<Integer>, std::size_t> index_;
};

/// Breadth-first closure under right multiplication by the generators, in
/// generator order. Throws GroupNotFinite once more than max_order elements
/// have been found.
inline MatrixGroup generate_group(const NamedMatrices& gens, std::size_t max_order = 100000) {
  if (gens.empty())
    throw std::invalid_argument("generate_group needs at least one generator");
  const std::size_t n = gens.front().second.rows();
  for (const auto& [name, m] : gens)
    if (m.rows() != n || m.cols() != n)
      throw DimensionMismatch("generator '" + name + "' is not " + std::to_string(n) + "x" +
                              std::to_string(n));
  MatrixGroup g;
  g.generators = gens;
  auto add = [&g, max_order](IntMatrix m) {
    auto [it, inserted] = g.index_.emplace(m.entries(), g.elements.size());
    if (!inserted)
      return;
    g.elements.push_back(std::move(m));
    if (g.elements.size() > max_order)
      throw GroupNotFinite("group closure not finite within bound " + std::to_string(max_order));
  };
  add(IntMatrix::identity(n, Integer(0)));
  for (std::size_t head = 0; head < g.elements.size(); ++head)
    for (const auto& [name, m] : gens)
      add(g.elements[head] * m);
  return g;
}

inline MatrixGroup generate_group(const std::vector<IntMatrix>& gens, std::size_t max_order = 100000) {
  NamedMatrices named;
  for (std::size_t i = 0; i < gens.size(); ++i)
    named.emplace_back("g" + std::to_string(i), gens[i]);
  return generate_group(named, max_order);
}

inline bool is_identity(const IntMatrix& m) {
  return m.is_square() && m == IntMatrix::identity(m.rows(), Integer(0));
}

/// Least k in [1, bound] with m^k = I.
inline std::size_t element_order(const IntMatrix& m, std::size_t bound) {
  if (bound < 1)
    throw std::invalid_argument("element_order bound must be at least 1");
  IntMatrix p = m;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (is_identity(p))
      return k;
    p = p * m;
  }
  throw GroupNotFinite("no order within bound " + std::to_string(bound));
}

inline IntMatrix power(const IntMatrix& m, long e) {
  IntMatrix base = e < 0 ? inverse(m) : m;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  IntMatrix r = IntMatrix::identity(m.rows(), Integer(0));
  while (k) {
    if (k & 1)
      r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Words over generator names.
//
//   word   := factor*
//   factor := atom ('^' ['-'] digits | '⁻¹')*
//   atom   := name | '1' | '(' word ')' | '[' word ',' word ']'
//   name   := letter (digit | '_')*
//
// so "cacab" is c*a*c*a*b and [x,y] expands to x y x^-1 y^-1.

struct Word {
  enum class Kind { Identity, Generator, Product, Commutator, Power };
  Kind kind = Kind::Identity;
  std::string name;
  long exponent = 1;
  std::vector<Word> children;
};

namespace detail {

class WordParser {
public:
  explicit WordParser(const std::string& s) : s_(s) {}

  Word parse() {
    Word w = parse_word();
    skip_space();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw WordError("word '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '*'))
      ++pos_;
  }
  bool starts_with(const std::string& t) const { return s_.compare(pos_, t.size(), t) == 0; }

  Word parse_word() {
    Word prod;
    prod.kind = Word::Kind::Product;
    for (;;) {
      skip_space();
      if (pos_ == s_.size() || s_[pos_] == ')' || s_[pos_] == ']' || s_[pos_] == ',')
        break;
      prod.children.push_back(parse_factor());
    }
    return prod;
  }

  Word parse_factor() {
    Word w = parse_atom();
    for (;;) {
      skip_space();
      long e = 0;
      if (starts_with("⁻¹")) { // ⁻¹
        pos_ += std::string("⁻¹").size();
        e = -1;
      } else if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
          neg = true;
          ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
        if (start == pos_)
          fail("exponent expected after '^'");
        e = std::stol(s_.substr(start, pos_ - start));
        if (neg)
          e = -e;
      } else {
        break;
      }
      Word p;
      p.kind = Word::Kind::Power;
      p.exponent = e;
      p.children.push_back(std::move(w));
      w = std::move(p);
    }
    return w;
  }

  Word parse_atom() {
    skip_space();
    if (pos_ == s_.size())
      fail("atom expected");
    char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return Word{};
    }
    if (c == '(') {
      ++pos_;
      Word inner = parse_word();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      Word x = parse_word();
      expect(',');
      Word y = parse_word();
      expect(']');
      Word w;
      w.kind = Word::Kind::Commutator;
      w.children.push_back(std::move(x));
      w.children.push_back(std::move(y));
      return w;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      Word w;
      w.kind = Word::Kind::Generator;
      w.name = s_.substr(start, pos_ - start);
      return w;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  void expect(char c) {
    skip_space();
    if (pos_ == s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Word parse_word(const std::string& text) { return detail::WordParser(text).parse(); }

/// Evaluates a word; the identity size comes from `dim`. Throws WordError on
/// an unknown generator name.
inline IntMatrix evaluate_word(const Word& w, const NamedMatrices& env, std::size_t dim) {
  switch (w.kind) {
  case Word::Kind::Identity:
    return IntMatrix::identity(dim, Integer(0));
  case Word::Kind::Generator:
    for (const auto& [name, m] : env)
      if (name == w.name)
        return m;
    throw WordError("unknown generator '" + w.name + "'");
  case Word::Kind::Power:
    return power(evaluate_word(w.children[0], env, dim), w.exponent);
  case Word::Kind::Commutator: {
    IntMatrix x = evaluate_word(w.children[0], env, dim);
    IntMatrix y = evaluate_word(w.children[1], env, dim);
    return x * y * inverse(x) * inverse(y);
  }
  case Word::Kind::Product: {
    IntMatrix r = IntMatrix::identity(dim, Integer(0));
    for (const auto& c : w.children)
      r = r * evaluate_word(c, env, dim);
    return r;
  }
  }
  throw std::logic_error("unreachable word kind");
}

inline IntMatrix evaluate_word(const std::string& text, const NamedMatrices& env) {
  if (env.empty())
    throw WordError("no generators to evaluate '" + text + "' against");
  return evaluate_word(parse_word(text), env, env.front().second.rows());
}

struct RelationCheck {
  std::string word;
  bool holds = false;
};

inline std::vector<RelationCheck> verify_relations(const NamedMatrices& env,
                                                   const std::vector<std::string>& relations) {
  std::vector<RelationCheck> out;
  for (const auto& r : relations)
    out.push_back({r, is_identity(evaluate_word(r, env))});
  return out;
}

inline bool all_hold(const std::vector<RelationCheck>& checks) {
  for (const auto& c : checks)
    if (!c.holds)
      return false;
  return true;
}

// ---------------------------------------------------------------------------

struct Signature {
  long orbit_genus = 0;
  std::vector<long> periods;
};

/// 1 + (|G|/2) (2h - 2 + sum (1 - 1/m_i)); integrality is the caller's check.
inline Rational riemann_hurwitz_genus(long group_order, const Signature& sig) {
  if (group_order < 1)
    throw std::invalid_argument("group order must be positive");
  Rational s = 2 * sig.orbit_genus - 2;
  for (long m : sig.periods) {
    if (m < 2)
      throw std::invalid_argument("periods must be at least 2");
    s += 1 - Rational(1, m);
  }
  Rational g = 1 + Rational(group_order, 2) * s;
  g.canonicalize();
  return g;
}

inline bool periods_divide_order(long group_order, const Signature& sig) {
  for (long m : sig.periods)
    if (group_order % m != 0)
      return false;
  return true;
}

struct SkepReport {
  bool product_is_identity = false;
  std::vector<bool> orders_match;
  bool generates_group = false;

  bool ok() const {
    if (!product_is_identity || !generates_group)
      return false;
    for (bool b : orders_match)
      if (!b)
        return false;
    return true;
  }
};

/// Surface-kernel checks for an ordered tuple of generator images: the
/// product is 1, the i-th image has order exactly the i-th period, and the
/// images generate the group.
inline SkepReport verify_skep(const std::vector<IntMatrix>& images, const Signature& sig,
                              const MatrixGroup& group) {
  if (images.size() != sig.periods.size())
    throw std::invalid_argument("one image per period is required");
  SkepReport rep;
  if (images.empty())
    return rep;
  IntMatrix prod = IntMatrix::identity(images.front().rows(), Integer(0));
  for (const auto& m : images)
    prod = prod * m;
  rep.product_is_identity = is_identity(prod);
  for (std::size_t i = 0; i < images.size(); ++i) {
    bool match = false;
    try {
      match = element_order(images[i], group.order()) == static_cast<std::size_t>(sig.periods[i]);
    } catch (const GroupNotFinite&) {
    }
    rep.orders_match.push_back(match);
  }
  bool inside = true;
  for (const auto& m : images)
    inside = inside && group.contains(m);
  if (inside) {
    MatrixGroup sub = generate_group(images, group.order());
    rep.generates_group = sub.order() == group.order();
  }
  return rep;
}

} // namespace jacdec
