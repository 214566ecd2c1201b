/// @file boolring.hpp
/// @brief Polynomials of the Boolean ring F2[x1..xn]/<xi^2 - xi>.
///
/// A polynomial is the ZDD family of its square-free monomials; addition is
/// symmetric difference and multiplication is idempotent.

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnclass/error.hpp"
#include "bnclass/zdd.hpp"

namespace bnclass {

/// Bijection between component names and indices 1..n.
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(const std::vector<std::string>& names) {
    for (const auto& n : names) add(n);
  }

  /// Appends a name and returns its index. Throws on duplicates.
  Var add(const std::string& name) {
    if (index_.contains(name)) throw std::invalid_argument("duplicate variable name '" + name + "'");
    names_.push_back(name);
    const Var v = static_cast<Var>(names_.size());
    index_.emplace(name, v);
    return v;
  }

  std::optional<Var> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Var index(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw std::out_of_range("unknown variable '" + std::string(name) + "'");
  }

  const std::string& name(Var v) const {
    if (v == 0 || v > names_.size()) throw std::out_of_range("variable index out of range");
    return names_[v - 1];
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  VarSet universe() const { return full_universe(names_.size()); }

  friend bool operator==(const VarTable&, const VarTable&) = default;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Var, std::less<>> index_;
};

/// Square-free monomial: the set of variables it contains. The empty
/// monomial is 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(VarSet vars) : vars_(normalized(std::move(vars))) {}
  Monomial(std::initializer_list<Var> vars) : vars_(normalized(VarSet(vars))) {}

  const VarSet& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  bool is_one() const { return vars_.empty(); }
  bool contains(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }
  bool divides(const Monomial& other) const { return is_subset(vars_, other.vars_); }

  Monomial operator*(const Monomial& o) const { return Monomial(set_union(vars_, o.vars_)); }
  /// Quotient; only meaningful when @p o divides this monomial.
  Monomial operator/(const Monomial& o) const { return Monomial(set_difference(vars_, o.vars_)); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  VarSet vars_;
};

/// Element of the Boolean ring, bound to a ZDD store.
class BoolPoly {
 public:
  BoolPoly() = default;
  explicit BoolPoly(zdd::Family monomials) : terms_(monomials) {}

  static BoolPoly zero(zdd::Store& s) { return BoolPoly(s.empty()); }
  static BoolPoly one(zdd::Store& s) { return BoolPoly(s.unit()); }
  static BoolPoly variable(zdd::Store& s, Var v) { return BoolPoly(s.single({v})); }
  static BoolPoly monomial(zdd::Store& s, const Monomial& m) { return BoolPoly(s.single(m.vars())); }
  static BoolPoly from_monomials(zdd::Store& s, const std::vector<Monomial>& ms) {
    zdd::NodeRef f = zdd::kEmpty;
    for (const auto& m : ms) f = s.symmetric_difference(f, s.single(m.vars()).root());
    return BoolPoly(s.family(f));
  }

  const zdd::Family& family() const { return terms_; }
  zdd::Store& store() const { return terms_.store(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.is_unit(); }
  bool is_constant() const { return is_zero() || is_one(); }

  BoolPoly operator+(const BoolPoly& o) const {
    check(o);
    return BoolPoly(terms_ ^ o.terms_);
  }
  BoolPoly operator*(const BoolPoly& o) const {
    check(o);
    zdd::Store& s = store();
    return BoolPoly(s.family(s.gf2_product(terms_.root(), o.terms_.root())));
  }
  BoolPoly& operator+=(const BoolPoly& o) { return *this = *this + o; }
  BoolPoly& operator*=(const BoolPoly& o) { return *this = *this * o; }

  friend bool operator==(const BoolPoly& a, const BoolPoly& b) { return a.terms_ == b.terms_; }

  /// p(point): parity of the monomials whose variables are all set.
  /// point[i] is the value of variable i + 1.
  bool eval(const std::vector<bool>& point) const;

  std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    for (auto& s : terms_.enumerate()) out.emplace_back(std::move(s));
    return out;
  }
  std::size_t term_count() const { return static_cast<std::size_t>(terms_.count()); }
  bool contains(const Monomial& m) const { return terms_.contains(m.vars()); }

  /// Variables occurring in the polynomial.
  VarSet vars() const { return terms_.support(); }
  /// Largest monomial size; 0 for the zero polynomial.
  std::size_t degree() const { return terms_.max_cardinality(); }

 private:
  void check(const BoolPoly& o) const {
    if (!terms_.bound() || !o.terms_.bound() || &terms_.store() != &o.terms_.store())
      throw std::invalid_argument("polynomials belong to different stores");
  }

  zdd::Family terms_;
};

inline bool BoolPoly::eval(const std::vector<bool>& point) const {
  const zdd::Store& s = store();
  std::unordered_map<std::uint32_t, bool> memo;
  std::function<bool(zdd::NodeRef)> rec = [&](zdd::NodeRef f) -> bool {
    if (f == zdd::kEmpty) return false;
    if (f == zdd::kUnit) return true;
    if (auto it = memo.find(f.id); it != memo.end()) return it->second;
    const Var v = s.var(f);
    if (v > point.size()) throw std::invalid_argument("evaluation point is shorter than the polynomial's variables");
    const bool r = point[v - 1] ? (rec(s.lo(f)) != rec(s.hi(f))) : rec(s.lo(f));
    memo.emplace(f.id, r);
    return r;
  };
  return rec(terms_.root());
}

/// Evaluation with a length check against the ring size.
inline bool poly_eval(const BoolPoly& p, const std::vector<bool>& point, std::size_t n) {
  if (point.size() != n) throw std::invalid_argument("evaluation point has wrong length");
  return p.eval(point);
}

/// Default canonical monomial order for printing: larger degree first, then
/// lexicographically smaller index sequence first.
inline bool canonical_before(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.vars() < b.vars();
}

inline std::string monomial_text(const Monomial& m, const VarTable& vars) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.vars().size(); ++i) {
    if (i) out += "*";
    out += vars.name(m.vars()[i]);
  }
  return out;
}

/// Renders monomials in the given sequence as "a*b + c + 1"; "0" if empty.
inline std::string terms_text(const std::vector<Monomial>& terms, const VarTable& vars) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    out += monomial_text(terms[i], vars);
  }
  return out;
}

/// Canonical text (default order). Re-parses to the same polynomial.
inline std::string to_text(const BoolPoly& p, const VarTable& vars) {
  auto ms = p.monomials();
  std::sort(ms.begin(), ms.end(), canonical_before);
  return terms_text(ms, vars);
}

// ---------------------------------------------------------------------------
// Expression parser.
//
//   expr    := xor { '|' xor }
//   xor     := product { '+' product }
//   product := unary { ('*' | '&' | '·') unary }
//   unary   := '!' unary | atom
//   atom    := IDENT | '0' | '1' | '(' expr ')'
//
// '+' is F2 addition (XOR); 'a|b' means a + b + a*b; '!a' means 1 + a.

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const VarTable& vars, zdd::Store& store, std::size_t line, std::size_t column_offset)
      : text_(text), vars_(vars), store_(store), line_(line), col0_(column_offset) {}

  BoolPoly parse() {
    BoolPoly p = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' || text_[pos_] == '\n'))
      ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  BoolPoly parse_or() {
    BoolPoly acc = parse_xor();
    while (accept("|")) {
      BoolPoly rhs = parse_xor();
      acc = acc + rhs + acc * rhs;
    }
    return acc;
  }

  BoolPoly parse_xor() {
    BoolPoly acc = parse_product();
    while (accept("+")) acc += parse_product();
    return acc;
  }

  BoolPoly parse_product() {
    BoolPoly acc = parse_unary();
    while (accept("*") || accept("&") || accept("\xC2\xB7")) acc *= parse_unary();
    return acc;
  }

  BoolPoly parse_unary() {
    if (accept("!")) return BoolPoly::one(store_) + parse_unary();
    return parse_atom();
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  BoolPoly parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      BoolPoly inner = parse_or();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (c == '0' || c == '1') {
      if (pos_ + 1 < text_.size() && ident_char(text_[pos_ + 1])) fail("malformed constant");
      ++pos_;
      return c == '1' ? BoolPoly::one(store_) : BoolPoly::zero(store_);
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      auto v = vars_.find(name);
      if (!v) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      return BoolPoly::variable(store_, *v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const VarTable& vars_;
  zdd::Store& store_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression into a polynomial. @p line and @p column_offset only
/// affect error locations.
inline BoolPoly parse_poly(std::string_view text, const VarTable& vars, zdd::Store& store, std::size_t line = 1,
                           std::size_t column_offset = 0) {
  return detail::ExprParser(text, vars, store, line, column_offset).parse();
}

}  // namespace bnclass
