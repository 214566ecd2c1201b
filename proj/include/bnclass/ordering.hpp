/// @file ordering.hpp
/// @brief Lexicographic and graded orders on square-free monomials, weight
/// vectors representing lex orders, and marked Gröbner basis cones.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bnclass/boolring.hpp"

namespace bnclass {

/// Lexicographic order given by a permutation of 1..n listed from the most
/// significant variable down.
class LexOrder {
 public:
  LexOrder() = default;
  explicit LexOrder(VarSet significance) : significance_(std::move(significance)) {
    const std::size_t n = significance_.size();
    rank_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Var v = significance_[i];
      if (v == 0 || v > n || rank_[v] != 0) throw std::invalid_argument("lex order is not a permutation of 1..n");
      rank_[v] = static_cast<std::uint32_t>(n - i);
    }
  }

  /// x1 > x2 > ... > xn
  static LexOrder ascending(std::size_t n) { return LexOrder(full_universe(n)); }
  /// xn > ... > x1
  static LexOrder descending(std::size_t n) {
    VarSet s = full_universe(n);
    std::reverse(s.begin(), s.end());
    return LexOrder(std::move(s));
  }

  std::size_t size() const { return significance_.size(); }
  /// Variables from most to least significant.
  const VarSet& significance() const { return significance_; }
  /// n for the most significant variable, 1 for the least.
  std::uint32_t rank(Var v) const {
    if (v == 0 || v >= rank_.size()) throw std::out_of_range("variable outside the order");
    return rank_[v];
  }
  bool greater(Var a, Var b) const { return rank(a) > rank(b); }

  std::strong_ordering compare(const Monomial& u, const Monomial& v) const {
    // The most significant variable in the symmetric difference decides.
    const auto& a = u.vars();
    const auto& b = v.vars();
    std::uint32_t best = 0;
    int side = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        if (rank(a[i]) > best) best = rank(a[i]), side = 1;
        ++i;
      } else if (i == a.size() || b[j] < a[i]) {
        if (rank(b[j]) > best) best = rank(b[j]), side = -1;
        ++j;
      } else {
        ++i, ++j;
      }
    }
    return side > 0 ? std::strong_ordering::greater : side < 0 ? std::strong_ordering::less : std::strong_ordering::equal;
  }

  friend bool operator==(const LexOrder& a, const LexOrder& b) { return a.significance_ == b.significance_; }

 private:
  VarSet significance_;
  std::vector<std::uint32_t> rank_;
};

/// Total degree first, then the underlying lex order.
class GradedOrder {
 public:
  GradedOrder() = default;
  explicit GradedOrder(LexOrder tie_break) : lex_(std::move(tie_break)) {}

  const LexOrder& tie_break() const { return lex_; }
  std::size_t size() const { return lex_.size(); }

  std::strong_ordering compare(const Monomial& u, const Monomial& v) const {
    if (u.degree() != v.degree()) return u.degree() <=> v.degree();
    return lex_.compare(u, v);
  }

  friend bool operator==(const GradedOrder&, const GradedOrder&) = default;

 private:
  LexOrder lex_;
};

/// Either a lex or a graded order.
class MonomialOrder {
 public:
  MonomialOrder(LexOrder lex) : order_(std::move(lex)) {}  // NOLINT(google-explicit-constructor)
  MonomialOrder(GradedOrder graded) : order_(std::move(graded)) {}  // NOLINT(google-explicit-constructor)

  bool is_graded() const { return std::holds_alternative<GradedOrder>(order_); }
  /// The lex order itself, or the tie-break of a graded order.
  const LexOrder& lex() const {
    if (auto* g = std::get_if<GradedOrder>(&order_)) return g->tie_break();
    return std::get<LexOrder>(order_);
  }
  std::size_t size() const { return lex().size(); }

  std::strong_ordering compare(const Monomial& u, const Monomial& v) const {
    return std::visit([&](const auto& o) { return o.compare(u, v); }, order_);
  }
  bool greater(const Monomial& u, const Monomial& v) const { return compare(u, v) == std::strong_ordering::greater; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::variant<LexOrder, GradedOrder> order_;
};

inline std::strong_ordering compare_monomials(const MonomialOrder& ord, const Monomial& u, const Monomial& v) {
  return ord.compare(u, v);
}

/// Monomials of @p p sorted from largest to smallest under @p ord.
inline std::vector<Monomial> sorted_terms(const BoolPoly& p, const MonomialOrder& ord) {
  auto ms = p.monomials();
  std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
  return ms;
}

/// Largest monomial of a nonzero polynomial.
inline Monomial initial_monomial(const MonomialOrder& ord, const BoolPoly& p) {
  if (p.is_zero()) throw std::domain_error("the zero polynomial has no initial monomial");
  auto ms = p.monomials();
  return *std::max_element(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(b, a); });
}

/// Text of @p p with monomials listed from largest to smallest under @p ord.
inline std::string to_text(const BoolPoly& p, const VarTable& vars, const MonomialOrder& ord) {
  return terms_text(sorted_terms(p, ord), vars);
}

/// Lex order with every variable outside @p candidate above every variable
/// in it; both blocks in ascending index order.
inline LexOrder lex_order_for_candidate(const VarSet& candidate, const VarSet& universe) {
  const VarSet a = normalized(candidate), u = normalized(universe);
  if (!is_subset(a, u)) throw std::invalid_argument("candidate set is not inside the universe");
  VarSet significance = set_difference(u, a);
  significance.insert(significance.end(), a.begin(), a.end());
  return LexOrder(std::move(significance));
}

/// Parses "x3>x2>x1". Listed variables become the most significant, in the
/// given order; unlisted ones follow in ascending index order.
inline LexOrder parse_lex_order(std::string_view text, const VarTable& vars) {
  VarSet listed;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('>', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty()) throw ParseError("empty variable name in order", 1, start + 1);
    auto v = vars.find(tok);
    if (!v) throw ParseError("unknown identifier '" + std::string(tok) + "' in order", 1, start + 1);
    if (std::find(listed.begin(), listed.end(), *v) != listed.end())
      throw ParseError("variable '" + std::string(tok) + "' listed twice in order", 1, start + 1);
    listed.push_back(*v);
    start = end + 1;
  }
  VarSet rest = set_difference(vars.universe(), normalized(listed));
  listed.insert(listed.end(), rest.begin(), rest.end());
  return LexOrder(std::move(listed));
}

// ---------------------------------------------------------------------------
// Weight vectors and cones.

/// Nonnegative integer weight per variable; entry i belongs to variable i + 1.
using WeightVector = std::vector<std::int64_t>;

/// Largest n for which lex weights 2^(r-1) fit the fixed-width entries.
inline constexpr std::size_t kMaxWeightVars = 62;

/// Weight vector representing @p ord on square-free monomials: the variable
/// of rank r (1 = least significant) gets weight 2^(r-1).
inline WeightVector weight_vector(const LexOrder& ord) {
  const std::size_t n = ord.size();
  if (n > kMaxWeightVars) throw std::domain_error("too many variables for 64-bit lex weight vectors");
  WeightVector w(n);
  for (Var v = 1; v <= n; ++v) w[v - 1] = std::int64_t{1} << (ord.rank(v) - 1);
  return w;
}

/// Sum of the weights of the monomial's variables.
inline std::int64_t weight_of(const Monomial& m, const WeightVector& w) {
  std::int64_t s = 0;
  for (Var v : m.vars()) s += w.at(v - 1);
  return s;
}

/// Set of weight vectors w with d·w >= 0 for every stored difference
/// vector d = alpha(i) - beta of a marked basis.
class Cone {
 public:
  Cone() = default;
  explicit Cone(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const { return dim_; }
  const std::vector<std::vector<int>>& constraints() const { return rows_; }

  void add(std::vector<int> difference) {
    if (difference.size() != dim_) throw std::invalid_argument("cone constraint has wrong dimension");
    rows_.push_back(std::move(difference));
  }

  /// Adds alpha - beta for a marked monomial alpha and a tail monomial beta.
  void add(const Monomial& marked, const Monomial& tail) {
    std::vector<int> d(dim_, 0);
    for (Var v : marked.vars()) d.at(v - 1) += 1;
    for (Var v : tail.vars()) d.at(v - 1) -= 1;
    rows_.push_back(std::move(d));
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<int>> rows_;
};

/// Non-strict: every d·w >= 0. Strict: every d·w > 0.
inline bool cone_contains(const Cone& cone, const WeightVector& w, bool strict) {
  if (w.size() != cone.dimension()) throw std::invalid_argument("weight vector dimension does not match the cone");
  for (std::int64_t x : w)
    if (x < 0) throw std::invalid_argument("weight vectors must be nonnegative");
  for (const auto& d : cone.constraints()) {
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < d.size(); ++i) dot += d[i] * w[i];
    if (strict ? dot <= 0 : dot < 0) return false;
  }
  return true;
}

}  // namespace bnclass
