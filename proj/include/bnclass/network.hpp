/// @file network.hpp
/// @brief Boolean network models, steady states and phenotype readouts.

#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnclass/boolring.hpp"
#include "bnclass/error.hpp"
#include "bnclass/groebner.hpp"
#include "bnclass/variety.hpp"

namespace bnclass {

/// A state of the network; entry i is the value of component i + 1.
using State = std::vector<bool>;

struct Component {
  std::string name;
  BoolPoly update;
};

/// Components with update polynomials, bound to a shared store. Immutable
/// after parsing.
class BooleanNetwork {
 public:
  BooleanNetwork(std::shared_ptr<zdd::Store> store, VarTable vars, std::vector<Component> components)
      : store_(std::move(store)), vars_(std::move(vars)), components_(std::move(components)) {}

  std::size_t size() const { return components_.size(); }
  const VarTable& vars() const { return vars_; }
  zdd::Store& store() const { return *store_; }
  const std::shared_ptr<zdd::Store>& store_handle() const { return store_; }
  const std::vector<Component>& components() const { return components_; }
  const BoolPoly& update(Var v) const { return components_.at(v - 1).update; }

  /// f(state)
  State step(const State& s) const {
    State next(size());
    for (std::size_t i = 0; i < size(); ++i) next[i] = components_[i].update.eval(s);
    return next;
  }

  /// Copy of the network in a fresh store, for use on another thread.
  BooleanNetwork clone() const {
    auto fresh = std::make_shared<zdd::Store>();
    std::vector<Component> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_)
      comps.push_back({c.name, BoolPoly(fresh->family(fresh->import(*store_, c.update.family().root())))});
    return BooleanNetwork(fresh, vars_, std::move(comps));
  }

  /// Moves @p p (from this network's store) into the store of @p other.
  BoolPoly transfer(const BoolPoly& p, const BooleanNetwork& other) const {
    return BoolPoly(other.store().family(other.store().import(p.store(), p.family().root())));
  }

 private:
  std::shared_ptr<zdd::Store> store_;
  VarTable vars_;
  std::vector<Component> components_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped, not trimmed
};

inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!trim(line).empty()) out.push_back({number, line});
    start = end + 1;
  }
  return out;
}

inline bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace detail

/// Parses "NAME, EXPR" lines (optional "targets, factors" header, '#'
/// comments). Rules may reference components declared later in the file.
inline BooleanNetwork parse_network(std::string_view text,
                                    std::shared_ptr<zdd::Store> store = std::make_shared<zdd::Store>()) {
  struct Row {
    std::size_t line;
    std::string_view full, name, expr;
  };
  std::vector<Row> rows;
  bool first = true;
  for (const auto& [number, line] : detail::content_lines(text)) {
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 'NAME, EXPR'", number, 1);
    const auto name = detail::trim(line.substr(0, comma));
    const auto expr = detail::trim(line.substr(comma + 1));
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](unsigned char c) { return std::tolower(c); });
    if (first && lowered == "targets") {
      first = false;
      continue;
    }
    first = false;
    if (!detail::valid_identifier(name)) throw ParseError("invalid component name", number, detail::column_of(line, name));
    if (expr.empty()) throw ParseError("missing update expression", number, comma + 2);
    rows.push_back({number, line, name, expr});
  }
  VarTable vars;
  for (const auto& r : rows) {
    if (vars.find(r.name)) throw ParseError("duplicate component '" + std::string(r.name) + "'", r.line, detail::column_of(r.full, r.name));
    vars.add(std::string(r.name));
  }
  std::vector<Component> components;
  components.reserve(rows.size());
  for (const auto& r : rows)
    components.push_back({std::string(r.name), parse_poly(r.expr, vars, *store, r.line, detail::column_of(r.full, r.expr) - 1)});
  return BooleanNetwork(std::move(store), std::move(vars), std::move(components));
}

/// Ideal generated by f_i + x_i; components with f_i = x_i contribute the
/// zero polynomial and are dropped.
inline Ideal steady_state_ideal(const BooleanNetwork& bn) {
  Ideal ideal;
  for (Var v = 1; v <= bn.size(); ++v) ideal.add(bn.update(v) + BoolPoly::variable(bn.store(), v));
  return ideal;
}

namespace detail {

/// Lexicographic order on the component-order bit string.
inline bool state_less(const State& a, const State& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline State state_from_set(const VarSet& ones, std::size_t n) {
  State s(n, false);
  for (Var v : ones) s[v - 1] = true;
  return s;
}

}  // namespace detail

/// Fixed points as a ZDD family of point supports.
inline zdd::Family steady_state_family(const BooleanNetwork& bn) {
  return variety_family(steady_state_ideal(bn), bn.size(), bn.store());
}

/// All states with f(x) = x, sorted lexicographically by component order.
/// Throws LimitExceeded (mentioning the count) if there are more than
/// @p limit.
inline std::vector<State> enumerate_steady_states(const BooleanNetwork& bn, std::size_t limit = 1'000'000) {
  const zdd::Family fam = steady_state_family(bn);
  const std::uint64_t count = fam.count();
  if (count > limit)
    throw LimitExceeded("network has " + std::to_string(count) + " steady states, above the limit of " + std::to_string(limit));
  std::vector<State> out;
  for (const auto& ones : fam.enumerate()) out.push_back(detail::state_from_set(ones, bn.size()));
  std::sort(out.begin(), out.end(), detail::state_less);
  return out;
}

/// Exhaustive scan of all 2^n states (n <= 24).
inline std::vector<State> enumerate_steady_states_brute_force(const BooleanNetwork& bn) {
  const std::size_t n = bn.size();
  if (n > 24) throw LimitExceeded("brute-force steady-state scan is limited to 24 components");
  std::vector<State> out;
  State s(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> (n - 1 - i)) & 1U;
    if (bn.step(s) == s) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), detail::state_less);
  return out;
}

/// Named phenotype with its readout polynomial.
struct PhenotypeSpec {
  std::string name;
  BoolPoly readout;
  /// A constant readout does not split the states.
  bool degenerate() const { return readout.is_constant(); }
};

/// Parses "NAME : EXPR" lines ('#' comments) against the network's names.
inline std::vector<PhenotypeSpec> parse_phenotypes(std::string_view text, const VarTable& vars, zdd::Store& store) {
  std::vector<PhenotypeSpec> specs;
  for (const auto& [number, line] : detail::content_lines(text)) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'NAME : EXPR'", number, 1);
    const auto name = detail::trim(line.substr(0, colon));
    const auto expr = detail::trim(line.substr(colon + 1));
    if (!detail::valid_identifier(name)) throw ParseError("invalid phenotype name", number, detail::column_of(line, name));
    if (std::any_of(specs.begin(), specs.end(), [&](const PhenotypeSpec& p) { return p.name == name; }))
      throw ParseError("duplicate phenotype '" + std::string(name) + "'", number, detail::column_of(line, name));
    if (expr.empty()) throw ParseError("missing readout expression", number, colon + 2);
    specs.push_back({std::string(name), parse_poly(expr, vars, store, number, detail::column_of(line, expr) - 1)});
  }
  return specs;
}

inline std::vector<PhenotypeSpec> parse_phenotypes(std::string_view text, const BooleanNetwork& bn) {
  return parse_phenotypes(text, bn.vars(), bn.store());
}

/// Phenotype membership of every steady state.
struct PhenotypeReport {
  std::vector<std::string> phenotypes;
  std::vector<State> states;
  std::vector<std::vector<bool>> membership;  // [state][phenotype]
  std::size_t unassigned = 0;
  std::size_t overlapping = 0;  // states in two or more phenotypes
  bool disjoint() const { return overlapping == 0; }
};

inline PhenotypeReport check_phenotypes(const std::vector<State>& states, const std::vector<PhenotypeSpec>& specs) {
  PhenotypeReport r;
  for (const auto& p : specs) r.phenotypes.push_back(p.name);
  r.states = states;
  for (const auto& s : states) {
    std::vector<bool> row;
    std::size_t hits = 0;
    for (const auto& p : specs) {
      row.push_back(p.readout.eval(s));
      hits += row.back() ? 1 : 0;
    }
    if (hits == 0) ++r.unassigned;
    if (hits > 1) ++r.overlapping;
    r.membership.push_back(std::move(row));
  }
  return r;
}

inline PhenotypeReport check_phenotypes(const BooleanNetwork& bn, const std::vector<PhenotypeSpec>& specs) {
  return check_phenotypes(enumerate_steady_states(bn), specs);
}

}  // namespace bnclass
