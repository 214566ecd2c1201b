/// Shared helpers for the test binaries: random polynomials, networks and
/// truth tables over small universes.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bnclass.hpp"

namespace bnclass::testing {

/// Members of a VarSet as a bitmask (bit i-1 for variable i).
inline std::uint32_t mask_of(const VarSet& s) {
  std::uint32_t m = 0;
  for (Var v : s) m |= 1U << (v - 1);
  return m;
}

inline VarSet set_of(std::uint32_t m) {
  VarSet s;
  for (Var v = 1; m != 0; ++v, m >>= 1)
    if (m & 1U) s.push_back(v);
  return s;
}

inline std::vector<bool> point_of(std::uint32_t m, std::size_t n) {
  std::vector<bool> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (m >> i) & 1U;
  return p;
}

/// Square-free polynomial with monomials drawn as random bitmasks.
inline BoolPoly random_poly(zdd::Store& store, std::size_t n, std::mt19937_64& rng, std::size_t max_terms = 5,
                            std::size_t max_degree = 3) {
  std::uniform_int_distribution<std::size_t> terms(0, max_terms);
  std::uniform_int_distribution<Var> var(1, static_cast<Var>(n));
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  BoolPoly p = BoolPoly::zero(store);
  for (std::size_t t = terms(rng); t > 0; --t) {
    VarSet m;
    for (std::size_t d = deg(rng); d > 0; --d) m.push_back(var(rng));
    p += BoolPoly::monomial(store, Monomial(m));
  }
  return p;
}

/// Truth table: bit m is p evaluated at the point with support mask m.
inline std::vector<bool> truth_table(const BoolPoly& p, std::size_t n) {
  std::vector<bool> t(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < t.size(); ++m) t[m] = p.eval(point_of(m, n));
  return t;
}

/// Network text with random update rules over up to three inputs each.
inline std::string random_network_text(std::size_t n, std::mt19937_64& rng) {
  static const char* ops[] = {" & ", " | ", " + "};
  std::uniform_int_distribution<std::size_t> var(1, n), op(0, 2), arity(1, 3), coin(0, 3);
  std::string text = "targets, factors\n";
  for (std::size_t i = 1; i <= n; ++i) {
    std::string rule;
    for (std::size_t k = arity(rng); k > 0; --k) {
      if (!rule.empty()) rule += ops[op(rng)];
      if (coin(rng) == 0) rule += "!";
      rule += "x" + std::to_string(var(rng));
    }
    text += "x" + std::to_string(i) + ", " + rule + "\n";
  }
  return text;
}

}  // namespace bnclass::testing
