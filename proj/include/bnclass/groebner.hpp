/// @file groebner.hpp
/// @brief Reduced Gröbner bases and normal forms in the Boolean ring.
///
/// Field polynomials xi^2 + xi are never stored. Arithmetic is square-free
/// throughout and the S-pair of a basis member p with xi^2 + xi (for xi in
/// the marked monomial of p) is the idempotent product xi * p.
///
/// Completion and reduction run on packed monomials: each variable is mapped
/// to the bit whose position is its significance rank under the active
/// order, so lex comparison is unsigned integer comparison of the packed
/// words and divisibility is a mask test.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bnclass/boolring.hpp"
#include "bnclass/ordering.hpp"

namespace bnclass {

/// Ideal of the Boolean ring given by generators; zero generators are
/// dropped on insertion.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(const std::vector<BoolPoly>& gens) {
    for (const auto& g : gens) add(g);
  }
  void add(const BoolPoly& g) {
    if (!g.is_zero()) gens_.push_back(g);
  }
  const std::vector<BoolPoly>& generators() const { return gens_; }
  bool is_zero_ideal() const { return gens_.empty(); }

 private:
  std::vector<BoolPoly> gens_;
};

/// One element of a marked basis.
struct MarkedPoly {
  BoolPoly poly;
  Monomial marked;
};

/// Reduced, minimal, monic Gröbner basis with its marked (initial) monomials,
/// listed by decreasing marked monomial.
class MarkedGB {
 public:
  MarkedGB(MonomialOrder order, std::vector<MarkedPoly> members) : order_(std::move(order)), members_(std::move(members)) {}

  const MonomialOrder& order() const { return order_; }
  const std::vector<MarkedPoly>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  /// True for the basis {1} of the unit ideal.
  bool is_unit() const { return members_.size() == 1 && members_[0].marked.is_one(); }

  /// True when no marked monomial divides @p m.
  bool is_standard(const Monomial& m) const {
    return std::none_of(members_.begin(), members_.end(), [&](const MarkedPoly& g) { return g.marked.divides(m); });
  }

 private:
  MonomialOrder order_;
  std::vector<MarkedPoly> members_;
};

/// Counters for one completion.
struct BuchbergerStats {
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;
  std::size_t basis_peak = 0;
};

namespace detail {

template <std::size_t W>
struct Packed {
  std::array<std::uint64_t, W> w{};

  void set(std::uint32_t bit) { w[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  bool test(std::uint32_t bit) const { return (w[bit >> 6] >> (bit & 63)) & 1U; }
  bool is_one() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  int degree() const {
    int d = 0;
    for (auto x : w) d += std::popcount(x);
    return d;
  }
  bool divides(const Packed& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  bool coprime(const Packed& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i] & o.w[i]) return false;
    return true;
  }
  Packed operator|(const Packed& o) const {
    Packed r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  Packed without(const Packed& o) const {
    Packed r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }
  friend bool operator==(const Packed& a, const Packed& b) {
    for (std::size_t i = 0; i < W; ++i)
      if (a.w[i] != b.w[i]) return false;
    return true;
  }
  /// Lex comparison in rank space: highest word first.
  friend std::strong_ordering lex_compare(const Packed& a, const Packed& b) {
    for (std::size_t i = W; i-- > 0;)
      if (a.w[i] != b.w[i]) return a.w[i] <=> b.w[i];
    return std::strong_ordering::equal;
  }
};

/// Reduction engine bound to one monomial order.
template <std::size_t W>
class Engine {
 public:
  using M = Packed<W>;
  using Poly = std::vector<M>;  // strictly decreasing under the order

  struct Member {
    Poly poly;
    M lead;
    bool alive = true;
  };

  explicit Engine(const MonomialOrder& ord) : ord_(ord), lex_(ord.lex()), graded_(ord.is_graded()), n_(ord.size()) {}

  std::strong_ordering compare(const M& a, const M& b) const {
    if (graded_) {
      const int da = a.degree(), db = b.degree();
      if (da != db) return da <=> db;
    }
    return lex_compare(a, b);
  }
  bool greater(const M& a, const M& b) const { return compare(a, b) == std::strong_ordering::greater; }

  M pack(const Monomial& m) const {
    M r;
    for (Var v : m.vars()) {
      if (v == 0 || v > n_) throw std::invalid_argument("polynomial uses a variable outside the order");
      r.set(lex_.rank(v) - 1);
    }
    return r;
  }

  Monomial unpack(const M& m) const {
    VarSet vars;
    const auto& sig = lex_.significance();
    for (std::uint32_t bit = 0; bit < n_; ++bit)
      if (m.test(bit)) vars.push_back(sig[n_ - 1 - bit]);
    return Monomial(std::move(vars));
  }

  Poly pack(const BoolPoly& p) const {
    Poly out;
    for (const auto& m : p.monomials()) out.push_back(pack(m));
    normalize(out);
    return out;
  }

  BoolPoly unpack(const Poly& p, zdd::Store& store) const {
    std::vector<Monomial> ms;
    ms.reserve(p.size());
    for (const auto& m : p) ms.push_back(unpack(m));
    return BoolPoly::from_monomials(store, ms);
  }

  /// Sorts decreasingly and cancels equal pairs (coefficients are in F2).
  void normalize(Poly& p) const {
    std::sort(p.begin(), p.end(), [&](const M& a, const M& b) { return greater(a, b); });
    Poly out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size();) {
      std::size_t j = i;
      while (j < p.size() && p[j] == p[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(p[i]);
      i = j;
    }
    p = std::move(out);
  }

  Poly add(const Poly& a, const Poly& b) const {
    Poly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      const auto c = compare(a[i], b[j]);
      if (c == std::strong_ordering::greater) {
        out.push_back(a[i++]);
      } else if (c == std::strong_ordering::less) {
        out.push_back(b[j++]);
      } else {
        ++i, ++j;
      }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
  }

  /// m * p with idempotent variables.
  Poly multiply(const Poly& p, const M& m) const {
    Poly out;
    out.reserve(p.size());
    for (const auto& t : p) out.push_back(t | m);
    normalize(out);
    return out;
  }

  /// Full reduction. Each step takes the largest remaining monomial; if some
  /// basis lead divides it, the first such member in @p basis is used.
  Poly reduce(Poly work, const std::vector<Member>& basis) const {
    Poly rest;
    std::size_t pos = 0;
    while (pos < work.size()) {
      const M u = work[pos];
      const Member* divisor = nullptr;
      for (const auto& g : basis)
        if (g.alive && g.lead.divides(u)) {
          divisor = &g;
          break;
        }
      if (divisor == nullptr) {
        rest.push_back(u);
        ++pos;
      } else {
        const Poly top(work.begin() + static_cast<std::ptrdiff_t>(pos), work.end());
        work = add(top, multiply(divisor->poly, u.without(divisor->lead)));
        pos = 0;
      }
    }
    return rest;
  }

  Poly s_polynomial(const Member& a, const Member& b) const {
    const M lcm = a.lead | b.lead;
    return add(multiply(a.poly, lcm.without(a.lead)), multiply(b.poly, lcm.without(b.lead)));
  }

  Poly field_pair(const Member& a, std::uint32_t bit) const {
    M x;
    x.set(bit);
    return multiply(a.poly, x);
  }

  /// Buchberger completion followed by minimisation and inter-reduction.
  std::vector<Member> complete(const std::vector<Poly>& generators, BuchbergerStats* stats) {
    basis_.clear();
    pending_.clear();
    queue_.clear();
    seq_ = 0;
    unit_ = false;

    for (const auto& g : generators) {
      if (unit_) break;
      add_reduced(g);
    }
    while (!unit_ && !queue_.empty()) {
      const Pair pair = *queue_.begin();
      queue_.erase(queue_.begin());
      if (!pair.field) pending_[pair.i][pair.j] = pending_[pair.j][pair.i] = 0;
      if (!basis_[pair.i].alive || !basis_[pair.j].alive) continue;
      if (!pair.field && chain_criterion(pair.i, pair.j, pair.lcm)) {
        if (stats) ++stats->pairs_skipped;
        continue;
      }
      Poly s = pair.field ? field_pair(basis_[pair.i], pair.bit) : s_polynomial(basis_[pair.i], basis_[pair.j]);
      if (stats) ++stats->pairs_reduced;
      add_reduced(std::move(s));
    }
    if (stats) stats->basis_peak = std::max(stats->basis_peak, basis_.size());
    if (unit_) {
      M one;
      return {Member{Poly{one}, one}};
    }
    return interreduce();
  }

 private:
  struct Pair {
    M lcm;
    std::size_t i = 0, j = 0;
    bool field = false;
    std::uint32_t bit = 0;
    std::uint64_t seq = 0;
  };
  struct PairLess {
    const Engine* e;
    bool operator()(const Pair& a, const Pair& b) const {
      const auto c = e->compare(a.lcm, b.lcm);
      if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
      return a.seq < b.seq;
    }
  };

  /// Reduces @p p and inserts the remainder. Members whose lead becomes
  /// divisible by the new lead are retired and their polynomials re-reduced,
  /// so the live leads always form an antichain.
  void add_reduced(Poly p) {
    std::vector<Poly> todo{std::move(p)};
    while (!todo.empty() && !unit_) {
      Poly h = reduce(std::move(todo.back()), basis_);
      todo.pop_back();
      if (h.empty()) continue;
      for (auto& g : basis_)
        if (g.alive && h.front().divides(g.lead)) {
          g.alive = false;
          todo.push_back(g.poly);
        }
      insert(std::move(h));
    }
  }

  void insert(Poly h) {
    const M lead = h.front();
    if (lead.is_one()) {
      unit_ = true;
      return;
    }
    const std::size_t k = basis_.size();
    basis_.push_back(Member{std::move(h), lead});
    for (auto& row : pending_) row.push_back(0);
    pending_.emplace_back(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (!basis_[i].alive) continue;
      if (basis_[i].lead.coprime(lead)) continue;  // product criterion
      pending_[i][k] = pending_[k][i] = 1;
      queue_.insert(Pair{basis_[i].lead | lead, i, k, false, 0, seq_++});
    }
    for (std::uint32_t bit = 0; bit < n_; ++bit)
      if (lead.test(bit)) queue_.insert(Pair{lead, k, k, true, bit, seq_++});
  }

  bool chain_criterion(std::size_t i, std::size_t j, const M& lcm) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == i || k == j || !basis_[k].alive) continue;
      if (basis_[k].lead.divides(lcm) && !pending_[i][k] && !pending_[j][k]) return true;
    }
    return false;
  }

  std::vector<Member> interreduce() const {
    std::vector<Member> keep;
    for (const auto& g : basis_)
      if (g.alive) keep.push_back(g);
    std::sort(keep.begin(), keep.end(), [&](const Member& a, const Member& b) { return greater(a.lead, b.lead); });
    std::vector<Member> out;
    out.reserve(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      std::vector<Member> others;
      for (std::size_t j = 0; j < keep.size(); ++j)
        if (j != i) others.push_back(j < i ? out[j] : keep[j]);
      Poly tail(keep[i].poly.begin() + 1, keep[i].poly.end());
      Poly reduced = reduce(std::move(tail), others);
      reduced.insert(reduced.begin(), keep[i].lead);
      out.push_back(Member{std::move(reduced), keep[i].lead});
    }
    return out;
  }

  const MonomialOrder& ord_;
  const LexOrder& lex_;
  bool graded_;
  std::size_t n_;

  std::vector<Member> basis_;
  std::vector<std::vector<char>> pending_;
  std::set<Pair, PairLess> queue_{PairLess{this}};
  std::uint64_t seq_ = 0;
  bool unit_ = false;
};

/// Calls fn.template operator()<W>() with the smallest supported word count
/// W covering @p n variables.
template <typename Fn>
decltype(auto) with_width(std::size_t n, Fn&& fn) {
  if (n <= 64) return fn.template operator()<1>();
  if (n <= 128) return fn.template operator()<2>();
  if (n <= 256) return fn.template operator()<4>();
  if (n <= 512) return fn.template operator()<8>();
  throw std::domain_error("at most 512 variables are supported");
}

inline zdd::Store* store_of(const std::vector<BoolPoly>& polys) {
  for (const auto& p : polys)
    if (p.family().bound()) return &p.store();
  return nullptr;
}

}  // namespace detail

/// Reduced Gröbner basis of @p ideal (plus the implicit field polynomials)
/// under @p ord.
inline MarkedGB buchberger(const Ideal& ideal, const MonomialOrder& ord, BuchbergerStats* stats = nullptr) {
  const auto& gens = ideal.generators();
  if (gens.empty()) return MarkedGB(ord, {});
  zdd::Store& store = gens.front().store();
  return detail::with_width(ord.size(), [&]<std::size_t W>() {
    detail::Engine<W> engine(ord);
    std::vector<typename detail::Engine<W>::Poly> packed;
    packed.reserve(gens.size());
    for (const auto& g : gens) packed.push_back(engine.pack(g));
    auto members = engine.complete(packed, stats);
    std::vector<MarkedPoly> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(MarkedPoly{engine.unpack(m.poly, store), engine.unpack(m.lead)});
    return MarkedGB(ord, std::move(out));
  });
}

/// Normal form of @p f: the sum of standard monomials congruent to @p f.
inline BoolPoly normal_form(const BoolPoly& f, const MarkedGB& gb) {
  if (f.is_zero() || gb.size() == 0) return f;
  return detail::with_width(gb.order().size(), [&]<std::size_t W>() {
    detail::Engine<W> engine(gb.order());
    std::vector<typename detail::Engine<W>::Member> basis;
    basis.reserve(gb.size());
    // Members are sorted by decreasing marked monomial, so the first divisor
    // found is the one with the largest marked monomial.
    for (const auto& g : gb.members()) basis.push_back({engine.pack(g.poly), engine.pack(g.marked)});
    return engine.unpack(engine.reduce(engine.pack(f), basis), f.store());
  });
}

inline bool is_member(const BoolPoly& f, const MarkedGB& gb) { return normal_form(f, gb).is_zero(); }

/// Checks the basis property directly: every S-polynomial and every field
/// pair of the members reduces to zero, markings are initial monomials, and
/// no member contains a monomial divisible by another member's marking.
inline bool verify_groebner_basis(const MarkedGB& gb) {
  if (gb.size() == 0) return true;
  return detail::with_width(gb.order().size(), [&]<std::size_t W>() {
    using E = detail::Engine<W>;
    E engine(gb.order());
    std::vector<typename E::Member> basis;
    for (const auto& g : gb.members()) basis.push_back({engine.pack(g.poly), engine.pack(g.marked)});
    for (const auto& m : basis)
      if (m.poly.empty() || m.poly.front() != m.lead) return false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (const auto& t : basis[j].poly)
          if (basis[i].lead.divides(t)) return false;
      }
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::uint32_t bit = 0; bit < gb.order().size(); ++bit)
        if (basis[i].lead.test(bit) && !engine.reduce(engine.field_pair(basis[i], bit), basis).empty()) return false;
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        if (!engine.reduce(engine.s_polynomial(basis[i], basis[j]), basis).empty()) return false;
    }
    return true;
  });
}

/// Cone of weight vectors keeping the markings of @p gb: one constraint
/// alpha(i) - beta per member i and tail monomial beta.
inline Cone cone_of(const MarkedGB& gb) {
  Cone cone(gb.order().size());
  for (const auto& g : gb.members())
    for (const auto& t : g.poly.monomials())
      if (t != g.marked) cone.add(g.marked, t);
  return cone;
}

/// Generator of the vanishing ideal of @p points:
/// 1 + sum over v of prod_i (xi + vi + 1), i.e. 1 + sum over v of the
/// monomial multiples of the support of v.
inline Ideal vanishing_ideal_from_points(const std::vector<std::vector<bool>>& points, std::size_t n, zdd::Store& store) {
  if (points.empty()) throw std::invalid_argument("vanishing ideal of the empty point set is the unit ideal");
  const VarSet universe = full_universe(n);
  zdd::NodeRef sum = zdd::kUnit;
  for (const auto& p : points) {
    if (p.size() != n) throw std::invalid_argument("point has wrong length");
    VarSet ones;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i]) ones.push_back(static_cast<Var>(i + 1));
    sum = store.symmetric_difference(sum, store.supersets(ones, universe, false).root());
  }
  Ideal ideal;
  ideal.add(BoolPoly(store.family(sum)));
  return ideal;
}

/// Graded order (total degree, then x1 > x2 > ... > xn).
inline MonomialOrder graded_ascending(std::size_t n) { return GradedOrder(LexOrder::ascending(n)); }

/// Total degree of the graded normal form of @p f. Every representative of
/// f modulo the ideal uses at least this many variables.
inline std::size_t degree_lower_bound(const BoolPoly& f, const Ideal& ideal, std::size_t n) {
  return normal_form(f, buchberger(ideal, graded_ascending(n))).degree();
}

}  // namespace bnclass
