/// @file variety.hpp
/// @brief Varieties of Boolean ideals and bases computed from their points.
///
/// Every ideal of the Boolean ring is radical, so once its variety V is known
/// the reduced Gröbner basis for any order is the basis of the vanishing
/// ideal of V. VarietyBasis computes it with the Buchberger-Möller scheme:
/// monomials are visited in increasing order, a monomial whose evaluation
/// vector on V is independent of those of the smaller standard monomials is
/// standard, otherwise it is a marked monomial whose tail is the dependency.
/// Normal forms are then interpolants on the standard monomials.

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <queue>
#include <unordered_map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bnclass/boolring.hpp"
#include "bnclass/error.hpp"
#include "bnclass/groebner.hpp"
#include "bnclass/ordering.hpp"
#include "bnclass/zdd.hpp"

namespace bnclass {

/// Common zeros of the generators as a ZDD family of point supports over
/// {1..n}. Each generator's zero set comes from Shannon expansion in the
/// store's variable order; zero sets are intersected by ascending support.
inline zdd::Family variety_family(const Ideal& ideal, std::size_t n, zdd::Store& s) {
  std::vector<zdd::NodeRef> free_tail(n + 2, zdd::kUnit);  // powerset of {v..n}
  for (std::size_t v = n; v >= 1; --v) free_tail[v] = s.node(static_cast<Var>(v), free_tail[v + 1], free_tail[v + 1]);

  std::map<std::pair<std::uint32_t, Var>, zdd::NodeRef> memo;
  std::function<zdd::NodeRef(zdd::NodeRef, Var)> zeros = [&](zdd::NodeRef g, Var v) -> zdd::NodeRef {
    if (g == zdd::kEmpty) return free_tail[v];
    if (g == zdd::kUnit) return zdd::kEmpty;
    if (auto it = memo.find({g.id, v}); it != memo.end()) return it->second;
    zdd::NodeRef r;
    if (s.var(g) > v) {
      const zdd::NodeRef rest = zeros(g, v + 1);
      r = s.node(v, rest, rest);
    } else {
      const zdd::NodeRef g0 = s.lo(g);
      const zdd::NodeRef g1 = s.symmetric_difference(s.lo(g), s.hi(g));
      r = s.node(v, zeros(g0, v + 1), zeros(g1, v + 1));
    }
    memo.emplace(std::make_pair(g.id, v), r);
    return r;
  };

  std::vector<BoolPoly> gens = ideal.generators();
  for (const auto& g : gens) {
    if (&g.store() != &s) throw std::invalid_argument("generators belong to a different store");
    const VarSet vs = g.vars();
    if (!vs.empty() && vs.back() > n) throw std::invalid_argument("generator uses a variable above n");
  }
  std::stable_sort(gens.begin(), gens.end(), [](const BoolPoly& a, const BoolPoly& b) { return a.vars().size() < b.vars().size(); });
  zdd::NodeRef points = free_tail[1];
  for (const auto& g : gens) {
    points = s.intersect(points, zeros(g.family().root(), 1));
    if (points == zdd::kEmpty) break;
  }
  return s.family(points);
}

/// Standard monomials and marked basis of the vanishing ideal of a point
/// set, for one monomial order.
class VarietyBasis {
 public:
  /// @p points are distinct supports (sets of variables equal to 1). With
  /// @p with_basis false only normal forms are available.
  VarietyBasis(const std::vector<VarSet>& points, MonomialOrder order, bool with_basis = true)
      : order_(std::move(order)), m_(points.size()), words_((points.size() + 63) / 64), with_basis_(with_basis) {
    const std::size_t n = order_.size();
    for (const auto& p : points)
      for (Var v : p)
        if (v == 0 || v > n) throw std::invalid_argument("point uses a variable outside the order");
    // Column of each variable: the points where it is 1.
    columns_.assign((n + 1) * words_, 0);
    for (std::size_t j = 0; j < m_; ++j)
      for (Var v : points[j]) columns_[v * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    if (m_ == 0) return;
    detail::with_width(n, [&]<std::size_t W>() {
      if (order_.is_graded())
        build_incremental<W>();
      else
        build_lex<W>(points);
    });
  }

  const MonomialOrder& order() const { return order_; }
  std::size_t point_count() const { return m_; }
  /// True when there are no points (the ideal is the unit ideal).
  bool is_unit() const { return m_ == 0; }
  /// Standard monomials in increasing order; as many as there are points.
  const std::vector<Monomial>& standard_monomials() const { return standard_; }

  /// Unique combination of standard monomials agreeing with @p f on the points.
  BoolPoly normal_form(const BoolPoly& f) const {
    if (is_unit()) return BoolPoly::zero(f.store());
    return BoolPoly::from_monomials(f.store(), combination(solve(evaluate(f)).data()));
  }

  /// The reduced Gröbner basis, members by decreasing marked monomial.
  MarkedGB marked_basis(zdd::Store& store) const {
    if (!with_basis_) throw std::logic_error("basis was not recorded");
    if (is_unit()) return MarkedGB(order_, {MarkedPoly{BoolPoly::one(store), Monomial{}}});
    std::vector<MarkedPoly> out;
    out.reserve(leads_.size());
    for (std::size_t i = 0; i < leads_.size(); ++i) {
      std::vector<Monomial> terms = combination(&lead_combs_[i * words_]);
      terms.push_back(leads_[i]);
      out.push_back(MarkedPoly{BoolPoly::from_monomials(store, terms), leads_[i]});
    }
    std::sort(out.begin(), out.end(), [&](const MarkedPoly& a, const MarkedPoly& b) { return order_.greater(a.marked, b.marked); });
    return MarkedGB(order_, std::move(out));
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static std::size_t lowest(const std::uint64_t* v, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i)
      if (v[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(v[i]));
    return npos;
  }
  static void flip(std::uint64_t* v, const std::uint64_t* o, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i) v[i] ^= o[i];
  }

  /// Values of @p f on the points, by one pass over its ZDD.
  std::vector<std::uint64_t> evaluate(const BoolPoly& f) const {
    const zdd::Store& s = f.store();
    std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> memo;
    const std::vector<std::uint64_t> zero(words_, 0);
    std::vector<std::uint64_t> one(words_, ~std::uint64_t{0});
    if (m_ % 64) one.back() = (std::uint64_t{1} << (m_ % 64)) - 1;
    std::function<const std::vector<std::uint64_t>&(zdd::NodeRef)> rec = [&](zdd::NodeRef g) -> const std::vector<std::uint64_t>& {
      if (g == zdd::kEmpty) return zero;
      if (g == zdd::kUnit) return one;
      if (auto it = memo.find(g.id); it != memo.end()) return it->second;
      const Var v = s.var(g);
      if (v > order_.size()) throw std::invalid_argument("polynomial uses a variable outside the order");
      std::vector<std::uint64_t> r = rec(s.lo(g));
      const auto& hi = rec(s.hi(g));
      for (std::size_t i = 0; i < words_; ++i) r[i] ^= hi[i] & columns_[v * words_ + i];
      return memo.emplace(g.id, std::move(r)).first->second;
    };
    return rec(f.family().root());
  }

  /// Combination of standard monomials whose value vector is @p v.
  std::vector<std::uint64_t> solve(std::vector<std::uint64_t> v) const {
    std::vector<std::uint64_t> comb(words_, 0);
    for (std::size_t p = lowest(v.data(), words_); p != npos; p = lowest(v.data(), words_)) {
      const std::size_t r = pivot_row_[p];
      if (r == npos) throw std::logic_error("value vectors of standard monomials do not span");
      flip(v.data(), &row_values_[r * words_], words_);
      flip(comb.data(), &row_combs_[r * words_], words_);
    }
    return comb;
  }

  std::vector<Monomial> combination(const std::uint64_t* comb) const {
    std::vector<Monomial> out;
    for (std::size_t k = 0; k < standard_.size(); ++k)
      if ((comb[k >> 6] >> (k & 63)) & 1U) out.push_back(standard_[k]);
    return out;
  }

  /// Appends to @p out the standard monomials (as masks over rank bits at
  /// most @p bit, plus @p prefix) of the distinct points @p pts under lex.
  /// With y the variable of rank bit @p bit, V0 and V1 the projections of
  /// the points with y = 0 and y = 1: SM(V) = SM(V0 ∪ V1) ∪ y·SM(V0 ∩ V1).
  template <typename M>
  static void lex_standard(const std::vector<M>& pts, int bit, M prefix, std::vector<M>& out) {
    if (pts.empty()) return;
    if (pts.size() == 1 || bit < 0) {
      out.push_back(prefix);
      return;
    }
    const auto b = static_cast<std::uint32_t>(bit);
    std::vector<M> zero, one;
    for (const M& p : pts) {
      if (p.test(b)) {
        M q = p;
        q.w[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
        one.push_back(q);
      } else {
        zero.push_back(p);
      }
    }
    if (one.empty()) return lex_standard(zero, bit - 1, prefix, out);
    if (zero.empty()) return lex_standard(one, bit - 1, prefix, out);
    auto less = [](const M& x, const M& y) { return lex_compare(x, y) < 0; };
    std::sort(zero.begin(), zero.end(), less);
    std::sort(one.begin(), one.end(), less);
    std::vector<M> both, either;
    std::set_intersection(zero.begin(), zero.end(), one.begin(), one.end(), std::back_inserter(both), less);
    std::set_union(zero.begin(), zero.end(), one.begin(), one.end(), std::back_inserter(either), less);
    lex_standard(either, bit - 1, prefix, out);
    M with = prefix;
    with.set(b);
    lex_standard(both, bit - 1, with, out);
  }

  template <std::size_t W>
  void build_lex(const std::vector<VarSet>& points) {
    using E = detail::Engine<W>;
    using M = typename E::M;
    const E engine(order_);
    const std::size_t n = order_.size();
    const auto& sig = order_.lex().significance();
    std::vector<Var> var_of_bit(n);
    for (std::uint32_t bit = 0; bit < n; ++bit) var_of_bit[bit] = sig[n - 1 - bit];

    std::vector<M> pts;
    pts.reserve(m_);
    for (const auto& p : points) pts.push_back(engine.pack(Monomial(p)));
    std::vector<M> standard;
    lex_standard(pts, static_cast<int>(n) - 1, M{}, standard);
    if (standard.size() != m_) throw std::invalid_argument("points are not distinct");
    std::sort(standard.begin(), standard.end(), [&](const M& a, const M& b) { return engine.greater(b, a); });

    auto value_of = [&](const M& mono, std::uint64_t* out) {
      std::fill(out, out + words_, ~std::uint64_t{0});
      if (m_ % 64) out[words_ - 1] = (std::uint64_t{1} << (m_ % 64)) - 1;
      for (std::uint32_t bit = 0; bit < n; ++bit)
        if (mono.test(bit))
          for (std::size_t i = 0; i < words_; ++i) out[i] &= columns_[var_of_bit[bit] * words_ + i];
    };

    pivot_row_.assign(m_, npos);
    row_values_.assign(m_ * words_, 0);
    row_combs_.assign(m_ * words_, 0);
    std::vector<std::uint64_t> v(words_), comb(words_);
    for (std::size_t k = 0; k < m_; ++k) {
      value_of(standard[k], v.data());
      std::fill(comb.begin(), comb.end(), 0);
      comb[k >> 6] |= std::uint64_t{1} << (k & 63);
      std::size_t p = lowest(v.data(), words_);
      while (p != npos && pivot_row_[p] != npos) {
        flip(v.data(), &row_values_[pivot_row_[p] * words_], words_);
        flip(comb.data(), &row_combs_[pivot_row_[p] * words_], words_);
        p = lowest(v.data(), words_);
      }
      if (p == npos) throw std::logic_error("standard monomials are dependent on the points");
      pivot_row_[p] = k;
      std::copy(v.begin(), v.end(), &row_values_[k * words_]);
      std::copy(comb.begin(), comb.end(), &row_combs_[k * words_]);
      standard_.push_back(engine.unpack(standard[k]));
    }
    if (!with_basis_) return;

    // Marked monomials: minimal non-standard monomials, i.e. x*s outside the
    // standard set with every one-variable divisor standard.
    auto less = [](const M& x, const M& y) { return lex_compare(x, y) < 0; };
    std::vector<M> sorted = standard;
    std::sort(sorted.begin(), sorted.end(), less);
    auto is_standard = [&](const M& x) { return std::binary_search(sorted.begin(), sorted.end(), x, less); };
    std::vector<M> leads;
    for (const M& s : standard)
      for (std::uint32_t bit = 0; bit < n; ++bit) {
        if (s.test(bit)) continue;
        M c = s;
        c.set(bit);
        if (is_standard(c)) continue;
        bool minimal = true;
        for (std::uint32_t b = 0; b < n && minimal; ++b) {
          if (!c.test(b) || b == bit) continue;
          M d = c;
          d.w[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
          minimal = is_standard(d);
        }
        if (minimal) leads.push_back(c);
      }
    std::sort(leads.begin(), leads.end(), [&](const M& a, const M& b) { return engine.greater(b, a); });
    leads.erase(std::unique(leads.begin(), leads.end()), leads.end());
    for (const M& lead : leads) {
      value_of(lead, v.data());
      const auto c = solve(v);
      leads_.push_back(engine.unpack(lead));
      lead_combs_.insert(lead_combs_.end(), c.begin(), c.end());
    }
  }

  template <std::size_t W>
  void build_incremental() {

    using E = detail::Engine<W>;
    using M = typename E::M;
    const E engine(order_);
    const std::size_t n = order_.size();
    const auto& sig = order_.lex().significance();
    // Rank bit -> variable.
    std::vector<Var> var_of_bit(n);
    for (std::uint32_t bit = 0; bit < n; ++bit) var_of_bit[bit] = sig[n - 1 - bit];

    pivot_row_.assign(m_, npos);
    row_values_.assign(m_ * words_, 0);
    row_combs_.assign(m_ * words_, 0);

    // Candidates are (monomial, offset of its value vector in the pool),
    // popped in increasing order; duplicates arrive consecutively.
    std::vector<std::uint64_t> pool(words_, ~std::uint64_t{0});
    if (m_ % 64) pool.back() = (std::uint64_t{1} << (m_ % 64)) - 1;
    using Entry = std::pair<M, std::size_t>;
    auto later = [&](const Entry& a, const Entry& b) { return engine.greater(a.first, b.first); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
    heap.push({M{}, 0});

    std::vector<M> standard;
    std::vector<std::uint64_t> v(words_), comb(words_);
    bool have_last = false;
    M last{};
    while (!heap.empty()) {
      const auto [mono, offset] = heap.top();
      heap.pop();
      if (have_last && mono == last) continue;
      have_last = true;
      last = mono;
      // Standard only if every divisor obtained by dropping one variable is.
      bool candidate = true;
      for (std::uint32_t bit = 0; bit < n && candidate; ++bit) {
        if (!mono.test(bit)) continue;
        M divisor = mono;
        divisor.w[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
        candidate = std::find(standard.begin(), standard.end(), divisor) != standard.end();
      }
      if (!candidate) continue;

      std::copy_n(&pool[offset], words_, v.begin());
      std::fill(comb.begin(), comb.end(), 0);
      std::size_t p = lowest(v.data(), words_);
      while (p != npos && pivot_row_[p] != npos) {
        flip(v.data(), &row_values_[pivot_row_[p] * words_], words_);
        flip(comb.data(), &row_combs_[pivot_row_[p] * words_], words_);
        p = lowest(v.data(), words_);
      }
      if (p == npos) {
        if (with_basis_) {
          leads_.push_back(engine.unpack(mono));
          lead_combs_.insert(lead_combs_.end(), comb.begin(), comb.end());
        }
        continue;
      }
      const std::size_t k = standard.size();
      comb[k >> 6] |= std::uint64_t{1} << (k & 63);
      pivot_row_[p] = k;
      std::copy(v.begin(), v.end(), &row_values_[k * words_]);
      std::copy(comb.begin(), comb.end(), &row_combs_[k * words_]);
      standard.push_back(mono);
      standard_.push_back(engine.unpack(mono));
      for (std::uint32_t bit = 0; bit < n; ++bit) {
        if (mono.test(bit)) continue;
        M next = mono;
        next.set(bit);
        const std::size_t at = pool.size();
        const std::uint64_t* col = &columns_[var_of_bit[bit] * words_];
        for (std::size_t i = 0; i < words_; ++i) pool.push_back(pool[offset + i] & col[i]);
        heap.push({next, at});
      }
    }
  }

  MonomialOrder order_;
  std::size_t m_;
  std::size_t words_;
  bool with_basis_;
  std::vector<std::uint64_t> columns_;  ///< (n + 1) x words, row v = variable v
  std::vector<Monomial> standard_;
  std::vector<Monomial> leads_;
  std::vector<std::uint64_t> lead_combs_;
  std::vector<std::uint64_t> row_values_, row_combs_;
  std::vector<std::size_t> pivot_row_;
};

}  // namespace bnclass
