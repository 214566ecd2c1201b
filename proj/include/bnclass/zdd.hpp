/// @file zdd.hpp
/// @brief Zero-suppressed decision diagrams over a fixed variable order.
///
/// A Store owns a unique table of nodes and an operation cache. Families are
/// (store, root) pairs; two families of one store are equal iff their roots
/// are equal. Variable indices are 1-based and increase from the root towards
/// the terminals along every path.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bnclass {

/// 1-based variable (component) index.
using Var = std::uint32_t;

/// Sorted, duplicate-free list of variable indices.
using VarSet = std::vector<Var>;

/// Sorts and deduplicates @p s in place and returns it.
inline VarSet normalized(VarSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool is_subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VarSet set_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// {1, ..., n}
inline VarSet full_universe(std::size_t n) {
  VarSet u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<Var>(i + 1);
  return u;
}

namespace zdd {

/// Opaque node identifier, meaningful only inside the Store that made it.
struct NodeRef {
  std::uint32_t id = 0;
  friend bool operator==(NodeRef, NodeRef) = default;
};

inline constexpr NodeRef kEmpty{0};  ///< the empty family
inline constexpr NodeRef kUnit{1};   ///< the family {∅}

class Store;

/// A family of subsets of the variable universe, bound to one Store.
class Family {
 public:
  Family() = default;
  Family(Store& store, NodeRef root) : store_(&store), root_(root) {}

  Store& store() const {
    if (store_ == nullptr) throw std::logic_error("family is not bound to a store");
    return *store_;
  }
  bool bound() const { return store_ != nullptr; }
  NodeRef root() const { return root_; }

  bool empty() const { return root_ == kEmpty; }
  bool is_unit() const { return root_ == kUnit; }

  friend bool operator==(const Family& a, const Family& b) {
    return a.store_ == b.store_ && a.root_ == b.root_;
  }

  Family operator|(const Family& other) const;
  Family operator&(const Family& other) const;
  Family operator-(const Family& other) const;
  Family operator^(const Family& other) const;
  Family& operator|=(const Family& o) { return *this = *this | o; }
  Family& operator&=(const Family& o) { return *this = *this & o; }
  Family& operator-=(const Family& o) { return *this = *this - o; }
  Family& operator^=(const Family& o) { return *this = *this ^ o; }

  /// Number of member sets. Throws std::overflow_error above 2^64 - 1.
  std::uint64_t count() const;
  bool contains(const VarSet& set) const;
  /// Member of minimum cardinality; ties go to the lexicographically
  /// smallest sorted index sequence. Throws on an empty family.
  VarSet pick_min_cardinality() const;
  /// Follows lo edges whenever possible (the set avoiding low variables).
  VarSet pick_first() const;
  /// Members in lexicographic order of their sorted index sequences.
  std::vector<VarSet> enumerate(std::size_t limit = std::numeric_limits<std::size_t>::max()) const;
  /// Inclusion-minimal members.
  Family minimal() const;
  /// Members with no subset in @p other.
  Family nonsupersets(const Family& other) const;
  /// Union of all member sets.
  VarSet support() const;
  /// Largest member cardinality (0 for the empty family).
  std::size_t max_cardinality() const;
  std::size_t node_count() const;
  /// Sorted JSON list of sorted index arrays, for debugging.
  std::string to_json() const;

 private:
  void check_same_store(const Family& other) const {
    if (store_ != other.store_ || store_ == nullptr)
      throw std::invalid_argument("families belong to different stores");
  }

  Store* store_ = nullptr;
  NodeRef root_ = kEmpty;
};

/// Unique table plus operation cache. Single owner; not thread-safe.
/// Distinct stores may be used from different threads concurrently.
class Store {
 public:
  Store() {
    nodes_.push_back({kTerminalVar, kEmpty, kEmpty, kNoMember});  // empty
    nodes_.push_back({kTerminalVar, kUnit, kUnit, 0});             // unit
  }
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  static constexpr Var kTerminalVar = std::numeric_limits<Var>::max();
  static constexpr std::uint32_t kNoMember = std::numeric_limits<std::uint32_t>::max();

  Var var(NodeRef f) const { return nodes_[f.id].var; }
  NodeRef lo(NodeRef f) const { return nodes_[f.id].lo; }
  NodeRef hi(NodeRef f) const { return nodes_[f.id].hi; }
  /// Size of the smallest member; kNoMember for the empty family.
  std::uint32_t min_cardinality(NodeRef f) const { return nodes_[f.id].min_card; }
  static bool is_terminal(NodeRef f) { return f.id <= 1; }

  /// Number of nodes ever created, terminals included.
  std::size_t size() const { return nodes_.size(); }
  std::size_t cache_size() const { return cache_.size(); }

  /// Hash-consed node constructor; applies the zero-suppression rule.
  NodeRef node(Var v, NodeRef lo, NodeRef hi) {
    if (hi == kEmpty) return lo;
    if (v == 0 || v == kTerminalVar) throw std::out_of_range("variable index out of range");
    NodeKey key{v, lo.id, hi.id};
    auto it = unique_.find(key);
    if (it != unique_.end()) return NodeRef{it->second};
    if (nodes_.size() >= std::numeric_limits<std::uint32_t>::max())
      throw std::length_error("zdd store exhausted");
    const NodeRef fresh{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back({v, lo, hi, std::min(nodes_[lo.id].min_card, nodes_[hi.id].min_card + 1)});
    unique_.emplace(key, fresh.id);
    return fresh;
  }

  Family family(NodeRef root) { return Family(*this, root); }
  Family empty() { return family(kEmpty); }
  Family unit() { return family(kUnit); }

  /// The family {set}.
  Family single(const VarSet& set) {
    VarSet s = normalized(set);
    NodeRef f = kUnit;
    for (auto it = s.rbegin(); it != s.rend(); ++it) f = node(*it, kEmpty, f);
    return family(f);
  }

  /// Family holding exactly the given sets (duplicates collapse). Indices
  /// must lie in [1, universe_size] when universe_size is nonzero.
  Family make_family(const std::vector<VarSet>& sets, std::size_t universe_size = 0) {
    NodeRef f = kEmpty;
    for (const auto& s : sets) {
      for (Var v : s)
        if (v == 0 || (universe_size != 0 && v > universe_size))
          throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
      f = unite(f, single(s).root());
    }
    return family(f);
  }

  /// All subsets of @p universe.
  Family powerset(const VarSet& universe) {
    VarSet u = normalized(universe);
    NodeRef f = kUnit;
    for (auto it = u.rbegin(); it != u.rend(); ++it) f = node(*it, f, f);
    return family(f);
  }

  /// {B ⊆ universe | A ⊆ B} (strict: A ⊂ B).
  Family supersets(const VarSet& a, const VarSet& universe, bool strict) {
    VarSet as = normalized(a), u = normalized(universe);
    if (!is_subset(as, u)) throw std::invalid_argument("supersets: set is not inside the universe");
    NodeRef f = kUnit;
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
      if (std::binary_search(as.begin(), as.end(), *it))
        f = node(*it, kEmpty, f);
      else
        f = node(*it, f, f);
    }
    if (strict) f = difference(f, single(as).root());
    return family(f);
  }

  /// {B | B ⊆ A}
  Family subsets(const VarSet& a) { return powerset(a); }

  // Set algebra on raw node references.

  NodeRef unite(NodeRef a, NodeRef b) {
    if (a == kEmpty) return b;
    if (b == kEmpty || a == b) return a;
    if (a.id > b.id) std::swap(a, b);
    return cached(Op::Union, a, b, [&] {
      const Var v = std::min(var(a), var(b));
      auto [a0, a1] = split(a, v);
      auto [b0, b1] = split(b, v);
      return node(v, unite(a0, b0), unite(a1, b1));
    });
  }

  NodeRef intersect(NodeRef a, NodeRef b) {
    if (a == kEmpty || b == kEmpty) return kEmpty;
    if (a == b) return a;
    if (a == kUnit) return contains_empty(b) ? kUnit : kEmpty;
    if (b == kUnit) return contains_empty(a) ? kUnit : kEmpty;
    if (a.id > b.id) std::swap(a, b);
    return cached(Op::Intersect, a, b, [&] {
      const Var va = var(a), vb = var(b);
      if (va < vb) return intersect(lo(a), b);
      if (vb < va) return intersect(a, lo(b));
      return node(va, intersect(lo(a), lo(b)), intersect(hi(a), hi(b)));
    });
  }

  NodeRef difference(NodeRef a, NodeRef b) {
    if (a == kEmpty || a == b) return kEmpty;
    if (b == kEmpty) return a;
    if (a == kUnit) return contains_empty(b) ? kEmpty : kUnit;
    return cached(Op::Difference, a, b, [&] {
      const Var va = var(a), vb = var(b);
      if (vb < va) return difference(a, lo(b));
      if (va < vb) return node(va, difference(lo(a), b), hi(a));
      return node(va, difference(lo(a), lo(b)), difference(hi(a), hi(b)));
    });
  }

  NodeRef symmetric_difference(NodeRef a, NodeRef b) {
    if (a == b) return kEmpty;
    if (a == kEmpty) return b;
    if (b == kEmpty) return a;
    if (a.id > b.id) std::swap(a, b);
    return cached(Op::SymDiff, a, b, [&] {
      const Var v = std::min(var(a), var(b));
      auto [a0, a1] = split(a, v);
      auto [b0, b1] = split(b, v);
      return node(v, symmetric_difference(a0, b0), symmetric_difference(a1, b1));
    });
  }

  /// Product in the Boolean ring: families read as sums of square-free
  /// monomials over F2, multiplied with x·x = x.
  NodeRef gf2_product(NodeRef a, NodeRef b) {
    if (a == kEmpty || b == kEmpty) return kEmpty;
    if (a == kUnit) return b;
    if (b == kUnit) return a;
    if (a == b) return a;  // p·p = p in the Boolean ring
    if (a.id > b.id) std::swap(a, b);
    return cached(Op::Gf2Product, a, b, [&] {
      const Var v = std::min(var(a), var(b));
      auto [a0, a1] = split(a, v);
      auto [b0, b1] = split(b, v);
      const NodeRef low = gf2_product(a0, b0);
      NodeRef high = gf2_product(a1, b1);
      high = symmetric_difference(high, gf2_product(a1, b0));
      high = symmetric_difference(high, gf2_product(a0, b1));
      return node(v, low, high);
    });
  }

  /// Members of @p a that have no subset in @p b.
  NodeRef nonsupersets(NodeRef a, NodeRef b) {
    if (a == kEmpty || b == kEmpty) return a;
    if (a == b || contains_empty(b)) return kEmpty;
    if (a == kUnit) return kUnit;
    return cached(Op::NonSup, a, b, [&] {
      const Var va = var(a), vb = var(b);
      if (vb < va) return nonsupersets(a, lo(b));
      if (va < vb) return node(va, nonsupersets(lo(a), b), nonsupersets(hi(a), b));
      const NodeRef lo_part = nonsupersets(lo(a), lo(b));
      const NodeRef hi_part = nonsupersets(nonsupersets(hi(a), lo(b)), hi(b));
      return node(va, lo_part, hi_part);
    });
  }

  NodeRef minimal(NodeRef f) {
    if (is_terminal(f)) return f;
    return cached(Op::Minimal, f, kEmpty, [&] {
      const NodeRef lo_min = minimal(lo(f));
      const NodeRef hi_min = nonsupersets(minimal(hi(f)), lo_min);
      return node(var(f), lo_min, hi_min);
    });
  }

  /// Members not containing @p v.
  NodeRef subset0(NodeRef f, Var v) {
    if (is_terminal(f) || var(f) > v) return f;
    if (var(f) == v) return lo(f);
    return cached(Op::Subset0, f, NodeRef{v}, [&] {
      return node(var(f), subset0(lo(f), v), subset0(hi(f), v));
    });
  }

  /// Members containing @p v, with @p v removed.
  NodeRef subset1(NodeRef f, Var v) {
    if (is_terminal(f) || var(f) > v) return kEmpty;
    if (var(f) == v) return hi(f);
    return cached(Op::Subset1, f, NodeRef{v}, [&] {
      return node(var(f), subset1(lo(f), v), subset1(hi(f), v));
    });
  }

  bool contains_empty(NodeRef f) const {
    while (!is_terminal(f)) f = lo(f);
    return f == kUnit;
  }

  /// Copies @p f from @p source into this store.
  NodeRef import(const Store& source, NodeRef f) {
    std::unordered_map<std::uint32_t, NodeRef> memo;
    return import_rec(source, f, memo);
  }

 private:
  enum class Op : std::uint32_t { Union, Intersect, Difference, SymDiff, Gf2Product, NonSup, Minimal, Subset0, Subset1 };

  struct Node {
    Var var;
    NodeRef lo, hi;
    std::uint32_t min_card;  ///< smallest member size; kNoMember for the empty family
  };
  struct NodeKey {
    Var var;
    std::uint32_t lo, hi;
    friend bool operator==(const NodeKey&, const NodeKey&) = default;
  };
  struct CacheKey {
    Op op;
    std::uint32_t a, b;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
  };
  static std::size_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
      return mix((static_cast<std::uint64_t>(k.lo) << 32 | k.hi) ^ (static_cast<std::uint64_t>(k.var) * 0x9e3779b97f4a7c15ULL));
    }
  };
  struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const {
      return mix((static_cast<std::uint64_t>(k.a) << 32 | k.b) ^ (static_cast<std::uint64_t>(k.op) * 0x9e3779b97f4a7c15ULL));
    }
  };

  std::pair<NodeRef, NodeRef> split(NodeRef f, Var v) const {
    if (!is_terminal(f) && var(f) == v) return {lo(f), hi(f)};
    return {f, kEmpty};
  }

  template <typename Fn>
  NodeRef cached(Op op, NodeRef a, NodeRef b, Fn&& compute) {
    const CacheKey key{op, a.id, b.id};
    if (auto it = cache_.find(key); it != cache_.end()) return NodeRef{it->second};
    const NodeRef result = compute();
    cache_.emplace(key, result.id);
    return result;
  }

  NodeRef import_rec(const Store& source, NodeRef f, std::unordered_map<std::uint32_t, NodeRef>& memo) {
    if (is_terminal(f)) return f;
    if (auto it = memo.find(f.id); it != memo.end()) return it->second;
    const NodeRef r = node(source.var(f), import_rec(source, source.lo(f), memo),
                           import_rec(source, source.hi(f), memo));
    memo.emplace(f.id, r);
    return r;
  }

  std::vector<Node> nodes_;
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> unique_;
  std::unordered_map<CacheKey, std::uint32_t, CacheKeyHash> cache_;
};

// Family members.

inline Family Family::operator|(const Family& o) const {
  check_same_store(o);
  return Family(*store_, store_->unite(root_, o.root_));
}
inline Family Family::operator&(const Family& o) const {
  check_same_store(o);
  return Family(*store_, store_->intersect(root_, o.root_));
}
inline Family Family::operator-(const Family& o) const {
  check_same_store(o);
  return Family(*store_, store_->difference(root_, o.root_));
}
inline Family Family::operator^(const Family& o) const {
  check_same_store(o);
  return Family(*store_, store_->symmetric_difference(root_, o.root_));
}

inline Family Family::minimal() const { return Family(store(), store().minimal(root_)); }

inline Family Family::nonsupersets(const Family& other) const {
  check_same_store(other);
  return Family(*store_, store_->nonsupersets(root_, other.root_));
}

inline std::uint64_t Family::count() const {
  const Store& s = store();
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  std::function<std::uint64_t(NodeRef)> rec = [&](NodeRef f) -> std::uint64_t {
    if (f == kEmpty) return 0;
    if (f == kUnit) return 1;
    if (auto it = memo.find(f.id); it != memo.end()) return it->second;
    const std::uint64_t a = rec(s.lo(f)), b = rec(s.hi(f));
    if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("family cardinality overflows 64 bits");
    memo.emplace(f.id, a + b);
    return a + b;
  };
  return rec(root_);
}

inline bool Family::contains(const VarSet& set) const {
  const Store& s = store();
  const VarSet want = normalized(set);
  NodeRef f = root_;
  std::size_t i = 0;
  while (!Store::is_terminal(f)) {
    const Var v = s.var(f);
    if (i < want.size() && want[i] < v) return false;
    if (i < want.size() && want[i] == v) {
      f = s.hi(f);
      ++i;
    } else {
      f = s.lo(f);
    }
  }
  return f == kUnit && i == want.size();
}

inline VarSet Family::pick_min_cardinality() const {
  if (empty()) throw std::domain_error("cannot pick from an empty family");
  const Store& s = store();
  VarSet out;
  NodeRef f = root_;
  while (!Store::is_terminal(f)) {
    // Taking the current (smallest) variable yields the lexicographically
    // smaller sequence whenever it does not cost cardinality.
    const std::uint32_t via_hi = s.min_cardinality(s.hi(f));
    if (via_hi + 1 <= s.min_cardinality(s.lo(f))) {
      out.push_back(s.var(f));
      f = s.hi(f);
    } else {
      f = s.lo(f);
    }
  }
  return out;
}

inline VarSet Family::pick_first() const {
  if (empty()) throw std::domain_error("cannot pick from an empty family");
  const Store& s = store();
  VarSet out;
  NodeRef f = root_;
  while (!Store::is_terminal(f)) {
    if (s.lo(f) != kEmpty) {
      f = s.lo(f);
    } else {
      out.push_back(s.var(f));
      f = s.hi(f);
    }
  }
  return out;
}

inline std::vector<VarSet> Family::enumerate(std::size_t limit) const {
  const Store& s = store();
  std::vector<VarSet> out;
  VarSet prefix;
  std::function<void(NodeRef, bool)> rec = [&](NodeRef f, bool skip_empty) {
    if (out.size() >= limit || f == kEmpty) return;
    if (f == kUnit) {
      if (!skip_empty) out.push_back(prefix);
      return;
    }
    if (!skip_empty && s.contains_empty(f)) out.push_back(prefix);
    prefix.push_back(s.var(f));
    rec(s.hi(f), false);
    prefix.pop_back();
    rec(s.lo(f), true);
  };
  rec(root_, false);
  return out;
}

inline VarSet Family::support() const {
  const Store& s = store();
  std::unordered_set<std::uint32_t> seen;
  VarSet vars;
  std::vector<NodeRef> stack{root_};
  while (!stack.empty()) {
    const NodeRef f = stack.back();
    stack.pop_back();
    if (Store::is_terminal(f) || !seen.insert(f.id).second) continue;
    vars.push_back(s.var(f));
    stack.push_back(s.lo(f));
    stack.push_back(s.hi(f));
  }
  return normalized(std::move(vars));
}

inline std::size_t Family::max_cardinality() const {
  const Store& s = store();
  std::unordered_map<std::uint32_t, std::size_t> memo;
  std::function<std::size_t(NodeRef)> rec = [&](NodeRef f) -> std::size_t {
    if (Store::is_terminal(f)) return 0;
    if (auto it = memo.find(f.id); it != memo.end()) return it->second;
    const std::size_t r = std::max(rec(s.lo(f)), rec(s.hi(f)) + 1);
    memo.emplace(f.id, r);
    return r;
  };
  return rec(root_);
}

inline std::size_t Family::node_count() const {
  const Store& s = store();
  std::unordered_set<std::uint32_t> seen;
  std::vector<NodeRef> stack{root_};
  while (!stack.empty()) {
    const NodeRef f = stack.back();
    stack.pop_back();
    if (Store::is_terminal(f) || !seen.insert(f.id).second) continue;
    stack.push_back(s.lo(f));
    stack.push_back(s.hi(f));
  }
  return seen.size();
}

inline std::string Family::to_json() const {
  std::string out = "[";
  bool first_set = true;
  for (const auto& set : enumerate()) {
    if (!first_set) out += ",";
    first_set = false;
    out += "[";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(set[i]);
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace zdd
}  // namespace bnclass
