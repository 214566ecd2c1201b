/// @file search.hpp
/// @brief Inclusion-minimal classifier search over candidate component sets.
///
/// The candidate families P (unchecked) and S (potential solutions) start as
/// the power set of the components. Each round picks A from P, reduces the
/// readout modulo the ideal under a lex order ranking the complement of A
/// above A, and removes the candidates this normal form rules out:
///   P -= supersets-or-equal(V), S -= strict supersets(V) with V = Var(NF),
///   and Backward(S_i) from both for every x_i in the initial monomial, where
///   S_i = Smallereq(V) \ ({x_i} ∪ {x_j not in in(NF) : x_j > x_i}).
/// The minimal members of S are the minimal solution sets.

#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <future>
#include <list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnclass/error.hpp"
#include "bnclass/groebner.hpp"
#include "bnclass/network.hpp"
#include "bnclass/ordering.hpp"
#include "bnclass/variety.hpp"
#include "bnclass/zdd.hpp"

namespace bnclass {

enum class Selection {
  MinCardinality,  ///< smallest candidate, lexicographic tie-break
  First,           ///< ZDD walk preferring lo edges
};

/// How bases are obtained for each candidate order.
enum class BasisEngine {
  Auto,        ///< Points when the variety has at most point_engine_limit points
  Buchberger,  ///< completion from the generators
  Points,      ///< from the enumerated variety (Buchberger-Möller)
};

struct SearchConfig {
  Selection selection = Selection::MinCardinality;
  BasisEngine engine = BasisEngine::Auto;
  std::size_t point_engine_limit = 4096;
  /// Reuse marked bases whose cone strictly contains the new weight vector.
  bool gb_cone_cache = false;
  /// Most recently used cones kept by the cache.
  std::size_t gb_cache_capacity = 64;
  /// Subtract the Backward(S_i) exclusion families. When off, a candidate
  /// whose normal form leaves the candidate only removes its own subsets.
  bool exclusion_sets = true;
  /// 0 = unlimited.
  std::size_t max_iterations = 0;
  /// 0 = unlimited.
  std::chrono::milliseconds time_limit{0};
  /// Seed P and S with the empty set as well.
  bool include_empty_set = false;
};

struct SearchStats {
  std::size_t iterations = 0;
  std::size_t gb_runs = 0;
  std::size_t nf_runs = 0;
  std::size_t cache_hits = 0;
  std::size_t subtractions = 0;
};

struct MinimalClassifier {
  VarSet components;
  BoolPoly classifier;
  std::string text;
};

struct SearchResult {
  std::string phenotype;
  /// Sorted by cardinality, then index sequence.
  std::vector<MinimalClassifier> minimal_sets;
  /// Value of the readout when it is constant on the variety.
  std::optional<bool> constant;
  std::uint64_t raw_candidates = 0;  ///< |S| before minimisation
  bool complete = true;              ///< false when a limit stopped the loop
  SearchStats stats;
  std::string error;  ///< set by run_multiclass when this phenotype failed
};

/// {x | some y in V has y > x} (strict) or y >= x (weak).
inline VarSet smaller_vars(const VarSet& v, const LexOrder& ord, bool strict) {
  std::uint32_t top = 0;
  for (Var x : v) top = std::max(top, ord.rank(x));
  VarSet out;
  if (top == 0) return out;
  for (Var x = 1; x <= ord.size(); ++x)
    if (strict ? ord.rank(x) < top : ord.rank(x) <= top) out.push_back(x);
  return out;
}

/// The sets S_i, one per variable x_i of in(phi), in decreasing order of
/// significance of x_i.
inline std::vector<VarSet> exclusion_sets(const BoolPoly& phi_nf, const LexOrder& ord) {
  if (phi_nf.is_zero()) throw std::domain_error("exclusion sets need a nonzero normal form");
  const Monomial lead = initial_monomial(ord, phi_nf);
  const VarSet below_or_equal = smaller_vars(phi_nf.vars(), ord, false);
  VarSet lead_vars = lead.vars();
  std::sort(lead_vars.begin(), lead_vars.end(), [&](Var a, Var b) { return ord.greater(a, b); });
  std::vector<VarSet> out;
  for (Var xi : lead_vars) {
    VarSet removed{xi};
    for (Var x = 1; x <= ord.size(); ++x)
      if (!lead.contains(x) && ord.greater(x, xi)) removed.push_back(x);
    out.push_back(set_difference(below_or_equal, normalized(removed)));
  }
  return out;
}

/// Thrown by classifier_for_set when no representative lives on the set.
class NotASolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Normal form of @p phi under lex_order_for_candidate(@p a); throws
/// NotASolution if it uses variables outside @p a.
inline BoolPoly classifier_for_set(const BoolPoly& phi, const MarkedGB& gb, const VarSet& a) {
  BoolPoly nf = normal_form(phi, gb);
  if (!is_subset(nf.vars(), normalized(a))) throw NotASolution("the set does not support a classifier");
  return nf;
}

inline BoolPoly classifier_for_set(const BoolPoly& phi, const Ideal& ideal, const VarSet& a, std::size_t n) {
  return classifier_for_set(phi, buchberger(ideal, lex_order_for_candidate(a, full_universe(n))), a);
}

namespace detail {

/// Normal forms under candidate orders, with an optional cone cache of
/// marked bases.
class NormalFormProvider {
 public:
  NormalFormProvider(const Ideal& ideal, std::size_t n, zdd::Store& store, const SearchConfig& config, SearchStats& stats)
      : ideal_(ideal), store_(store), config_(config), stats_(stats) {
    if (config.engine != BasisEngine::Buchberger) {
      const zdd::Family variety = variety_family(ideal, n, store);
      const std::uint64_t count = variety.count();
      if (count == 0) throw UnitIdeal();
      if (config.engine == BasisEngine::Points && count > config.point_engine_limit)
        throw LimitExceeded("variety has " + std::to_string(count) + " points, above the point engine limit");
      if (count <= config.point_engine_limit) points_ = variety.enumerate();
    }
    use_points_ = !points_.empty();
  }

  bool uses_points() const { return use_points_; }

  BoolPoly normal_form(const BoolPoly& f, const LexOrder& ord) {
    ++stats_.nf_runs;
    if (config_.gb_cone_cache) return bnclass::normal_form(f, marked(ord));
    ++stats_.gb_runs;
    if (use_points_) return VarietyBasis(points_, ord, false).normal_form(f);
    const MarkedGB gb = buchberger(ideal_, ord);
    if (gb.is_unit()) throw UnitIdeal();
    return bnclass::normal_form(f, gb);
  }

 private:
  MarkedGB marked(const LexOrder& ord) {
    const WeightVector w = weight_vector(ord);
    for (auto it = cones_.begin(); it != cones_.end(); ++it) {
      if (!cone_contains(it->first, w, true)) continue;
      ++stats_.cache_hits;
      std::vector<MarkedPoly> members = it->second.members();
      std::sort(members.begin(), members.end(),
                [&](const MarkedPoly& a, const MarkedPoly& b) { return ord.compare(a.marked, b.marked) > 0; });
      cones_.splice(cones_.begin(), cones_, it);
      return MarkedGB(ord, std::move(members));
    }
    ++stats_.gb_runs;
    MarkedGB gb = use_points_ ? VarietyBasis(points_, ord).marked_basis(store_) : buchberger(ideal_, ord);
    if (gb.is_unit()) throw UnitIdeal();
    cones_.emplace_front(cone_of(gb), gb);
    if (cones_.size() > config_.gb_cache_capacity) cones_.pop_back();
    return gb;
  }

  const Ideal& ideal_;
  zdd::Store& store_;
  const SearchConfig& config_;
  SearchStats& stats_;
  std::vector<VarSet> points_;
  bool use_points_ = false;
  std::list<std::pair<Cone, MarkedGB>> cones_;
};

}  // namespace detail

/// Minimal component sets (with classifiers) on which @p phi has a
/// representative modulo @p ideal. Throws UnitIdeal for an empty variety.
inline SearchResult compute_solutions(const BoolPoly& phi, const Ideal& ideal, const VarTable& vars,
                                      const SearchConfig& config = {}) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const std::size_t n = vars.size();
  const VarSet universe = vars.universe();

  SearchResult result;
  detail::NormalFormProvider nf_of(ideal, n, phi.store(), config, result.stats);

  // The readout is constant on the variety iff its normal form is constant
  // under any order.
  {
    const LexOrder ord = lex_order_for_candidate({}, universe);
    const BoolPoly nf = nf_of.normal_form(phi, ord);
    if (nf.is_constant()) {
      result.constant = nf.is_one();
      if (config.include_empty_set) result.minimal_sets.push_back({{}, nf, to_text(nf, vars)});
      return result;
    }
  }

  zdd::Store store;
  zdd::Family candidates = store.powerset(universe);
  if (!config.include_empty_set) candidates -= store.unit();
  zdd::Family survivors = candidates;

  BoolPoly current = phi;
  while (!candidates.empty()) {
    if (config.max_iterations != 0 && result.stats.iterations >= config.max_iterations) {
      result.complete = false;
      break;
    }
    if (config.time_limit.count() != 0 && Clock::now() - started > config.time_limit) {
      result.complete = false;
      break;
    }
    ++result.stats.iterations;
    const VarSet picked =
        config.selection == Selection::MinCardinality ? candidates.pick_min_cardinality() : candidates.pick_first();
    const LexOrder ord = lex_order_for_candidate(picked, universe);
    current = nf_of.normal_form(current, ord);
    const VarSet used = current.vars();

    candidates -= store.supersets(used, universe, false);
    survivors -= store.supersets(used, universe, true);
    result.stats.subtractions += 2;
    if (config.exclusion_sets) {
      for (const auto& s : exclusion_sets(current, ord)) {
        const zdd::Family excluded = store.subsets(s);
        candidates -= excluded;
        survivors -= excluded;
        result.stats.subtractions += 2;
      }
    } else if (!is_subset(used, picked)) {
      const zdd::Family excluded = store.subsets(picked);
      candidates -= excluded;
      survivors -= excluded;
      result.stats.subtractions += 2;
    }
  }

  result.raw_candidates = survivors.count();
  if (!result.complete) return result;
  for (const auto& set : survivors.minimal().enumerate()) {
    BoolPoly c = nf_of.normal_form(phi, lex_order_for_candidate(set, universe));
    if (!is_subset(c.vars(), set)) throw NotASolution("minimal candidate does not support a classifier");
    result.minimal_sets.push_back({set, c, to_text(c, vars)});
  }
  std::stable_sort(result.minimal_sets.begin(), result.minimal_sets.end(), [](const auto& a, const auto& b) {
    if (a.components.size() != b.components.size()) return a.components.size() < b.components.size();
    return a.components < b.components;
  });
  return result;
}

/// Result of the exhaustive oracle.
struct BruteForceResult {
  bool constant = false;
  std::vector<VarSet> minimal_sets;  ///< sorted by cardinality, then index sequence
};

/// All inclusion-minimal nonempty I whose projection separates the states
/// with phi = 1 from those with phi = 0. Exhaustive over subsets by
/// ascending cardinality; n must not exceed @p max_n (at most 32).
inline BruteForceResult brute_force_solutions(const BoolPoly& phi, const std::vector<State>& points, std::size_t n,
                                              std::size_t max_n = 16) {
  if (points.empty()) throw std::invalid_argument("brute force needs at least one point");
  if (max_n > 32) max_n = 32;
  if (n > max_n) throw LimitExceeded("brute-force oracle is limited to " + std::to_string(max_n) + " components");
  std::vector<std::uint64_t> pos, neg;
  for (const auto& p : points) {
    if (p.size() != n) throw std::invalid_argument("point has wrong length");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i]) m |= std::uint64_t{1} << i;
    (phi.eval(p) ? pos : neg).push_back(m);
  }
  BruteForceResult r;
  if (pos.empty() || neg.empty()) {
    r.constant = true;
    return r;
  }
  // I separates iff it meets every difference pattern; only inclusion-minimal
  // patterns matter.
  std::vector<std::uint64_t> diffs;
  for (auto a : pos)
    for (auto b : neg) diffs.push_back(a ^ b);
  std::sort(diffs.begin(), diffs.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
  std::vector<std::uint64_t> minimal_diffs;
  for (auto d : diffs)
    if (std::none_of(minimal_diffs.begin(), minimal_diffs.end(), [&](auto m) { return (m & d) == m; })) minimal_diffs.push_back(d);

  std::vector<std::uint64_t> found;
  for (std::size_t k = 1; k <= n; ++k) {
    // Gosper's hack over k-subsets of n bits, ascending numeric order.
    std::uint64_t set = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    std::vector<std::uint64_t> level;
    while (set < limit) {
      const bool covered = std::any_of(found.begin(), found.end(), [&](auto s) { return (s & set) == s; });
      if (!covered && std::all_of(minimal_diffs.begin(), minimal_diffs.end(), [&](auto d) { return (d & set) != 0; }))
        level.push_back(set);
      const std::uint64_t c = set & (~set + 1);
      const std::uint64_t r2 = set + c;
      set = (((r2 ^ set) >> 2) / c) | r2;
    }
    found.insert(found.end(), level.begin(), level.end());
  }
  for (auto s : found) {
    VarSet vs;
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1U) vs.push_back(static_cast<Var>(i + 1));
    r.minimal_sets.push_back(std::move(vs));
  }
  std::sort(r.minimal_sets.begin(), r.minimal_sets.end(), [](const VarSet& a, const VarSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return r;
}

struct MulticlassResult {
  PhenotypeReport phenotypes;  ///< disjointness check on the steady states
  std::vector<SearchResult> results;
};

/// One search per phenotype against the steady-state ideal. Failures are
/// recorded per phenotype. With @p threads > 1, phenotypes run concurrently,
/// each on a cloned store.
inline MulticlassResult run_multiclass(const BooleanNetwork& bn, const std::vector<PhenotypeSpec>& specs,
                                       const SearchConfig& config = {}, unsigned threads = 1) {
  MulticlassResult out;
  out.phenotypes = check_phenotypes(bn, specs);

  auto run_one = [&config](const BooleanNetwork& net, const std::string& name, const BoolPoly& readout) {
    SearchResult r;
    try {
      r = compute_solutions(readout, steady_state_ideal(net), net.vars(), config);
    } catch (const std::exception& e) {
      r = SearchResult{};
      r.error = e.what();
      r.complete = false;
    }
    r.phenotype = name;
    return r;
  };

  if (threads <= 1 || specs.size() <= 1) {
    for (const auto& spec : specs) out.results.push_back(run_one(bn, spec.name, spec.readout));
    return out;
  }
  std::vector<BooleanNetwork> clones;
  std::vector<BoolPoly> readouts;
  for (const auto& spec : specs) {
    clones.push_back(bn.clone());
    readouts.push_back(bn.transfer(spec.readout, clones.back()));
  }
  std::vector<SearchResult> results(specs.size());
  for (std::size_t start = 0; start < specs.size(); start += threads) {
    std::vector<std::future<SearchResult>> batch;
    for (std::size_t i = start; i < std::min(specs.size(), start + threads); ++i)
      batch.push_back(std::async(std::launch::async, run_one, std::cref(clones[i]), specs[i].name, readouts[i]));
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }
  // Classifier polynomials live in the clones' stores; rebind them to bn.
  for (std::size_t i = 0; i < results.size(); ++i)
    for (auto& mc : results[i].minimal_sets) mc.classifier = clones[i].transfer(mc.classifier, bn);
  out.results = std::move(results);
  return out;
}

}  // namespace bnclass
