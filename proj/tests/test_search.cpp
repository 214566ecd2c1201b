#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace bnclass;
using namespace bnclass::testing;

namespace {

std::vector<VarSet> sets_of(const SearchResult& r) {
  std::vector<VarSet> out;
  for (const auto& m : r.minimal_sets) out.push_back(m.components);
  return out;
}

}  // namespace

TEST(Search, SmallerVars) {
  const LexOrder ord = LexOrder::descending(4);
  EXPECT_EQ(smaller_vars({4, 2}, ord, false), (VarSet{1, 2, 3, 4}));
  EXPECT_EQ(smaller_vars({4, 2}, ord, true), (VarSet{1, 2, 3}));
  EXPECT_EQ(smaller_vars({2}, ord, false), (VarSet{1, 2}));
  EXPECT_TRUE(smaller_vars({}, ord, false).empty());
}

TEST(Search, ExclusionSetsOfTheWorkedExample) {
  zdd::Store s;
  const BoolPoly phi = BoolPoly::monomial(s, Monomial{2, 4});
  const auto sets = exclusion_sets(phi, LexOrder::descending(4));
  EXPECT_EQ(sets, (std::vector<VarSet>{{1, 2, 3}, {1, 4}}));
  EXPECT_EQ(s.subsets(sets[0]).count(), 8U);
  EXPECT_EQ(s.subsets(sets[1]).count(), 4U);
  EXPECT_THROW(exclusion_sets(BoolPoly::zero(s), LexOrder::descending(4)), std::domain_error);
}

TEST(Search, OracleAgreementAcrossModes) {
  std::mt19937_64 rng(4242);
  int checked = 0;
  for (int round = 0; checked < 60 && round < 1000; ++round) {
    const std::size_t n = 3 + round % 5;
    const auto bn = parse_network(random_network_text(n, rng));
    const auto states = enumerate_steady_states(bn);
    if (states.size() < 2) continue;
    const BoolPoly phi = random_poly(bn.store(), n, rng, 4, 3);
    const auto oracle = brute_force_solutions(phi, states, n);
    const Ideal ideal = steady_state_ideal(bn);
    SearchConfig base;
    const auto r = compute_solutions(phi, ideal, bn.vars(), base);
    ASSERT_EQ(r.constant.has_value(), oracle.constant);
    if (oracle.constant) continue;
    ++checked;
    ASSERT_EQ(sets_of(r), oracle.minimal_sets);
    for (const auto& m : r.minimal_sets) {
      ASSERT_TRUE(is_subset(m.classifier.vars(), m.components));
      for (const auto& s : states) ASSERT_EQ(m.classifier.eval(s), phi.eval(s));
      ASSERT_LE(degree_lower_bound(phi, ideal, n), m.components.size());
    }
    std::vector<SearchConfig> variants(5);
    variants[0].selection = Selection::First;
    variants[1].exclusion_sets = false;
    variants[2].gb_cone_cache = true;
    variants[3].engine = BasisEngine::Buchberger;
    variants[4].engine = BasisEngine::Buchberger;
    variants[4].gb_cone_cache = true;
    for (const auto& cfg : variants) {
      const auto v = compute_solutions(phi, ideal, bn.vars(), cfg);
      ASSERT_EQ(sets_of(v), oracle.minimal_sets);
      for (std::size_t i = 0; i < v.minimal_sets.size(); ++i) ASSERT_EQ(v.minimal_sets[i].text, r.minimal_sets[i].text);
    }
  }
  EXPECT_EQ(checked, 60);
}

TEST(Search, ClassifierForSet) {
  const auto bn = parse_network("x1, x1\nx2, x2\nx3, x1 | x2\n");
  const Ideal ideal = steady_state_ideal(bn);
  const BoolPoly phi = parse_poly("x3", bn.vars(), bn.store());
  EXPECT_EQ(to_text(classifier_for_set(phi, ideal, {1, 2}, 3), bn.vars()), "x1*x2 + x1 + x2");
  EXPECT_EQ(to_text(classifier_for_set(phi, ideal, {3}, 3), bn.vars()), "x3");
  EXPECT_THROW(classifier_for_set(phi, ideal, {1}, 3), NotASolution);
  const auto r = compute_solutions(phi, ideal, bn.vars());
  EXPECT_EQ(sets_of(r), (std::vector<VarSet>{{3}, {1, 2}}));
}

TEST(Search, ConstantReadouts) {
  const auto bn = parse_network("a, a\nb, a\n");
  const BoolPoly phi = parse_poly("a + b", bn.vars(), bn.store());
  const auto r = compute_solutions(phi, steady_state_ideal(bn), bn.vars());
  ASSERT_TRUE(r.constant.has_value());
  EXPECT_FALSE(*r.constant);
  EXPECT_TRUE(r.minimal_sets.empty());
  SearchConfig with_empty;
  with_empty.include_empty_set = true;
  const auto e = compute_solutions(parse_poly("1 + a + b", bn.vars(), bn.store()), steady_state_ideal(bn), bn.vars(), with_empty);
  ASSERT_EQ(e.minimal_sets.size(), 1U);
  EXPECT_TRUE(e.minimal_sets[0].components.empty());
  EXPECT_EQ(e.minimal_sets[0].text, "1");
}

TEST(Search, UnitIdealAndLimits) {
  const auto none = parse_network("a, !a\n");
  const BoolPoly phi = parse_poly("a", none.vars(), none.store());
  EXPECT_THROW(compute_solutions(phi, steady_state_ideal(none), none.vars()), UnitIdeal);
  SearchConfig bb;
  bb.engine = BasisEngine::Buchberger;
  EXPECT_THROW(compute_solutions(phi, steady_state_ideal(none), none.vars(), bb), UnitIdeal);

  const auto bn = parse_network("a, a\nb, b\nc, c\nd, d\n");
  SearchConfig limited;
  limited.max_iterations = 1;
  const auto r = compute_solutions(parse_poly("a*b + c*d", bn.vars(), bn.store()), steady_state_ideal(bn), bn.vars(), limited);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.stats.iterations, 1U);
  SearchConfig points;
  points.engine = BasisEngine::Points;
  points.point_engine_limit = 4;
  EXPECT_THROW(compute_solutions(parse_poly("a", bn.vars(), bn.store()), steady_state_ideal(bn), bn.vars(), points),
               LimitExceeded);
}

TEST(Search, BruteForceOracle) {
  zdd::Store s;
  const BoolPoly phi = BoolPoly::variable(s, 1);
  const std::vector<State> pts = {{false, false, false}, {true, true, false}, {true, false, true}};
  // x1 separates; so does {x2, x3}.
  const auto r = brute_force_solutions(phi, pts, 3);
  EXPECT_FALSE(r.constant);
  EXPECT_EQ(r.minimal_sets, (std::vector<VarSet>{{1}, {2, 3}}));
  EXPECT_TRUE(brute_force_solutions(phi, {{false, true, true}}, 3).constant);
  EXPECT_THROW(brute_force_solutions(phi, {}, 3), std::invalid_argument);
  EXPECT_THROW(brute_force_solutions(phi, pts, 3, 2), LimitExceeded);
}

TEST(Search, MulticlassThreadsMatchSequential) {
  std::mt19937_64 rng(99);
  const auto bn = parse_network(random_network_text(7, rng) );
  std::vector<PhenotypeSpec> specs;
  for (int k = 0; k < 4; ++k) specs.push_back({"P" + std::to_string(k), random_poly(bn.store(), 7, rng, 4, 2)});
  const auto seq = run_multiclass(bn, specs, {}, 1);
  const auto par = run_multiclass(bn, specs, {}, 3);
  ASSERT_EQ(seq.results.size(), par.results.size());
  for (std::size_t i = 0; i < seq.results.size(); ++i) {
    EXPECT_EQ(seq.results[i].phenotype, par.results[i].phenotype);
    EXPECT_EQ(seq.results[i].error, par.results[i].error);
    EXPECT_EQ(seq.results[i].constant, par.results[i].constant);
    ASSERT_EQ(seq.results[i].minimal_sets.size(), par.results[i].minimal_sets.size());
    for (std::size_t j = 0; j < seq.results[i].minimal_sets.size(); ++j) {
      EXPECT_EQ(seq.results[i].minimal_sets[j].text, par.results[i].minimal_sets[j].text);
      EXPECT_TRUE(seq.results[i].minimal_sets[j].classifier == par.results[i].minimal_sets[j].classifier);
    }
  }
}
