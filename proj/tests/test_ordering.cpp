#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace bnclass;
using namespace bnclass::testing;

namespace {

std::vector<LexOrder> all_lex_orders(std::size_t n) {
  VarSet perm = full_universe(n);
  std::vector<LexOrder> out;
  do out.emplace_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST(Ordering, WeightVectorsAgreeWithLexExhaustively) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& ord : all_lex_orders(n)) {
      const WeightVector w = weight_vector(ord);
      for (std::uint32_t a = 0; a < (1U << n); ++a)
        for (std::uint32_t b = 0; b < (1U << n); ++b) {
          const Monomial u(set_of(a)), v(set_of(b));
          ASSERT_EQ(ord.compare(u, v), weight_of(u, w) <=> weight_of(v, w));
        }
    }
  }
}

TEST(Ordering, LexIsTotalAndDecidedByTopVariable) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& ord : all_lex_orders(n)) {
      std::vector<Monomial> ms;
      for (std::uint32_t a = 0; a < (1U << n); ++a) ms.emplace_back(set_of(a));
      std::sort(ms.begin(), ms.end(), [&](const Monomial& u, const Monomial& v) { return ord.compare(u, v) < 0; });
      for (std::size_t i = 0; i + 1 < ms.size(); ++i) ASSERT_TRUE(ord.compare(ms[i], ms[i + 1]) < 0);
      // 1 is the smallest monomial and the most significant variable beats
      // every monomial avoiding it.
      ASSERT_TRUE(ms.front().is_one());
      const Var top = ord.significance().front();
      for (const auto& m : ms)
        if (!m.contains(top)) ASSERT_TRUE(ord.compare(m, Monomial{top}) < 0);
    }
  }
}

TEST(Ordering, GradedComparesDegreeFirst) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& lex : all_lex_orders(n)) {
      const MonomialOrder ord = GradedOrder(lex);
      for (std::uint32_t a = 0; a < (1U << n); ++a)
        for (std::uint32_t b = 0; b < (1U << n); ++b) {
          const Monomial u(set_of(a)), v(set_of(b));
          const auto expected = u.degree() != v.degree() ? u.degree() <=> v.degree() : lex.compare(u, v);
          ASSERT_EQ(ord.compare(u, v), expected);
        }
    }
  }
}

TEST(Ordering, CandidateOrderPutsCandidateLowest) {
  const VarSet u = full_universe(5);
  for (std::uint32_t a = 0; a < 32; ++a) {
    const VarSet cand = set_of(a);
    const LexOrder ord = lex_order_for_candidate(cand, u);
    for (Var x : cand)
      for (Var y = 1; y <= 5; ++y)
        if (!std::binary_search(cand.begin(), cand.end(), y)) ASSERT_TRUE(ord.greater(y, x));
  }
  EXPECT_THROW(lex_order_for_candidate({6}, u), std::invalid_argument);
}

TEST(Ordering, InitialMonomialAndSortedTerms) {
  VarTable vars;
  for (int i = 1; i <= 3; ++i) vars.add("x" + std::to_string(i));
  zdd::Store s;
  const BoolPoly p = parse_poly("x1 + x2*x3 + 1", vars, s);
  EXPECT_EQ(initial_monomial(LexOrder::ascending(3), p), (Monomial{1}));
  EXPECT_EQ(initial_monomial(LexOrder::descending(3), p), (Monomial{2, 3}));
  EXPECT_EQ(initial_monomial(graded_ascending(3), p), (Monomial{2, 3}));
  EXPECT_EQ(to_text(p, vars, LexOrder::ascending(3)), "x1 + x2*x3 + 1");
  EXPECT_THROW(initial_monomial(LexOrder::ascending(3), BoolPoly::zero(s)), std::domain_error);
}

TEST(Ordering, ParseLexOrder) {
  VarTable vars;
  for (const char* n : {"a", "b", "c", "d"}) vars.add(n);
  const LexOrder o = parse_lex_order("c > a", vars);
  EXPECT_EQ(o.significance(), (VarSet{3, 1, 2, 4}));
  EXPECT_THROW(parse_lex_order("c > e", vars), ParseError);
  EXPECT_THROW(parse_lex_order("c > c", vars), ParseError);
  EXPECT_THROW(parse_lex_order("c >", vars), ParseError);
}

TEST(Ordering, ConeOfBasisContainsItsOrder) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + round % 4;
    zdd::Store s;
    Ideal ideal;
    ideal.add(random_poly(s, n, rng));
    ideal.add(random_poly(s, n, rng));
    VarSet perm = full_universe(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    const LexOrder ord(perm);
    const MarkedGB gb = buchberger(ideal, ord);
    const Cone cone = cone_of(gb);
    EXPECT_TRUE(cone_contains(cone, weight_vector(ord), false));
    // Any order inside the strict cone yields the same marked basis.
    for (const auto& other : all_lex_orders(n)) {
      if (!cone_contains(cone, weight_vector(other), true)) continue;
      const MarkedGB g2 = buchberger(ideal, other);
      ASSERT_EQ(g2.size(), gb.size());
      for (const auto& m : gb.members()) {
        const bool found = std::any_of(g2.members().begin(), g2.members().end(), [&](const MarkedPoly& q) {
          return q.marked == m.marked && q.poly == m.poly;
        });
        ASSERT_TRUE(found);
      }
    }
  }
}
