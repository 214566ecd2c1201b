#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace bnclass;
using namespace bnclass::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kModels = BNCLASS_MODELS_DIR;

}  // namespace

TEST(Network, ParsesRulesAndHeader) {
  const auto bn = parse_network("targets, factors\n# comment\na, b & !c\nb, a | c\nc, 1\n");
  ASSERT_EQ(bn.size(), 3U);
  EXPECT_EQ(bn.vars().name(1), "a");
  EXPECT_EQ(to_text(bn.update(1), bn.vars()), "b*c + b");
  EXPECT_EQ(to_text(bn.update(3), bn.vars()), "1");
  EXPECT_EQ(bn.step({true, false, false}), (State{false, true, true}));
}

TEST(Network, ParseErrorsCarryLocation) {
  auto error_at = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_network(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(error_at("a, a\nb a\n"), (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_EQ(error_at("a, a\nb, a + q\n"), (std::pair<std::size_t, std::size_t>{2, 8}));
  EXPECT_EQ(error_at("a, a\na, a\n").first, 2U);
  EXPECT_EQ(error_at("a,\n").first, 1U);
  EXPECT_EQ(error_at("1a, a\n").first, 1U);
}

TEST(Network, SteadyStatesMatchBruteForce) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 2 + round % 11;
    const auto bn = parse_network(random_network_text(n, rng));
    const auto states = enumerate_steady_states(bn);
    ASSERT_EQ(states, enumerate_steady_states_brute_force(bn));
    for (const auto& s : states) ASSERT_EQ(bn.step(s), s);
  }
}

TEST(Network, SteadyStateIdealVanishesExactlyOnFixedPoints) {
  std::mt19937_64 rng(78);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + round % 6;
    const auto bn = parse_network(random_network_text(n, rng));
    const Ideal ideal = steady_state_ideal(bn);
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
      const State p = point_of(m, n);
      const bool zero = std::none_of(ideal.generators().begin(), ideal.generators().end(),
                                     [&](const BoolPoly& g) { return g.eval(p); });
      ASSERT_EQ(zero, bn.step(p) == p);
    }
  }
}

TEST(Network, ToyModel) {
  const auto bn = parse_network(slurp(kModels + "/toy3.bnet"));
  const auto states = enumerate_steady_states(bn);
  EXPECT_EQ(states, (std::vector<State>{{false, false, false}, {false, true, true}, {true, false, true}, {true, true, true}}));
  EXPECT_THROW(enumerate_steady_states(bn, 2), LimitExceeded);
}

TEST(Network, CellFateModels) {
  const auto curated = parse_network(slurp(kModels + "/cellfate.bnet"));
  ASSERT_EQ(curated.size(), 25U);
  const auto states = enumerate_steady_states(curated);
  EXPECT_EQ(states.size(), 27U);
  const auto specs = parse_phenotypes(slurp(kModels + "/cellfate.pheno"), curated);
  const PhenotypeReport report = check_phenotypes(states, specs);
  EXPECT_EQ(report.unassigned, 6U);
  EXPECT_TRUE(report.disjoint());

  const auto verbatim = parse_network(slurp(kModels + "/cellfate_verbatim.bnet"));
  EXPECT_EQ(enumerate_steady_states(verbatim).size(), 16U);
}

TEST(Network, Phenotypes) {
  const auto bn = parse_network("a, a\nb, b\n");
  const auto specs = parse_phenotypes("P : a & b\nQ : !a\n", bn);
  ASSERT_EQ(specs.size(), 2U);
  const auto report = check_phenotypes(bn, specs);
  EXPECT_EQ(report.states.size(), 4U);
  EXPECT_EQ(report.unassigned, 1U);
  EXPECT_TRUE(report.disjoint());
  const auto overlap = check_phenotypes(bn, parse_phenotypes("P : a\nQ : b\n", bn));
  EXPECT_EQ(overlap.overlapping, 1U);
  EXPECT_THROW(parse_phenotypes("P : a\nP : b\n", bn), ParseError);
  EXPECT_THROW(parse_phenotypes("P a\n", bn), ParseError);
  EXPECT_THROW(parse_phenotypes("P : z\n", bn), ParseError);
  EXPECT_TRUE(parse_phenotypes("P : 1\n", bn)[0].degenerate());
}
