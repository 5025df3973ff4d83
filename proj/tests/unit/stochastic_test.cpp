// Copyright 2026 The qrpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrpd/stochastic.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support/oracle.hpp"

namespace qrpd {
namespace {

const GamePayoffs kG = kStandardGame;

RepeatedStrategy S(const char* name) { return parse_strategy(name); }

TEST(PropagatorTest, DefectorsSwapVacuumAndDoubleDefection) {
  for (double e : {0.0, 0.5, kPi / 4}) {
    const auto t = propagator_matrix(named_action("D"), named_action("D"), Entanglement(e));
    EXPECT_NEAR(t.transition[0][3], 1.0, 1e-12);
    EXPECT_NEAR(t.transition[3][0], 1.0, 1e-12);
  }
}

TEST(PropagatorTest, MatchesDirectProduct) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    const ActionTriple a{u(rng), u(rng) / 2, u(rng), ""}, b{u(rng), u(rng) / 2, u(rng), ""};
    const double e = u(rng) / 4;
    const auto t = propagator_matrix(a, b, Entanglement(e));
    const auto j = oracle::jgate(e);
    const auto k4 = oracle::mul(oracle::dagger(j),
                                oracle::mul(oracle::kron(oracle::action_matrix(a), oracle::action_matrix(b)), j));
    for (int from = 0; from < 4; ++from)
      for (int to = 0; to < 4; ++to) EXPECT_LT(std::abs(t.amplitude[from][to] - k4[to][from]), 1e-12);
  }
}

TEST(MarkovValueTest, Examples) {
  for (double e : {0.0, 0.3, kPi / 4}) {
    const auto dd = markov_value(named_action("D"), named_action("D"), Entanglement(e), kG, DiscountFactor(0.5));
    EXPECT_NEAR(dd.alice, 10.0 / 3, 1e-12);
    const auto cc = markov_value(named_action("C"), named_action("C"), Entanglement(e), kG, DiscountFactor(0.8));
    EXPECT_NEAR(cc.alice, 15.0, 1e-12);
  }
  const auto zero = markov_value(named_action("H"), named_action("Q"), Entanglement(0.3), kG, DiscountFactor(0.0));
  const auto one = one_shot_payoffs(named_action("H"), named_action("Q"), Entanglement(0.3), kG);
  EXPECT_NEAR(zero.alice, one.alice, 1e-12);
  EXPECT_NEAR(zero.bob, one.bob, 1e-12);
}

TEST(CollapseValueTest, AgreesWithMarkovForConstants) {
  for (const char* a : {"ALLH", "ALLQ", "ALLR3", "ALL:1,0.3,2"})
    for (const char* b : {"ALLD", "ALLH", "ALL:2,1,0.5"}) {
      const auto m = markov_value(S(a).action, S(b).action, Entanglement(0.4), kG, DiscountFactor(0.7));
      const auto c = collapse_value(S(a), S(b), Entanglement(0.4), kG, DiscountFactor(0.7));
      EXPECT_NEAR(m.alice, c.alice, 1e-9) << a << b;
      EXPECT_NEAR(m.bob, c.bob, 1e-9) << a << b;
    }
}

TEST(MonteCarloTest, DeterministicTrajectoriesHaveZeroError) {
  const MCConfig cfg{100000, 5, 0};
  const auto dd = monte_carlo_payoff(S("ALLD"), S("ALLD"), Entanglement(0.3), kG, DiscountFactor(0.5), cfg);
  EXPECT_NEAR(dd.mean.alice, 10.0 / 3, 1e-9);
  EXPECT_EQ(dd.stderr_of_mean.alice, 0.0);
  EXPECT_EQ(dd.samples, 100000);
  const auto cd = monte_carlo_payoff(S("CTFT"), S("ALLD"), Entanglement(0.7), kG, DiscountFactor(0.5), cfg);
  EXPECT_NEAR(cd.mean.alice, 10.0 / 3, 1e-9);
  EXPECT_EQ(cd.stderr_of_mean.alice, 0.0);
}

TEST(MonteCarloTest, UniformOutcomeSpread) {
  const long long n = 100000;
  const auto hh = monte_carlo_payoff(S("ALLH"), S("ALLH"), Entanglement(kPi / 4), kG, DiscountFactor(0.0),
                                     MCConfig{n, 42, 0});
  // Rewards 3, 0, 5, 1 with probability 1/4 each.
  const double mean = 2.25;
  const double var = (0.75 * 0.75 + 2.25 * 2.25 + 2.75 * 2.75 + 1.25 * 1.25) / 4;
  const double se = std::sqrt(var / n);
  EXPECT_NEAR(hh.mean.alice, mean, 4 * se);
  EXPECT_NEAR(hh.stderr_of_mean.alice, se, 0.05 * se);
}

TEST(MonteCarloTest, IndependentOfThreadCount) {
  const auto run = [](int threads) {
    return monte_carlo_payoff(S("ALLH"), S("ALLQ"), Entanglement(0.4), kG, DiscountFactor(0.6),
                              MCConfig{20000, 9, threads});
  };
  const auto a = run(1), b = run(3), c = run(8);
  EXPECT_EQ(a.mean.alice, b.mean.alice);
  EXPECT_EQ(a.mean.alice, c.mean.alice);
  EXPECT_EQ(a.stderr_of_mean.bob, c.stderr_of_mean.bob);
}

TEST(MonteCarloTest, SeedChangesSample) {
  const auto a = monte_carlo_payoff(S("ALLH"), S("ALLQ"), Entanglement(0.4), kG, DiscountFactor(0.6), MCConfig{5000, 1, 0});
  const auto b = monte_carlo_payoff(S("ALLH"), S("ALLQ"), Entanglement(0.4), kG, DiscountFactor(0.6), MCConfig{5000, 2, 0});
  EXPECT_NE(a.mean.alice, b.mean.alice);
}

TEST(MonteCarloTest, AgreesWithMarkov) {
  const auto m = markov_value(named_action("H"), named_action("R3"), Entanglement(0.5), kG, DiscountFactor(0.7));
  const auto mc = monte_carlo_payoff(S("ALLH"), S("ALLR3"), Entanglement(0.5), kG, DiscountFactor(0.7),
                                     MCConfig{100000, 17, 0});
  EXPECT_LT(std::abs(mc.mean.alice - m.alice), 3 * mc.stderr_of_mean.alice);
  EXPECT_LT(std::abs(mc.mean.bob - m.bob), 3 * mc.stderr_of_mean.bob);
}

TEST(CompareModelsTest, BasisStateTracesAgree) {
  for (double e : {0.0, 0.4, kPi / 4}) {
    for (auto [a, b] : {std::pair{"ALLD", "ALLD"}, std::pair{"CTFT", "ALLD"}}) {
      const auto r = compare_models(S(a), S(b), Entanglement(e), kG, DiscountFactor(0.5));
      EXPECT_TRUE(r.basis_states_only);
      EXPECT_LT(std::abs(r.difference.alice), 1e-9);
      EXPECT_LT(std::abs(r.difference.bob), 1e-9);
    }
  }
}

TEST(CompareModelsTest, SuperposedTracesAreReported) {
  const auto r = compare_models(S("CTFT"), S("ALLH"), Entanglement(0.5), kG, DiscountFactor(0.5));
  EXPECT_FALSE(r.basis_states_only);
  EXPECT_NEAR(r.difference.alice, r.unitary_value.alice - r.collapse_value.alice, 1e-15);
  const auto t = truncated_payoff(S("CTFT"), S("ALLH"), Entanglement(0.5), kG, DiscountFactor(0.5));
  EXPECT_NEAR(r.unitary_value.alice, t.value.alice, 1e-12);
}

}  // namespace
}  // namespace qrpd
