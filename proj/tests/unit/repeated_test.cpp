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

#include "qrpd/repeated.hpp"

#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "qrpd/error.hpp"
#include "support/oracle.hpp"

namespace qrpd {
namespace {

constexpr double kTol = 1e-9;
const GamePayoffs kG = kStandardGame;

RepeatedStrategy S(const char* name) { return parse_strategy(name); }

TEST(ParseStrategyTest, Presets) {
  EXPECT_EQ(S("ALLC").kind, RepeatedStrategy::Kind::kConstant);
  EXPECT_EQ(S("ALLR3").action, named_action("R3"));
  EXPECT_EQ(S("CTFT").kind, RepeatedStrategy::Kind::kTitForTat);
  EXPECT_EQ(S("QTFT").action, named_action("Q"));
  EXPECT_EQ(S("TFT").action, named_action("C"));
  EXPECT_EQ(S("ALL:pi,0,0").action, named_action("Q"));
  EXPECT_EQ(S("TFT:D").kind, RepeatedStrategy::Kind::kTitForTat);
  EXPECT_EQ(S("TFT:D").action, named_action("D"));
  EXPECT_EQ(S("ALL:1,0,0").label(), "ALL:" + parse_action("1,0,0").label());
}

TEST(ParseStrategyTest, Errors) {
  EXPECT_THROW(S("ALLX"), LookupError);
  EXPECT_THROW(S(""), LookupError);
  EXPECT_THROW(S("ALL:1,2"), ParameterError);
}

TEST(DiscountFactorTest, Domain) {
  EXPECT_THROW(DiscountFactor(1.0), DomainError);
  EXPECT_THROW(DiscountFactor(-0.1), DomainError);
  EXPECT_THROW(DiscountFactor(NAN), DomainError);
  EXPECT_NO_THROW(DiscountFactor(0.0));
  EXPECT_NO_THROW(DiscountFactor(0.999));
}

TEST(NextActionTest, Examples) {
  EXPECT_EQ(next_action(S("CTFT"), 1, std::nullopt), named_action("C"));
  EXPECT_EQ(next_action(S("CTFT"), 5, named_action("D")), named_action("D"));
  EXPECT_EQ(next_action(S("ALLH"), 7, named_action("Q")), named_action("H"));
  EXPECT_EQ(next_action(S("ALLH"), 7, std::nullopt), named_action("H"));
  EXPECT_THROW(next_action(S("CTFT"), 2, std::nullopt), UsageError);
  EXPECT_THROW(next_action(S("ALLC"), 0, std::nullopt), UsageError);
}

TEST(TraceTest, TitForTatCopies) {
  const auto t = trace(S("CTFT"), S("ALLD"), Entanglement(0.4), kG, 4);
  ASSERT_EQ(t.rounds.size(), 4u);
  EXPECT_EQ(t.rounds[0].alice_action, named_action("C"));
  EXPECT_EQ(t.rounds[1].alice_action, named_action("D"));
  EXPECT_NEAR(t.rounds[0].probabilities[basis_index(0, 1)], 1.0, 1e-12);
  EXPECT_NEAR(t.rounds[1].probabilities[basis_index(1, 0)], 1.0, 1e-12);
  EXPECT_NEAR(t.rounds[0].payoff.alice, 0.0, 1e-12);
  EXPECT_THROW(trace(S("ALLC"), S("ALLC"), Entanglement(0), kG, kMaxRounds + 1), ResourceError);
}

TEST(TraceTest, MatchesOracle) {
  for (const char* a : {"ALLC", "CTFT", "QTFT", "ALLH", "ALLR3", "ALL:1,0.4,2"})
    for (const char* b : {"ALLD", "ALLQ", "ALLH", "TFT:H", "ALL:0.3,1,1"}) {
      const auto t = trace(S(a), S(b), Entanglement(0.37), kG, 9);
      const auto want = oracle::round_probs(S(a), S(b), 0.37, 9);
      for (size_t m = 0; m < 9; ++m)
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(t.rounds[m].probabilities[i], want[m][i], 1e-12) << a << b << m;
    }
}

TEST(TruncatedPayoffTest, Examples) {
  const auto cc = truncated_payoff(S("ALLC"), S("ALLC"), Entanglement(0.2), kG, DiscountFactor(0.5));
  EXPECT_NEAR(cc.value.alice, 6.0, kTol);
  const auto cd = truncated_payoff(S("CTFT"), S("ALLD"), Entanglement(0.7), kG, DiscountFactor(0.5));
  EXPECT_NEAR(cd.value.alice, 10.0 / 3, kTol);
  EXPECT_NEAR(cd.value.bob, 20.0 / 3, kTol);
  const auto qd = truncated_payoff(S("QTFT"), S("ALLD"), Entanglement(kPi / 4), kG, DiscountFactor(0.5));
  EXPECT_NEAR(qd.value.alice, 20.0 / 3, kTol);
}

TEST(TruncatedPayoffTest, RoundCountIsMinimal) {
  const double w = 0.5, tol = 1e-12;
  const auto r = truncated_payoff(S("ALLC"), S("ALLD"), Entanglement(0.1), kG, DiscountFactor(w), tol);
  const long long m = r.rounds_used;
  EXPECT_LT(std::pow(w, m) * 5 / (1 - w), tol);
  EXPECT_GE(std::pow(w, m - 1) * 5 / (1 - w), tol);
  EXPECT_EQ(truncated_payoff(S("ALLC"), S("ALLD"), Entanglement(0.1), kG, DiscountFactor(0.0)).rounds_used, 1);
}

TEST(TruncatedPayoffTest, ZeroDiscountIsOneShot) {
  for (const char* a : {"ALLH", "CTFT", "ALLR3"}) {
    const auto t = truncated_payoff(S(a), S("ALLQ"), Entanglement(0.3), kG, DiscountFactor(0.0));
    const auto one = one_shot_payoffs(S(a).action, named_action("Q"), Entanglement(0.3), kG);
    EXPECT_NEAR(t.value.alice, one.alice, 1e-12);
    EXPECT_NEAR(t.value.bob, one.bob, 1e-12);
  }
}

TEST(TruncatedPayoffTest, MatchesDirectSum) {
  const auto want = oracle::discounted(S("CTFT"), S("ALLH"), 0.5, kG, 0.7, 200);
  const auto got = truncated_payoff(S("CTFT"), S("ALLH"), Entanglement(0.5), kG, DiscountFactor(0.7));
  EXPECT_NEAR(got.value.alice, want.alice, kTol);
  EXPECT_NEAR(got.value.bob, want.bob, kTol);
}

TEST(TruncatedPayoffTest, RejectsBadTolerance) {
  EXPECT_THROW(truncated_payoff(S("ALLC"), S("ALLC"), Entanglement(0), kG, DiscountFactor(0.5), 0.0), UsageError);
}

TEST(TruncatedPayoffTest, SymmetricPairsPayEqually) {
  for (const char* a : {"ALLH", "ALLR3", "CTFT", "QTFT", "ALL:1,0.5,0.2"}) {
    const auto t = truncated_payoff(S(a), S(a), Entanglement(0.6), kG, DiscountFactor(0.8));
    EXPECT_NEAR(t.value.alice, t.value.bob, 1e-12) << a;
  }
}

TEST(TruncatedPayoffTest, EpsilonSymmetry) {
  for (const char* a : {"CTFT", "QTFT", "ALLH", "ALLR3"})
    for (const char* b : {"ALLD", "ALLH", "ALL:1,0.5,0.2"}) {
      const auto x = truncated_payoff(S(a), S(b), Entanglement(0.3), kG, DiscountFactor(0.7));
      const auto y = truncated_payoff(S(a), S(b), Entanglement(kPi / 2 - 0.3), kG, DiscountFactor(0.7));
      EXPECT_NEAR(x.value.alice, y.value.alice, 1e-12) << a << b;
      EXPECT_NEAR(x.value.bob, y.value.bob, 1e-12) << a << b;
    }
}

TEST(ClassicalProtocolTest, TftAgainstDefector) {
  const auto t = truncated_payoff(S("TFT"), S("ALLD"), Entanglement(0), kG, DiscountFactor(0.6), 1e-12,
                                  Protocol::kClassical);
  EXPECT_NEAR(t.value.alice, 0 + 0.6 * 1 / 0.4, kTol);
  EXPECT_NEAR(t.value.bob, 5 + 0.6 * 1 / 0.4, kTol);
}

TEST(DetectPeriodTest, ConstantBenchmarkPairsRecurEveryTwoRounds) {
  const char* const names[] = {"ALLC", "ALLD", "ALLQ", "ALLH"};
  for (double e : {0.0, 0.3, kPi / 4})
    for (const char* a : names)
      for (const char* b : names) {
        const auto p = detect_period(S(a), S(b), Entanglement(e));
        ASSERT_TRUE(p.periodic) << a << b;
        EXPECT_EQ(p.preperiod, 0);
        EXPECT_EQ(2 % p.period, 0) << a << b << " period " << p.period;
      }
  EXPECT_EQ(detect_period(S("ALLD"), S("ALLD"), Entanglement(0.3)).period, 2);
  EXPECT_EQ(detect_period(S("ALLC"), S("ALLC"), Entanglement(0.3)).period, 1);
}

TEST(DetectPeriodTest, RotationCombinations) {
  EXPECT_EQ(detect_period(S("ALLR3"), S("ALLR3"), Entanglement(0.3)).period, 3);
  const auto mixed = detect_period(S("ALL:pi,pi/2,0"), S("ALL:2pi/3,pi/2,0"), Entanglement(0.3));
  ASSERT_TRUE(mixed.periodic);
  EXPECT_EQ(mixed.period, 6);
  const auto r = detect_period(S("ALLR3"), S("ALLR3"), Entanglement(0.3));
  EXPECT_TRUE(r.state_recurrent);
}

TEST(DetectPeriodTest, IrrationalRotationIsAperiodic) {
  const auto start = std::chrono::steady_clock::now();
  const auto p = detect_period(S("ALL:1,0.7,0"), S("ALL:1,0.7,0"), Entanglement(0.3), 10000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_FALSE(p.periodic);
  EXPECT_EQ(p.searched, 10000);
  EXPECT_LT(secs, 5.0);
  EXPECT_THROW(payoff_cycle(S("ALL:1,0.7,0"), S("ALL:1,0.7,0"), Entanglement(0.3), kG, 200), UnsupportedError);
}

TEST(DetectPeriodTest, TitForTatHasPreperiod) {
  // QTFT opens with Q then copies D: the cycle starts after round 1.
  const auto p = detect_period(S("QTFT"), S("ALLD"), Entanglement(0.3));
  ASSERT_TRUE(p.periodic);
  EXPECT_EQ(p.period, 2);
}

TEST(PeriodicPayoffTest, Examples) {
  const auto dd = periodic_payoff(S("ALLD"), S("ALLD"), Entanglement(0.4), kG, DiscountFactor(0.5));
  EXPECT_NEAR(dd.alice, 10.0 / 3, kTol);
  const auto hh = periodic_payoff(S("ALLH"), S("ALLH"), Entanglement(0.4), kG, DiscountFactor(0.5));
  EXPECT_NEAR(hh.alice, 5.0, kTol);
  // Round 3 of C against R3 returns to |00>, giving 15/7 (not 1.5, which
  // drops a factor 4 on the third-round term).
  const auto cr = periodic_payoff(S("ALLC"), S("ALLR3"), Entanglement(0.4), kG, DiscountFactor(0.5));
  EXPECT_NEAR(cr.alice, oracle::corrected_allc_allr3(kG, 0.5)[0][1], kTol);
  EXPECT_NEAR(cr.alice, 15.0 / 7, kTol);
}

TEST(PeriodicPayoffTest, AgreesWithTruncation) {
  for (const char* a : {"CTFT", "QTFT", "ALLH", "ALLR3", "ALL:pi/2,0.3,0"})
    for (const char* b : {"ALLD", "ALLQ", "ALLR3", "TFT:H"})
      for (double w : {0.1, 0.5, 0.9}) {
        const auto p = periodic_payoff(S(a), S(b), Entanglement(0.45), kG, DiscountFactor(w));
        const auto t = truncated_payoff(S(a), S(b), Entanglement(0.45), kG, DiscountFactor(w));
        EXPECT_NEAR(p.alice, t.value.alice, kTol) << a << b << w;
        EXPECT_NEAR(p.bob, t.value.bob, kTol) << a << b << w;
      }
}

TEST(DiscountedSumTest, Formula) {
  PayoffCycle c;
  c.period.periodic = true;
  c.period.preperiod = 1;
  c.period.period = 2;
  c.rounds = {{1, 0}, {2, 0}, {3, 0}};
  const double w = 0.5;
  EXPECT_NEAR(discounted_sum(c, DiscountFactor(w)).alice, 1 + w * (2 + 3 * w) / (1 - w * w), 1e-14);
}

}  // namespace
}  // namespace qrpd
