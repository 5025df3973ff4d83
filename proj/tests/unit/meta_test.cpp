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

#include "qrpd/meta.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qrpd/error.hpp"
#include "support/oracle.hpp"

namespace qrpd {
namespace {

constexpr double kTol = 1e-9;
const GamePayoffs kG = kStandardGame;

void ExpectMatrixNear(const PayoffMatrix2& m, const std::array<std::array<double, 2>, 2>& want, double tol,
                      const std::string& what) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) EXPECT_NEAR(m(r, c), want[r][c], tol) << what << " (" << r << "," << c << ")";
}

TEST(ParsePairTest, Splitting) {
  const MetaPair p = parse_pair("CTFT-ALLD");
  EXPECT_EQ(p.first.label(), "CTFT");
  EXPECT_EQ(p.second.label(), "ALLD");
  EXPECT_EQ(p.protocol, Protocol::kAccumulated);
  EXPECT_EQ(parse_pair("TFT-ALLD").protocol, Protocol::kClassical);
  EXPECT_EQ(parse_pair("ALLD-TFT").protocol, Protocol::kClassical);
  const MetaPair raw = parse_pair("ALL:-pi/2,1,0-TFT:D");
  EXPECT_EQ(raw.first.action.theta, -kPi / 2);
  EXPECT_EQ(raw.second.kind, RepeatedStrategy::Kind::kTitForTat);
  EXPECT_THROW(parse_pair("CTFT"), LookupError);
  EXPECT_THROW(parse_pair("CTFT-XYZ"), LookupError);
}

TEST(TabulatedTest, Lookup) {
  EXPECT_EQ(all_tabulated_pairs().size(), 12u);
  const auto m = find_tabulated(parse_pair("ALLD-CTFT"));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->pair, TabulatedPair::kCtftAlld);
  EXPECT_TRUE(m->swapped);
  EXPECT_FALSE(find_tabulated(parse_pair("ALLH-ALLD")).has_value());
  // TFT names the classical pair only.
  EXPECT_EQ(find_tabulated(parse_pair("TFT-ALLD"))->pair, TabulatedPair::kClassicalTftAlld);
  EXPECT_THROW(closed_form_meta_matrix(parse_pair("ALLH-ALLD"), DiscountFactor(0.5), Entanglement(0.1), kG),
               UnsupportedError);
}

TEST(ClosedFormTest, CtftAlldExample) {
  const auto m = closed_form_meta_matrix(parse_pair("CTFT-ALLD"), DiscountFactor(0.8), Entanglement(0.3), kG);
  ExpectMatrixNear(m, {{{15, 100.0 / 9}, {125.0 / 9, 85.0 / 9}}}, 1e-12, "CTFT-ALLD");
  const auto e = engine_meta_matrix(parse_pair("CTFT-ALLD"), DiscountFactor(0.8), Entanglement(0.3), kG);
  ExpectMatrixNear(e, m.a, kTol, "engine");
}

TEST(ClosedFormTest, SwappedOrder) {
  const auto a = closed_form_meta_matrix(parse_pair("CTFT-ALLH"), DiscountFactor(0.4), Entanglement(0.3), kG);
  const auto b = closed_form_meta_matrix(parse_pair("ALLH-CTFT"), DiscountFactor(0.4), Entanglement(0.3), kG);
  EXPECT_EQ(b.a, a.swapped().a);
  EXPECT_EQ(b.labels[0], "ALLH");
}

TEST(ClosedFormTest, QtftAllhIsEpsilonIndependent) {
  const auto a = closed_form_meta_matrix(parse_pair("QTFT-ALLH"), DiscountFactor(0.6), Entanglement(0.0), kG);
  const auto b = closed_form_meta_matrix(parse_pair("QTFT-ALLH"), DiscountFactor(0.6), Entanglement(0.7), kG);
  ExpectMatrixNear(a, b.a, 1e-12, "closed");
  const auto e = engine_meta_matrix(parse_pair("QTFT-ALLH"), DiscountFactor(0.6), Entanglement(0.7), kG);
  ExpectMatrixNear(e, b.a, kTol, "engine");
}

class ConsistentPairTest : public ::testing::TestWithParam<TabulatedPair> {};

TEST_P(ConsistentPairTest, EngineMatchesClosedForm) {
  const TabulatedPair tp = GetParam();
  const MetaPair pair = tabulated_meta_pair(tp);
  for (double w : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double e : {0.0, 0.2, kPi / 8, 0.5, kPi / 4}) {
      const auto cf = closed_form_meta_matrix(tp, DiscountFactor(w), Entanglement(e), kG);
      const auto en = engine_meta_matrix(pair, DiscountFactor(w), Entanglement(e), kG);
      ExpectMatrixNear(en, cf.a, kTol, pair.label());
    }
}

INSTANTIATE_TEST_SUITE_P(Published, ConsistentPairTest,
                         ::testing::Values(TabulatedPair::kClassicalTftAlld, TabulatedPair::kCtftAlld,
                                           TabulatedPair::kCtftAllh, TabulatedPair::kQtftAllc,
                                           TabulatedPair::kQtftAlld, TabulatedPair::kQtftAllh,
                                           TabulatedPair::kAllcAllq, TabulatedPair::kAlldAllq,
                                           TabulatedPair::kAllcAllh));

TEST(ErratumTest, ConsistencyFlags) {
  int inconsistent = 0;
  for (TabulatedPair p : all_tabulated_pairs()) inconsistent += published_form_consistent(p) ? 0 : 1;
  EXPECT_EQ(inconsistent, 3);
  EXPECT_FALSE(published_form_consistent(TabulatedPair::kCtftAllq));
  EXPECT_FALSE(published_form_consistent(TabulatedPair::kAllcAllr3));
  EXPECT_FALSE(published_form_consistent(TabulatedPair::kAlldAllr3));
}

TEST(ErratumTest, EngineMatchesCorrectedForms) {
  for (double w : {0.1, 0.5, 0.9})
    for (double e : {0.0, 0.2, kPi / 4}) {
      ExpectMatrixNear(engine_meta_matrix(parse_pair("CTFT-ALLQ"), DiscountFactor(w), Entanglement(e), kG),
                       oracle::corrected_ctft_allq(kG, w, e), kTol, "CTFT-ALLQ");
      ExpectMatrixNear(engine_meta_matrix(parse_pair("ALLC-ALLR3"), DiscountFactor(w), Entanglement(e), kG),
                       oracle::corrected_allc_allr3(kG, w), kTol, "ALLC-ALLR3");
      ExpectMatrixNear(engine_meta_matrix(parse_pair("ALLD-ALLR3"), DiscountFactor(w), Entanglement(e), kG),
                       oracle::corrected_alld_allr3(kG, w), kTol, "ALLD-ALLR3");
    }
}

TEST(ErratumTest, PublishedFormsDifferFromEngine) {
  const DiscountFactor w(0.6);
  const Entanglement e(0.3);
  for (TabulatedPair p : {TabulatedPair::kCtftAllq, TabulatedPair::kAllcAllr3, TabulatedPair::kAlldAllr3}) {
    const auto cf = closed_form_meta_matrix(p, w, e, kG);
    const auto en = engine_meta_matrix(tabulated_meta_pair(p), w, e, kG);
    double diff = 0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) diff = std::max(diff, std::abs(cf(r, c) - en(r, c)));
    EXPECT_GT(diff, 0.1);
  }
}

TEST(EngineMetaTest, CtftAndQtftCoincideWithoutEntanglement) {
  for (double w : {0.2, 0.7}) {
    const auto c = engine_meta_matrix(parse_pair("CTFT-ALLD"), DiscountFactor(w), Entanglement(0), kG);
    const auto q = engine_meta_matrix(parse_pair("QTFT-ALLD"), DiscountFactor(w), Entanglement(0), kG);
    ExpectMatrixNear(c, q.a, 1e-12, "eps=0");
  }
}

TEST(EngineMetaTest, ClassicalPairDiffersFromQuantumLimit) {
  const auto cl = engine_meta_matrix(parse_pair("TFT-ALLD"), DiscountFactor(0.6), Entanglement(0), kG);
  const auto qu = engine_meta_matrix(parse_pair("CTFT-ALLD"), DiscountFactor(0.6), Entanglement(0), kG);
  EXPECT_GT(std::abs(cl(1, 1) - qu(1, 1)), 0.1);
}

TEST(EngineMetaTest, AperiodicPairFallsBackToTruncation) {
  const MetaPair p = parse_pair("ALL:1,0.7,0-ALLD");
  const auto m = engine_meta_matrix(p, DiscountFactor(0.5), Entanglement(0.3), kG);
  const auto t = truncated_payoff(p.first, p.first, Entanglement(0.3), kG, DiscountFactor(0.5));
  EXPECT_NEAR(m(0, 0), t.value.alice, kTol);
}

TEST(MetaCyclesTest, ReusableAcrossDiscounts) {
  const MetaPair p = parse_pair("ALLH-ALLD");
  const MetaCycles cyc(p, Entanglement(0.35), kG);
  for (double w : {0.0, 0.4, 0.95}) {
    const auto a = cyc.matrix(DiscountFactor(w));
    ExpectMatrixNear(a, engine_meta_matrix(p, DiscountFactor(w), Entanglement(0.35), kG).a, 1e-12, "cycles");
    const auto d = oracle::discounted(p.first, p.second, 0.35, kG, w, 1500);
    EXPECT_NEAR(a(0, 1), d.alice, kTol);
  }
}

}  // namespace
}  // namespace qrpd
