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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrpd/actions.hpp"
#include "qrpd/game.hpp"
#include "qrpd/qcore.hpp"

namespace qrpd {

/// Reactive strategy: a constant action, or tit-for-tat with an opening move.
struct RepeatedStrategy {
  enum class Kind { kConstant, kTitForTat };

  Kind kind = Kind::kConstant;
  ActionTriple action;  // the constant action, or the TFT opening move
  std::string name;     // preset name; empty for ad-hoc strategies

  static RepeatedStrategy constant(ActionTriple a, std::string name = "");
  static RepeatedStrategy tit_for_tat(ActionTriple first, std::string name = "");

  // ALLC, ALL:<theta,alpha,phi>, TFT:<action> etc.
  std::string label() const;
};

// Presets ALLC, ALLD, ALLQ, ALLH, ALLR3, CTFT, QTFT; "TFT" is an alias of
// CTFT. Also "ALL:<action>" and "TFT:<action>" where <action> is anything
// parse_action accepts. Throws LookupError / ParameterError.
RepeatedStrategy parse_strategy(std::string_view text);

/// Probability w in [0, 1) that another round is played.
class DiscountFactor {
 public:
  explicit DiscountFactor(double w);
  double value() const { return w_; }

 private:
  double w_;
};

// How round states are produced.
enum class Protocol {
  // Round m state is J^dag Prod_{k<=m}(U^A_k x U^B_k) J|00>: the players'
  // operators accumulate on one quantum register.
  kAccumulated,
  // Every round is a fresh one-shot game J^dag (U^A_m x U^B_m) J|00>. With
  // C and D this is the ordinary repeated game.
  kClassical,
};

// Round numbers start at 1. Throws UsageError for round < 1, or when a TFT
// strategy past round 1 gets no opponent action.
ActionTriple next_action(const RepeatedStrategy& strat, int round,
                         const std::optional<ActionTriple>& opponent_prev);

struct RoundRecord {
  ActionTriple alice_action;
  ActionTriple bob_action;
  TwoQubitState state;
  Probabilities probabilities{};
  PayoffPair payoff;
};

struct RoundTrace {
  std::vector<RoundRecord> rounds;
};

inline constexpr long long kMaxRounds = 1'000'000;

// Rounds 1..rounds. Throws ResourceError above kMaxRounds.
RoundTrace trace(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                 const GamePayoffs& g, long long rounds, Protocol protocol = Protocol::kAccumulated);

struct TruncatedPayoff {
  PayoffPair value;
  long long rounds_used = 0;
};

// Sums w^{m-1} times the round payoff for m = 1..M, with M the smallest
// integer such that w^M max|A| / (1 - w) < tol (and M >= 1), which bounds the
// neglected tail by tol.
TruncatedPayoff truncated_payoff(const RepeatedStrategy& alice, const RepeatedStrategy& bob,
                                 Entanglement eps, const GamePayoffs& g, DiscountFactor w,
                                 double tol = 1e-12, Protocol protocol = Protocol::kAccumulated);

inline constexpr int kDefaultPeriodSearch = 1000;
inline constexpr double kPeriodTolerance = 1e-10;

struct PeriodInfo {
  bool periodic = false;
  int preperiod = 0;  // s: rounds before the cycle starts
  int period = 0;     // p
  int searched = 0;   // rounds simulated
  // Whether the state itself (not just its probabilities) recurs up to a
  // global phase between rounds s+1 and s+1+p.
  bool state_recurrent = false;
};

// Smallest period p, then smallest preperiod s, such that the round
// probability vectors satisfy prob(m + p) = prob(m) within 1e-10 for every
// s < m <= searched - p, with at least one full period confirmed after the
// first one (s + 2p <= searched).
PeriodInfo detect_period(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                         int search_limit = kDefaultPeriodSearch,
                         Protocol protocol = Protocol::kAccumulated);

/// Round payoffs of one preperiod plus one full cycle.
struct PayoffCycle {
  PeriodInfo period;
  std::vector<PayoffPair> rounds;  // size preperiod + period
};

// Throws UnsupportedError if no period is found within search_limit.
PayoffCycle payoff_cycle(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                         const GamePayoffs& g, int search_limit = kDefaultPeriodSearch,
                         Protocol protocol = Protocol::kAccumulated);

// sum_{k<=s} w^{k-1} pi_k + w^s sum_{k=1..p} w^{k-1} pi_{s+k} / (1 - w^p)
PayoffPair discounted_sum(const PayoffCycle& cycle, DiscountFactor w);

PayoffPair periodic_payoff(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                           const GamePayoffs& g, DiscountFactor w,
                           Protocol protocol = Protocol::kAccumulated,
                           int search_limit = kDefaultPeriodSearch);

}  // namespace qrpd
