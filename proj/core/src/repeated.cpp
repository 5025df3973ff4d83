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

#include <algorithm>
#include <cmath>
#include <string>

#include "qrpd/error.hpp"
#include "round_simulator.hpp"

namespace qrpd {

namespace detail {

RoundSimulator::RoundSimulator(const RepeatedStrategy& alice, const RepeatedStrategy& bob,
                               Entanglement eps, Protocol protocol)
    : alice_kind_(alice.kind), bob_kind_(bob.kind), protocol_(protocol), actions_{alice.action, bob.action} {
  const std::array<Unitary2, 2> u{alice.action.unitary(), bob.action.unitary()};
  const Unitary4 j = entangler(eps);
  j_dag_ = j.adjoint();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      kron_[a][b] = Unitary4::kron(u[a], u[b]);
      one_shot_[a][b] = j_dag_ * (kron_[a][b] * (j * TwoQubitState()));
    }
  frame_ = j * TwoQubitState();
}

const TwoQubitState& RoundSimulator::step() {
  ++round_;
  const bool first = round_ == 1;
  const int a = (alice_kind_ == RepeatedStrategy::Kind::kConstant || first) ? 0 : bob_idx_;
  const int b = (bob_kind_ == RepeatedStrategy::Kind::kConstant || first) ? 1 : alice_idx_;
  alice_idx_ = a;
  bob_idx_ = b;
  if (protocol_ == Protocol::kClassical) {
    state_ = one_shot_[a][b];
  } else {
    frame_ = kron_[a][b] * frame_;
    state_ = j_dag_ * frame_;
  }
  return state_;
}

}  // namespace detail

namespace {

bool same_probabilities(const Probabilities& x, const Probabilities& y) {
  for (size_t k = 0; k < 4; ++k)
    if (std::abs(x[k] - y[k]) > kPeriodTolerance) return false;
  return true;
}

// Finds the smallest (p, s) over probs[0..n) (round m stored at m-1).
std::optional<std::pair<int, int>> find_cycle(const std::vector<Probabilities>& probs) {
  const int n = static_cast<int>(probs.size());
  for (int p = 1; 2 * p <= n; ++p) {
    // Walk back from the last comparable round to the first mismatch; the
    // cycle starts right after it.
    int s = 0;
    for (int m = n - p; m >= 1; --m) {
      if (!same_probabilities(probs[static_cast<size_t>(m - 1)], probs[static_cast<size_t>(m + p - 1)])) {
        s = m;
        break;
      }
    }
    if (s + 2 * p <= n) return std::pair{p, s};
  }
  return std::nullopt;
}

}  // namespace

RepeatedStrategy RepeatedStrategy::constant(ActionTriple a, std::string name) {
  return {Kind::kConstant, std::move(a), std::move(name)};
}

RepeatedStrategy RepeatedStrategy::tit_for_tat(ActionTriple first, std::string name) {
  return {Kind::kTitForTat, std::move(first), std::move(name)};
}

std::string RepeatedStrategy::label() const {
  if (!name.empty()) return name;
  return (kind == Kind::kConstant ? "ALL:" : "TFT:") + action.label();
}

RepeatedStrategy parse_strategy(std::string_view text) {
  if (text == "ALLC") return RepeatedStrategy::constant(named_action("C"), "ALLC");
  if (text == "ALLD") return RepeatedStrategy::constant(named_action("D"), "ALLD");
  if (text == "ALLQ") return RepeatedStrategy::constant(named_action("Q"), "ALLQ");
  if (text == "ALLH") return RepeatedStrategy::constant(named_action("H"), "ALLH");
  if (text == "ALLR3") return RepeatedStrategy::constant(named_action("R3"), "ALLR3");
  if (text == "CTFT") return RepeatedStrategy::tit_for_tat(named_action("C"), "CTFT");
  if (text == "TFT") return RepeatedStrategy::tit_for_tat(named_action("C"), "TFT");
  if (text == "QTFT") return RepeatedStrategy::tit_for_tat(named_action("Q"), "QTFT");
  if (text.starts_with("ALL:")) return RepeatedStrategy::constant(parse_action(text.substr(4)));
  if (text.starts_with("TFT:")) return RepeatedStrategy::tit_for_tat(parse_action(text.substr(4)));
  throw LookupError("unknown strategy '" + std::string(text) + "'");
}

DiscountFactor::DiscountFactor(double w) : w_(w) {
  if (!std::isfinite(w) || w < 0.0 || w >= 1.0) {
    throw DomainError("discount factor must lie in [0, 1), got " + std::to_string(w));
  }
}

ActionTriple next_action(const RepeatedStrategy& strat, int round,
                         const std::optional<ActionTriple>& opponent_prev) {
  if (round < 1) throw UsageError("rounds are numbered from 1");
  if (strat.kind == RepeatedStrategy::Kind::kConstant || round == 1) return strat.action;
  if (!opponent_prev) throw UsageError("tit-for-tat needs the opponent's previous action after round 1");
  return *opponent_prev;
}

RoundTrace trace(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                 const GamePayoffs& g, long long rounds, Protocol protocol) {
  if (rounds < 1) throw UsageError("trace needs at least one round");
  if (rounds > kMaxRounds) throw ResourceError("trace of " + std::to_string(rounds) + " rounds exceeds the guard");
  detail::RoundSimulator sim(alice, bob, eps, protocol);
  RoundTrace out;
  out.rounds.reserve(static_cast<size_t>(rounds));
  for (long long m = 0; m < rounds; ++m) {
    RoundRecord rec;
    rec.state = sim.step();
    rec.alice_action = sim.action(sim.alice_index());
    rec.bob_action = sim.action(sim.bob_index());
    rec.probabilities = basis_probabilities(rec.state);
    rec.payoff = expected_payoffs(rec.probabilities, g);
    out.rounds.push_back(std::move(rec));
  }
  return out;
}

TruncatedPayoff truncated_payoff(const RepeatedStrategy& alice, const RepeatedStrategy& bob,
                                 Entanglement eps, const GamePayoffs& g, DiscountFactor w, double tol,
                                 Protocol protocol) {
  if (!(tol > 0.0)) throw UsageError("truncation tolerance must be positive");
  const double wv = w.value();
  const double scale = g.max_abs() / (1.0 - wv);
  detail::RoundSimulator sim(alice, bob, eps, protocol);
  TruncatedPayoff out;
  double weight = 1.0;  // w^{m-1}
  for (long long m = 1;; ++m) {
    if (m > kMaxRounds) throw ResourceError("truncated payoff needs more than 10^6 rounds");
    const PayoffPair r = expected_payoffs(basis_probabilities(sim.step()), g);
    out.value.alice += weight * r.alice;
    out.value.bob += weight * r.bob;
    out.rounds_used = m;
    weight *= wv;  // now w^m
    if (weight * scale < tol) break;
  }
  return out;
}

PeriodInfo detect_period(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                         int search_limit, Protocol protocol) {
  if (search_limit < 2) throw UsageError("period search needs at least 2 rounds");
  detail::RoundSimulator sim(alice, bob, eps, protocol);
  std::vector<TwoQubitState> states;
  std::vector<Probabilities> probs;
  // Grow the window geometrically so short cycles are found cheaply.
  int window = std::min(search_limit, 16);
  PeriodInfo info;
  for (;;) {
    while (static_cast<int>(probs.size()) < window) {
      states.push_back(sim.step());
      probs.push_back(basis_probabilities(states.back()));
    }
    if (const auto cycle = find_cycle(probs)) {
      info.periodic = true;
      info.period = cycle->first;
      info.preperiod = cycle->second;
      info.searched = window;
      const auto& x = states[static_cast<size_t>(info.preperiod)];
      const auto& y = states[static_cast<size_t>(info.preperiod + info.period)];
      info.state_recurrent = std::abs(overlap_modulus(x, y) - 1.0) <= kPeriodTolerance;
      return info;
    }
    if (window == search_limit) break;
    window = std::min(search_limit, 2 * window);
  }
  info.searched = search_limit;
  return info;
}

PayoffCycle payoff_cycle(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                         const GamePayoffs& g, int search_limit, Protocol protocol) {
  PayoffCycle out;
  out.period = detect_period(alice, bob, eps, search_limit, protocol);
  if (!out.period.periodic) {
    throw UnsupportedError("no period within " + std::to_string(search_limit) + " rounds for " +
                           alice.label() + " vs " + bob.label());
  }
  const long long n = out.period.preperiod + out.period.period;
  const RoundTrace t = trace(alice, bob, eps, g, n, protocol);
  out.rounds.reserve(static_cast<size_t>(n));
  for (const auto& r : t.rounds) out.rounds.push_back(r.payoff);
  return out;
}

PayoffPair discounted_sum(const PayoffCycle& cycle, DiscountFactor w) {
  const double wv = w.value();
  const int s = cycle.period.preperiod;
  const int p = cycle.period.period;
  PayoffPair head, loop;
  double weight = 1.0;
  for (int k = 0; k < s; ++k) {
    head.alice += weight * cycle.rounds[static_cast<size_t>(k)].alice;
    head.bob += weight * cycle.rounds[static_cast<size_t>(k)].bob;
    weight *= wv;
  }
  const double lead = weight;  // w^s
  weight = 1.0;
  for (int k = 0; k < p; ++k) {
    loop.alice += weight * cycle.rounds[static_cast<size_t>(s + k)].alice;
    loop.bob += weight * cycle.rounds[static_cast<size_t>(s + k)].bob;
    weight *= wv;
  }
  const double denom = 1.0 - weight;  // 1 - w^p
  return {head.alice + lead * loop.alice / denom, head.bob + lead * loop.bob / denom};
}

PayoffPair periodic_payoff(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                           const GamePayoffs& g, DiscountFactor w, Protocol protocol, int search_limit) {
  return discounted_sum(payoff_cycle(alice, bob, eps, g, search_limit, protocol), w);
}

}  // namespace qrpd
