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

#include <array>
#include <cstdint>

#include "qrpd/actions.hpp"
#include "qrpd/game.hpp"
#include "qrpd/repeated.hpp"

namespace qrpd {

// Row-stochastic matrix over basis states: P[from][to].
using TransitionMatrix = std::array<std::array<double, 4>, 4>;

/// One-round propagators psi^{a'b'}_{ab} = <a'b'| J^dag (U^A x U^B) J |ab>.
struct PropagatorTable {
  std::array<std::array<Complex, 4>, 4> amplitude{};  // [from][to]
  TransitionMatrix transition{};                      // |amplitude|^2
};

PropagatorTable propagator_matrix(const ActionTriple& alice, const ActionTriple& bob, Entanglement eps);

// Discounted value of the collapse-model Markov reward process for a constant
// action pair: environments are basis states, every round lands on a basis
// state with the propagator probabilities, the reward is A_{a'b'} for the
// landing state (Bob: A_{b'a'}), and play starts from |00>. Solves
// (I - wP) v = P r.
PayoffPair markov_value(const ActionTriple& alice, const ActionTriple& bob, Entanglement eps,
                        const GamePayoffs& g, DiscountFactor w);

// Exact collapse-model value for any reactive pair: the basis-state
// distribution is pushed through the round-m transition matrix each round
// and truncated like truncated_payoff.
PayoffPair collapse_value(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                          const GamePayoffs& g, DiscountFactor w, double tol = 1e-12);

struct MCConfig {
  long long samples = 100'000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = default_thread_count()
};

struct MCEstimate {
  PayoffPair mean;
  PayoffPair stderr_of_mean;
  long long samples = 0;
};

// Samples of 1024 episodes share one generator (std::mt19937_64 seeded with
// a SplitMix64 mix of the seed and the block index), and block sums are
// reduced in block order, so results do not depend on the thread count.
inline constexpr long long kSamplesPerStream = 1024;

// Each episode measures after every round, restarts the next round from the
// measured basis state, and stops once w^m max|A| / (1 - w) < 1e-10.
MCEstimate monte_carlo_payoff(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                              const GamePayoffs& g, DiscountFactor w, const MCConfig& cfg);

struct ModelComparison {
  PayoffPair unitary_value;    // accumulated-unitary series
  PayoffPair collapse_value;   // measure-and-restart Markov model
  PayoffPair difference;       // unitary - collapse
  bool basis_states_only = false;  // every unitary round state is a basis state
};

ModelComparison compare_models(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                               const GamePayoffs& g, DiscountFactor w);

}  // namespace qrpd
