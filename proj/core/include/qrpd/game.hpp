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
#include <string>
#include <utility>

#include "qrpd/actions.hpp"
#include "qrpd/qcore.hpp"

namespace qrpd {

/// Symmetric two-action game in (R, S, T, P) form. Alice's matrix is
/// [[R, S], [T, P]] with rows her action and columns Bob's.
struct GamePayoffs {
  double R = 3.0;
  double S = 0.0;
  double T = 5.0;
  double P = 1.0;

  // A_{ab}: Alice's reward when the measured basis state is |ab>.
  double alice(int a, int b) const;
  // Bob's reward at |ab> is A_{ba}.
  double bob(int a, int b) const { return alice(b, a); }
  double max_abs() const;

  friend bool operator==(const GamePayoffs&, const GamePayoffs&) = default;
};

// The payoff quadruple used throughout the figures.
inline constexpr GamePayoffs kStandardGame{3.0, 0.0, 5.0, 1.0};

struct PdReport {
  bool ordering_ok = false;     // T > R > P > S
  bool efficiency_ok = false;   // 2R > S + T
  bool pd_valid = false;
  double temptation_gain = 0.0;  // T - R, incentive to defect from (C, C)
  double sucker_gain = 0.0;      // P - S, incentive to defect from (C, D)
};

PdReport validate_pd(const GamePayoffs& g);

struct PayoffPair {
  double alice = 0.0;
  double bob = 0.0;
};

// Expected (Alice, Bob) rewards for a basis-state distribution.
PayoffPair expected_payoffs(const Probabilities& p, const GamePayoffs& g);

PayoffPair one_shot_payoffs(const ActionTriple& alice, const ActionTriple& bob, Entanglement eps,
                            const GamePayoffs& g);

struct BasisState {
  int a = 0;
  int b = 0;
};

/// 2x2 meta-game matrix for the row player; entries are the row strategy's
/// payoff against the column strategy. The column player's matrix is the
/// transpose.
struct PayoffMatrix2 {
  std::array<std::array<double, 2>, 2> a{};
  std::array<std::string, 2> labels;

  double operator()(int r, int c) const { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
  // Same game with the strategy order reversed.
  PayoffMatrix2 swapped() const;
};

// Alice's classical C/D matrix seen from initial environment |ab>, i.e. with
// the outcome labels flipped by a and b.
PayoffMatrix2 env_payoff_matrix(BasisState s, const GamePayoffs& g);

// Closed-form one-shot matrix over the actions (C, D, Q, H), row = Alice.
std::array<std::array<double, 4>, 4> four_action_matrix(Entanglement eps, const GamePayoffs& g);

}  // namespace qrpd
