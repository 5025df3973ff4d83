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

#include "qrpd/repeated.hpp"

namespace qrpd::detail {

// Steps a pair of reactive strategies round by round. Both strategies only
// ever play one of two actions (Alice's own or Bob's own), so the local
// operators are indexed 0 = alice.action, 1 = bob.action.
class RoundSimulator {
 public:
  RoundSimulator(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                 Protocol protocol);

  // Advances to the next round and returns its post-round state.
  const TwoQubitState& step();

  int round() const { return round_; }
  int alice_index() const { return alice_idx_; }
  int bob_index() const { return bob_idx_; }
  const ActionTriple& action(int index) const { return actions_[static_cast<size_t>(index)]; }
  const TwoQubitState& state() const { return state_; }

 private:
  RepeatedStrategy::Kind alice_kind_;
  RepeatedStrategy::Kind bob_kind_;
  Protocol protocol_;
  std::array<ActionTriple, 2> actions_;
  // kron_[ia][ib] = U_ia x U_ib
  std::array<std::array<Unitary4, 2>, 2> kron_;
  // One-shot states J^dag kron_[ia][ib] J|00>, used by the classical protocol.
  std::array<std::array<TwoQubitState, 2>, 2> one_shot_;
  Unitary4 j_dag_;
  TwoQubitState frame_;  // Prod (U x U) J|00>, the entangled-frame register
  TwoQubitState state_;
  int round_ = 0;
  int alice_idx_ = -1;
  int bob_idx_ = -1;
};

}  // namespace qrpd::detail
