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

#include "qrpd/game.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qrpd {

double GamePayoffs::alice(int a, int b) const {
  if (a == 0) return b == 0 ? R : S;
  return b == 0 ? T : P;
}

double GamePayoffs::max_abs() const {
  return std::max({std::abs(R), std::abs(S), std::abs(T), std::abs(P)});
}

PdReport validate_pd(const GamePayoffs& g) {
  PdReport r;
  r.ordering_ok = g.T > g.R && g.R > g.P && g.P > g.S;
  r.efficiency_ok = 2.0 * g.R > g.S + g.T;
  r.pd_valid = r.ordering_ok && r.efficiency_ok;
  r.temptation_gain = g.T - g.R;
  r.sucker_gain = g.P - g.S;
  return r;
}

PayoffPair expected_payoffs(const Probabilities& p, const GamePayoffs& g) {
  PayoffPair out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double w = p[static_cast<size_t>(basis_index(a, b))];
      out.alice += w * g.alice(a, b);
      out.bob += w * g.bob(a, b);
    }
  return out;
}

PayoffPair one_shot_payoffs(const ActionTriple& alice, const ActionTriple& bob, Entanglement eps,
                            const GamePayoffs& g) {
  const std::pair<Unitary2, Unitary2> op{alice.unitary(), bob.unitary()};
  return expected_payoffs(basis_probabilities(evolve_round({&op, 1}, eps)), g);
}

PayoffMatrix2 PayoffMatrix2::swapped() const {
  PayoffMatrix2 m;
  m.a = {{{a[1][1], a[1][0]}, {a[0][1], a[0][0]}}};
  m.labels = {labels[1], labels[0]};
  return m;
}

PayoffMatrix2 env_payoff_matrix(BasisState s, const GamePayoffs& g) {
  PayoffMatrix2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = g.alice(i ^ s.a, j ^ s.b);
  m.labels = {"C", "D"};
  return m;
}

std::array<std::array<double, 4>, 4> four_action_matrix(Entanglement eps, const GamePayoffs& g) {
  const double c = eps.cos2_2eps();
  const double s = eps.sin2_2eps();
  const double R = g.R, S = g.S, T = g.T, P = g.P;
  return {{
      {R, S, R * c + P * s, ((R + S) * c + (T + P) * s) / 2.0},
      {T, P, T * c + S * s, ((R + S) * s + (T + P) * c) / 2.0},
      {R * c + P * s, S * c + T * s, R, (R + S) / 2.0},
      {((R + T) * c + (S + P) * s) / 2.0, ((R + T) * s + (S + P) * c) / 2.0, (R + T) / 2.0,
       (R + S + T + P) / 4.0},
  }};
}

}  // namespace qrpd
