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

#include "qrpd/game.hpp"
#include "qrpd/repeated.hpp"

namespace qrpd {

/// Two repeated strategies competing in a symmetric 2x2 meta-game.
struct MetaPair {
  RepeatedStrategy first;
  RepeatedStrategy second;
  Protocol protocol = Protocol::kAccumulated;

  std::string label() const;
};

// "FIRST-SECOND" with strategies as in parse_strategy, e.g. "CTFT-ALLD" or
// "ALLQ-ALLD". The pair "TFT-ALLD" (either order) is the classical repeated
// game and uses Protocol::kClassical.
MetaPair parse_pair(std::string_view text);

// Pairs with a published closed-form meta-matrix.
enum class TabulatedPair {
  kClassicalTftAlld,
  kCtftAllq,
  kCtftAlld,
  kCtftAllh,
  kQtftAllc,
  kQtftAlld,
  kQtftAllh,
  kAllcAllq,
  kAlldAllq,
  kAllcAllh,
  kAllcAllr3,
  kAlldAllr3,
};

const std::vector<TabulatedPair>& all_tabulated_pairs();

// The pair in its published row order, e.g. CTFT first for kCtftAlld.
MetaPair tabulated_meta_pair(TabulatedPair pair);

struct TabulatedMatch {
  TabulatedPair pair;
  bool swapped;  // the MetaPair lists the strategies in reverse order
};

// Matches preset names (and the protocol) against the tabulated pairs.
std::optional<TabulatedMatch> find_tabulated(const MetaPair& pair);

// False for the published matrices that do not follow from round-by-round
// accumulation: CTFT-ALLQ (its off-diagonal repeats the ALLC-ALLQ entry),
// ALLC-ALLR3 (third-round term and diagonal), ALLD-ALLR3 (assumes period 3;
// the pair has period 6).
bool published_form_consistent(TabulatedPair pair);

// Published closed form, transcribed as printed, in the requested row order.
// Throws UnsupportedError for untabulated pairs.
PayoffMatrix2 closed_form_meta_matrix(const MetaPair& pair, DiscountFactor w, Entanglement eps,
                                      const GamePayoffs& g);
PayoffMatrix2 closed_form_meta_matrix(TabulatedPair pair, DiscountFactor w, Entanglement eps,
                                      const GamePayoffs& g);

// Meta-matrix from the round engine: periodic resummation when a period is
// found, otherwise the truncated series (tolerance 1e-12).
PayoffMatrix2 engine_meta_matrix(const MetaPair& pair, DiscountFactor w, Entanglement eps,
                                 const GamePayoffs& g);

/// The four payoff cycles of a meta-game at fixed epsilon. Round payoffs do
/// not depend on w, so a scan column reuses them for every w.
class MetaCycles {
 public:
  MetaCycles(const MetaPair& pair, Entanglement eps, const GamePayoffs& g);

  // Plays without a detected period fall back to the truncated series.
  PayoffMatrix2 matrix(DiscountFactor w) const;

 private:
  std::array<std::string, 2> labels_;
  // cycles_[r][c]: row strategy r (as Alice) against column strategy c.
  std::array<std::array<std::optional<PayoffCycle>, 2>, 2> cycles_;
  MetaPair pair_;
  Entanglement eps_;
  GamePayoffs g_;
};

}  // namespace qrpd
