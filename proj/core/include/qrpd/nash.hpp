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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qrpd/game.hpp"
#include "qrpd/meta.hpp"

namespace qrpd {

enum class NeVerdict { kFirst, kSecond, kBoth, kNeither };

// "FIRST", "SECOND", "BOTH", "NEITHER".
std::string_view verdict_name(NeVerdict v);

struct NEClassification {
  NeVerdict verdict = NeVerdict::kNeither;
  double first_margin = 0.0;   // A11 - A21
  double second_margin = 0.0;  // A22 - A12
};

inline constexpr double kTieTolerance = 1e-9;

// Strategy i is a strict NE iff its diagonal entry beats the other row's
// entry in the same column by more than tie_tol.
NEClassification classify_strict_ne(const PayoffMatrix2& m, double tie_tol = kTieTolerance);

// Left side minus right side of the published strict-NE inequality for
// `strategy` within `pair`; the condition holds iff the margin is positive.
// Recognised pairs (either order): TFT-ALLD (classical), CTFT-ALLD,
// CTFT-ALLH, CTFT-ALLQ, CTFT-ALLC, QTFT-ALLC, QTFT-ALLD, QTFT-ALLH,
// QTFT-ALLQ, ALLC-ALLQ, ALLD-ALLQ, ALLD-ALLH, ALLC-ALLH, ALLC-ALLR3,
// ALLD-ALLR3. Throws LookupError otherwise, or when `strategy`
// is not one of the pair's names.
double analytic_margin(const MetaPair& pair, std::string_view strategy, DiscountFactor w, Entanglement eps,
                       const GamePayoffs& g);

bool analytic_condition(const MetaPair& pair, std::string_view strategy, DiscountFactor w, Entanglement eps,
                        const GamePayoffs& g);

enum class MatrixSource {
  kAuto,        // published closed form when it is consistent, else engine
  kClosedForm,  // published closed form; throws for untabulated pairs
  kEngine,
};

struct ScanCell {
  std::array<std::array<double, 2>, 2> a{};
  NEClassification ne;
};

/// Classification over a (w, epsilon) grid. Cells are row-major with w as the
/// outer index.
struct ScanGrid {
  std::string pair_label;
  std::array<std::string, 2> labels;  // first, second strategy
  std::vector<double> w_axis;
  std::vector<double> eps_axis;
  std::vector<ScanCell> cells;

  const ScanCell& at(size_t iw, size_t ie) const { return cells[iw * eps_axis.size() + ie]; }
};

inline constexpr double kDefaultWMax = 0.99;

// w in [0, w_max] and epsilon in [0, pi/4], both inclusive and evenly spaced.
ScanGrid scan_region(const MetaPair& pair, const GamePayoffs& g, int w_steps, int eps_steps,
                     double w_max = kDefaultWMax, double tie_tol = kTieTolerance,
                     MatrixSource source = MatrixSource::kAuto, int threads = 0);

// Header `w,epsilon,a11,a12,a21,a22,class`, 12 significant digits.
void write_scan_csv(const ScanGrid& grid, std::ostream& out);

struct ClassicalBaseline {
  PayoffMatrix2 matrix;
  NEClassification ne;
};

ClassicalBaseline classical_baseline(const GamePayoffs& g, DiscountFactor w);

struct FigureSpec {
  std::string figure;
  MetaPair pair;  // first strategy is the one drawn in yellow
  GamePayoffs game;
};

// Figures 1, 3a, 3b, 4a, 4b, 5, 6a, 6b. Throws LookupError otherwise.
FigureSpec figure_spec(std::string_view figure);
const std::vector<std::string>& figure_names();

}  // namespace qrpd
