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

#include "qrpd/qcore.hpp"

namespace qrpd {

/// An SU(2) action (rotation by theta about the axis
/// (sin a cos p, sin a sin p, cos a)), optionally carrying a preset name.
struct ActionTriple {
  double theta = 0.0;
  double alpha = 0.0;
  double phi = 0.0;
  std::string name;  // empty for raw triples

  Unitary2 unitary() const { return make_unitary(theta, alpha, phi); }
  // Preset name if any, else "theta,alpha,phi" with 17 significant digits.
  std::string label() const;

  // Parameter equality; names are ignored.
  friend bool operator==(const ActionTriple& a, const ActionTriple& b) {
    return a.theta == b.theta && a.alpha == b.alpha && a.phi == b.phi;
  }
};

// Presets: C=(0,0,0), D=(pi,pi/2,0), Q=(pi,0,0), H=(pi,pi/4,pi/2),
// R3=(2pi/3,pi/2,0). Parameters the preset leaves free are stored as 0.
// Throws LookupError for any other name.
ActionTriple named_action(std::string_view name);

// Accepts a preset name or a raw "theta,alpha,phi" triple (see parse_angle).
ActionTriple parse_action(std::string_view text);

// Parses a radian value. Besides plain decimals it accepts multiples of pi:
// "pi", "-pi/2", "pi/4", "3pi/4", "3*pi/4", "2/3 pi", "0.5pi".
// Throws ParameterError on malformed text.
double parse_angle(std::string_view text);

enum class TwoParamSubspace {
  // cos^2(t/2) + sin^2(t/2) (cos^2 a + sin^2 p sin^2 a) = 1: the usual
  // two-parameter space, which holds C, Q and the Y gate but not D (= X).
  kConventional,
  // The same constraint with cos^2 p; it contains X instead of Y.
  kCosineVariant,
  kEither,
};

// Membership of the action in a two-parameter subspace, to within 1e-12.
bool two_param_membership(const ActionTriple& a, TwoParamSubspace space = TwoParamSubspace::kConventional);

/// theta = (p/q) 2pi in lowest terms, q >= 1.
class RationalAngle {
 public:
  // Reduces to lowest terms; throws ParameterError if q == 0. A negative q is
  // folded into p.
  RationalAngle(long long p, long long q);

  long long p() const { return p_; }
  long long q() const { return q_; }
  double radians() const;

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;

 private:
  long long p_;
  long long q_;
};

// Best rational p/q with q <= max_q from the continued-fraction convergents
// of theta/(2pi), accepted only if |theta - (p/q)2pi| < 1e-9.
std::optional<RationalAngle> rational_of(double theta, long long max_q);

}  // namespace qrpd
