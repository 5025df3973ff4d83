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
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace qrpd {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Basis ordering shared by every module: |00>, |01>, |10>, |11>, index = 2a + b,
// where a is Alice's qubit and b is Bob's.
inline constexpr int basis_index(int a, int b) { return 2 * a + b; }

/// Entanglement angle epsilon in [0, pi/2]. pi/4 is maximal entanglement.
class Entanglement {
 public:
  Entanglement() = default;
  explicit Entanglement(double epsilon);

  double value() const { return epsilon_; }
  // The quantity most closed forms are written in.
  double sin2_2eps() const;
  double cos2_2eps() const;

 private:
  double epsilon_ = 0.0;
};

/// Single-qubit SU(2) matrix [[gamma, delta], [-conj(delta), conj(gamma)]].
class Unitary2 {
 public:
  Unitary2() = default;
  // Throws InvariantError unless |gamma|^2 + |delta|^2 = 1 within 1e-12.
  Unitary2(Complex gamma, Complex delta);

  static Unitary2 identity() { return {}; }

  Complex gamma() const { return gamma_; }
  Complex delta() const { return delta_; }
  // Row-major entry (r, c).
  Complex at(int r, int c) const;

  Unitary2 operator*(const Unitary2& rhs) const;
  Unitary2 adjoint() const;

  // Multiplies by a unit-modulus scalar. The result is unitary but in general
  // not of SU(2) form, so it is returned as raw entries.
  std::array<Complex, 4> scaled(Complex phase) const;

 private:
  Complex gamma_{1.0, 0.0};
  Complex delta_{0.0, 0.0};
};

/// Dense 4x4 complex matrix on the two-qubit space, row-major.
class Unitary4 {
 public:
  Unitary4() = default;
  explicit Unitary4(const std::array<Complex, 16>& entries) : m_(entries) {}

  static Unitary4 identity();
  // Tensor product of two single-qubit operators given as row-major 2x2 arrays.
  static Unitary4 kron(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b);
  static Unitary4 kron(const Unitary2& a, const Unitary2& b);

  Complex at(int r, int c) const { return m_[static_cast<size_t>(4 * r + c)]; }
  const std::array<Complex, 16>& entries() const { return m_; }

  Unitary4 operator*(const Unitary4& rhs) const;
  Unitary4 adjoint() const;

  // Max-abs deviation of U U^dagger from the identity.
  double unitarity_defect() const;

 private:
  std::array<Complex, 16> m_{};
};

/// Pure two-qubit state; amplitudes indexed by basis_index.
class TwoQubitState {
 public:
  TwoQubitState();  // |00>
  explicit TwoQubitState(const std::array<Complex, 4>& amp) : amp_(amp) {}

  static TwoQubitState basis(int a, int b);

  Complex amplitude(int index) const { return amp_[static_cast<size_t>(index)]; }
  const std::array<Complex, 4>& amplitudes() const { return amp_; }
  double norm_squared() const;

  friend TwoQubitState operator*(const Unitary4& u, const TwoQubitState& s);

 private:
  std::array<Complex, 4> amp_;
};

using Probabilities = std::array<double, 4>;

// gamma = cos(theta/2) - i cos(alpha) sin(theta/2),
// delta = -i exp(-i phi) sin(alpha) sin(theta/2).
// Angles are canonicalised first (see canonical_angles); the result differs
// from the raw formula by at most a global sign. Throws ParameterError on
// non-finite input.
Unitary2 make_unitary(double theta, double alpha, double phi);

struct Angles {
  double theta;
  double alpha;
  double phi;
};

// Reduces (theta, alpha, phi) to theta, phi in [0, 2pi), alpha in [0, pi).
// alpha in [pi, 2pi) maps to (alpha - pi) with theta -> 2pi - theta, which
// rotates about the same axis by the same amount.
Angles canonical_angles(double theta, double alpha, double phi);

// J(eps) = cos(eps) 1x1 + i sin(eps) XxX.
Unitary4 entangler(Entanglement eps);

// J^dagger(eps) (U_A x U_B) J(eps) for a single round.
Unitary4 round_operator(const Unitary2& alice, const Unitary2& bob, Entanglement eps);

// J^dagger Prod_k (U^A_k x U^B_k) J |00>, the product taken with round 1
// rightmost. Throws UsageError on an empty list.
TwoQubitState evolve_round(std::span<const std::pair<Unitary2, Unitary2>> ops, Entanglement eps);

// |<ab|psi>|^2 in basis order. Throws InvariantError if the norm is off by
// more than 1e-9.
Probabilities basis_probabilities(const TwoQubitState& state);

// |<a|b>| for unit states; 1 iff the states agree up to a global phase.
double overlap_modulus(const TwoQubitState& a, const TwoQubitState& b);

}  // namespace qrpd
