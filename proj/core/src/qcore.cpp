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

#include "qrpd/qcore.hpp"

#include <cmath>
#include <string>

#include "qrpd/error.hpp"

namespace qrpd {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
const Complex kI{0.0, 1.0};

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  // fmod can return `period` itself after the correction for tiny negatives.
  if (r >= period) r -= period;
  return r;
}

}  // namespace

Entanglement::Entanglement(double epsilon) : epsilon_(epsilon) {
  if (!std::isfinite(epsilon)) throw ParameterError("entanglement parameter is not finite");
  if (epsilon < 0.0 || epsilon > kPi / 2.0) {
    throw DomainError("entanglement parameter must lie in [0, pi/2], got " + std::to_string(epsilon));
  }
}

double Entanglement::sin2_2eps() const {
  const double s = std::sin(2.0 * epsilon_);
  return s * s;
}

double Entanglement::cos2_2eps() const {
  const double c = std::cos(2.0 * epsilon_);
  return c * c;
}

Unitary2::Unitary2(Complex gamma, Complex delta) : gamma_(gamma), delta_(delta) {
  const double n = std::norm(gamma) + std::norm(delta);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
    throw InvariantError("|gamma|^2 + |delta|^2 = " + std::to_string(n) + ", expected 1");
  }
}

Complex Unitary2::at(int r, int c) const {
  if (r == 0) return c == 0 ? gamma_ : delta_;
  return c == 0 ? -std::conj(delta_) : std::conj(gamma_);
}

Unitary2 Unitary2::operator*(const Unitary2& rhs) const {
  // SU(2) is closed under products; compute the first row and rebuild.
  Unitary2 out;
  out.gamma_ = gamma_ * rhs.gamma_ - delta_ * std::conj(rhs.delta_);
  out.delta_ = gamma_ * rhs.delta_ + delta_ * std::conj(rhs.gamma_);
  return out;
}

Unitary2 Unitary2::adjoint() const {
  Unitary2 out;
  out.gamma_ = std::conj(gamma_);
  out.delta_ = -delta_;
  return out;
}

std::array<Complex, 4> Unitary2::scaled(Complex phase) const {
  return {phase * at(0, 0), phase * at(0, 1), phase * at(1, 0), phase * at(1, 1)};
}

Unitary4 Unitary4::identity() {
  std::array<Complex, 16> m{};
  for (int i = 0; i < 4; ++i) m[static_cast<size_t>(5 * i)] = 1.0;
  return Unitary4(m);
}

Unitary4 Unitary4::kron(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
  std::array<Complex, 16> m{};
  for (int ar = 0; ar < 2; ++ar)
    for (int ac = 0; ac < 2; ++ac)
      for (int br = 0; br < 2; ++br)
        for (int bc = 0; bc < 2; ++bc) {
          m[static_cast<size_t>(4 * (2 * ar + br) + 2 * ac + bc)] =
              a[static_cast<size_t>(2 * ar + ac)] * b[static_cast<size_t>(2 * br + bc)];
        }
  return Unitary4(m);
}

Unitary4 Unitary4::kron(const Unitary2& a, const Unitary2& b) {
  return kron(a.scaled(1.0), b.scaled(1.0));
}

Unitary4 Unitary4::operator*(const Unitary4& rhs) const {
  std::array<Complex, 16> out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Complex acc{};
      for (int k = 0; k < 4; ++k) acc += at(r, k) * rhs.at(k, c);
      out[static_cast<size_t>(4 * r + c)] = acc;
    }
  return Unitary4(out);
}

Unitary4 Unitary4::adjoint() const {
  std::array<Complex, 16> out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[static_cast<size_t>(4 * r + c)] = std::conj(at(c, r));
  return Unitary4(out);
}

double Unitary4::unitarity_defect() const {
  const Unitary4 p = (*this) * adjoint();
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(p.at(r, c) - (r == c ? 1.0 : 0.0)));
  return worst;
}

TwoQubitState::TwoQubitState() : amp_{Complex{1.0, 0.0}, {}, {}, {}} {}

TwoQubitState TwoQubitState::basis(int a, int b) {
  std::array<Complex, 4> amp{};
  amp[static_cast<size_t>(basis_index(a, b))] = 1.0;
  return TwoQubitState(amp);
}

double TwoQubitState::norm_squared() const {
  double n = 0.0;
  for (const auto& z : amp_) n += std::norm(z);
  return n;
}

TwoQubitState operator*(const Unitary4& u, const TwoQubitState& s) {
  std::array<Complex, 4> out{};
  for (int r = 0; r < 4; ++r) {
    Complex acc{};
    for (int k = 0; k < 4; ++k) acc += u.at(r, k) * s.amplitude(k);
    out[static_cast<size_t>(r)] = acc;
  }
  return TwoQubitState(out);
}

Angles canonical_angles(double theta, double alpha, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(alpha) || !std::isfinite(phi)) {
    throw ParameterError("action angles must be finite");
  }
  alpha = wrap(alpha, kTwoPi);
  if (alpha >= kPi) {
    alpha -= kPi;
    theta = -theta;
  }
  return {wrap(theta, kTwoPi), alpha, wrap(phi, kTwoPi)};
}

Unitary2 make_unitary(double theta, double alpha, double phi) {
  const Angles a = canonical_angles(theta, alpha, phi);
  const double c = std::cos(a.theta / 2.0);
  const double s = std::sin(a.theta / 2.0);
  const Complex gamma{c, -std::cos(a.alpha) * s};
  const Complex delta = -kI * std::exp(-kI * a.phi) * (std::sin(a.alpha) * s);
  return Unitary2(gamma, delta);
}

Unitary4 entangler(Entanglement eps) {
  const double c = std::cos(eps.value());
  const Complex is = kI * std::sin(eps.value());
  std::array<Complex, 16> m{};
  // XxX maps basis index k to 3 - k.
  for (int k = 0; k < 4; ++k) {
    m[static_cast<size_t>(5 * k)] += c;
    m[static_cast<size_t>(4 * k + (3 - k))] += is;
  }
  return Unitary4(m);
}

Unitary4 round_operator(const Unitary2& alice, const Unitary2& bob, Entanglement eps) {
  const Unitary4 j = entangler(eps);
  return j.adjoint() * Unitary4::kron(alice, bob) * j;
}

TwoQubitState evolve_round(std::span<const std::pair<Unitary2, Unitary2>> ops, Entanglement eps) {
  if (ops.empty()) throw UsageError("evolve_round needs at least one action pair");
  const Unitary4 j = entangler(eps);
  TwoQubitState psi = j * TwoQubitState();
  for (const auto& [a, b] : ops) psi = Unitary4::kron(a, b) * psi;
  return j.adjoint() * psi;
}

Probabilities basis_probabilities(const TwoQubitState& state) {
  const double n = state.norm_squared();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9) {
    throw InvariantError("state norm^2 = " + std::to_string(n) + ", expected 1");
  }
  Probabilities p{};
  for (int k = 0; k < 4; ++k) p[static_cast<size_t>(k)] = std::norm(state.amplitude(k));
  return p;
}

double overlap_modulus(const TwoQubitState& a, const TwoQubitState& b) {
  Complex acc{};
  for (int k = 0; k < 4; ++k) acc += std::conj(a.amplitude(k)) * b.amplitude(k);
  return std::abs(acc);
}

}  // namespace qrpd
