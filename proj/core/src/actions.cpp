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

#include "qrpd/actions.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "qrpd/error.hpp"

namespace qrpd {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Parses "a/b", "a" or "" (meaning 1) as a rational coefficient.
std::optional<double> parse_coefficient(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = parse_number(s.substr(0, slash));
    const auto den = parse_number(s.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  return parse_number(s);
}

}  // namespace

std::string ActionTriple::label() const {
  if (!name.empty()) return name;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", theta, alpha, phi);
  return buf;
}

ActionTriple named_action(std::string_view name) {
  if (name == "C") return {0.0, 0.0, 0.0, "C"};
  if (name == "D") return {kPi, kPi / 2.0, 0.0, "D"};
  if (name == "Q") return {kPi, 0.0, 0.0, "Q"};
  if (name == "H") return {kPi, kPi / 4.0, kPi / 2.0, "H"};
  if (name == "R3") return {2.0 * kPi / 3.0, kPi / 2.0, 0.0, "R3"};
  throw LookupError("unknown action '" + std::string(name) + "' (expected C, D, Q, H or R3)");
}

double parse_angle(std::string_view text) {
  const std::string_view s = trim(text);
  if (const auto p = s.find("pi"); p != std::string_view::npos) {
    // Forms: [coef]pi[/den]  or  coef pi
    const std::string_view before = s.substr(0, p);
    std::string_view after = trim(s.substr(p + 2));
    const auto coef = parse_coefficient(before);
    double den = 1.0;
    if (!after.empty()) {
      if (after.front() != '/') throw ParameterError("malformed angle '" + std::string(text) + "'");
      const auto d = parse_number(after.substr(1));
      if (!d || *d == 0.0) throw ParameterError("malformed angle '" + std::string(text) + "'");
      den = *d;
    }
    if (!coef) throw ParameterError("malformed angle '" + std::string(text) + "'");
    const double v = *coef * kPi / den;
    if (!std::isfinite(v)) throw ParameterError("angle is not finite: '" + std::string(text) + "'");
    return v;
  }
  const auto v = parse_number(s);
  if (!v || !std::isfinite(*v)) throw ParameterError("malformed angle '" + std::string(text) + "'");
  return *v;
}

ActionTriple parse_action(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.find(',') == std::string_view::npos) return named_action(s);
  std::array<double, 3> v{};
  std::string_view rest = s;
  for (size_t i = 0; i < 3; ++i) {
    const auto comma = rest.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) {
      throw ParameterError("raw action must be 'theta,alpha,phi', got '" + std::string(text) + "'");
    }
    v[i] = parse_angle(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return {v[0], v[1], v[2], ""};
}

bool two_param_membership(const ActionTriple& a, TwoParamSubspace space) {
  const double c2 = std::pow(std::cos(a.theta / 2.0), 2);
  const double s2 = std::pow(std::sin(a.theta / 2.0), 2);
  const double ca2 = std::pow(std::cos(a.alpha), 2);
  const double sa2 = std::pow(std::sin(a.alpha), 2);
  const double sp2 = std::pow(std::sin(a.phi), 2);
  const double cp2 = std::pow(std::cos(a.phi), 2);
  const double first = c2 + s2 * (ca2 + sp2 * sa2);
  const double second = c2 + s2 * (ca2 + cp2 * sa2);
  const bool in_first = std::abs(first - 1.0) <= 1e-12;
  const bool in_second = std::abs(second - 1.0) <= 1e-12;
  switch (space) {
    case TwoParamSubspace::kConventional: return in_first;
    case TwoParamSubspace::kCosineVariant: return in_second;
    case TwoParamSubspace::kEither: return in_first || in_second;
  }
  return false;
}

RationalAngle::RationalAngle(long long p, long long q) {
  if (q == 0) throw ParameterError("rational angle with zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const long long g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
}

double RationalAngle::radians() const {
  return static_cast<double>(p_) / static_cast<double>(q_) * 2.0 * kPi;
}

std::optional<RationalAngle> rational_of(double theta, long long max_q) {
  if (max_q < 1) throw UsageError("rational_of needs max_q >= 1");
  if (!std::isfinite(theta)) return std::nullopt;
  const double x = theta / (2.0 * kPi);
  // Convergents h/k of the continued fraction of x.
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(theta - static_cast<double>(h) / static_cast<double>(k) * 2.0 * kPi) < 1e-9) {
      return RationalAngle(h, k);
    }
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const double a = std::floor(inv);
    frac = inv - a;
    if (a > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long k_next = ai * k + k_prev;
    if (k_next > max_q) break;
    const long long h_next = ai * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

}  // namespace qrpd
