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

#include "qrpd/meta.hpp"

#include <array>
#include <utility>

#include "qrpd/error.hpp"

namespace qrpd {
namespace {

struct TableEntry {
  TabulatedPair pair;
  const char* first;
  const char* second;
  Protocol protocol;
  bool consistent;
};

constexpr std::array<TableEntry, 12> kTable{{
    {TabulatedPair::kClassicalTftAlld, "TFT", "ALLD", Protocol::kClassical, true},
    {TabulatedPair::kCtftAllq, "CTFT", "ALLQ", Protocol::kAccumulated, false},
    {TabulatedPair::kCtftAlld, "CTFT", "ALLD", Protocol::kAccumulated, true},
    {TabulatedPair::kCtftAllh, "CTFT", "ALLH", Protocol::kAccumulated, true},
    {TabulatedPair::kQtftAllc, "QTFT", "ALLC", Protocol::kAccumulated, true},
    {TabulatedPair::kQtftAlld, "QTFT", "ALLD", Protocol::kAccumulated, true},
    {TabulatedPair::kQtftAllh, "QTFT", "ALLH", Protocol::kAccumulated, true},
    {TabulatedPair::kAllcAllq, "ALLC", "ALLQ", Protocol::kAccumulated, true},
    {TabulatedPair::kAlldAllq, "ALLD", "ALLQ", Protocol::kAccumulated, true},
    {TabulatedPair::kAllcAllh, "ALLC", "ALLH", Protocol::kAccumulated, true},
    {TabulatedPair::kAllcAllr3, "ALLC", "ALLR3", Protocol::kAccumulated, false},
    {TabulatedPair::kAlldAllr3, "ALLD", "ALLR3", Protocol::kAccumulated, false},
}};

const TableEntry& entry(TabulatedPair pair) {
  for (const auto& e : kTable)
    if (e.pair == pair) return e;
  throw LookupError("unknown tabulated pair");
}

bool starts_strategy(char c) { return c == 'A' || c == 'C' || c == 'Q' || c == 'T'; }

PayoffMatrix2 make(double a11, double a12, double a21, double a22) {
  PayoffMatrix2 m;
  m.a = {{{a11, a12}, {a21, a22}}};
  return m;
}

}  // namespace

std::string MetaPair::label() const { return first.label() + "-" + second.label(); }

MetaPair parse_pair(std::string_view text) {
  size_t cut = std::string_view::npos;
  for (size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == '-' && starts_strategy(text[i + 1])) {
      cut = i;
      break;
    }
  }
  if (cut == std::string_view::npos) {
    throw LookupError("pair must look like 'CTFT-ALLD', got '" + std::string(text) + "'");
  }
  MetaPair p{parse_strategy(text.substr(0, cut)), parse_strategy(text.substr(cut + 1))};
  if (p.first.name == "TFT" || p.second.name == "TFT") p.protocol = Protocol::kClassical;
  return p;
}

const std::vector<TabulatedPair>& all_tabulated_pairs() {
  static const std::vector<TabulatedPair> pairs = [] {
    std::vector<TabulatedPair> v;
    for (const auto& e : kTable) v.push_back(e.pair);
    return v;
  }();
  return pairs;
}

MetaPair tabulated_meta_pair(TabulatedPair pair) {
  const auto& e = entry(pair);
  return {parse_strategy(e.first), parse_strategy(e.second), e.protocol};
}

std::optional<TabulatedMatch> find_tabulated(const MetaPair& pair) {
  for (const auto& e : kTable) {
    if (e.protocol != pair.protocol) continue;
    if (pair.first.name == e.first && pair.second.name == e.second) return TabulatedMatch{e.pair, false};
    if (pair.first.name == e.second && pair.second.name == e.first) return TabulatedMatch{e.pair, true};
  }
  return std::nullopt;
}

bool published_form_consistent(TabulatedPair pair) { return entry(pair).consistent; }

PayoffMatrix2 closed_form_meta_matrix(TabulatedPair pair, DiscountFactor wf, Entanglement eps,
                                      const GamePayoffs& g) {
  const double w = wf.value();
  const double c = eps.cos2_2eps();
  const double s = eps.sin2_2eps();
  const double R = g.R, S = g.S, T = g.T, P = g.P;
  const double d1 = 1.0 - w;
  const double d2 = 1.0 - w * w;
  const double d3 = 1.0 - w * w * w;
  PayoffMatrix2 m;
  switch (pair) {
    case TabulatedPair::kClassicalTftAlld:
      m = make(R / d1, S + w * P / d1, T + w * P / d1, P / d1);
      break;
    case TabulatedPair::kCtftAllq: {
      const double off = (P * s + R * c + w * R) / d2;
      m = make(R / d1, off, off, R / d1);
      break;
    }
    case TabulatedPair::kCtftAlld:
      m = make(R / d1, (S + w * T) / d2, (T + w * S) / d2, (P + w * R) / d2);
      break;
    case TabulatedPair::kCtftAllh:
      m = make(R / d1,
               (c * (R * (1 + w) + S + w * T) + s * (P * (1 + w) + w * S + T)) / (2 * d2),
               (c * (R * (1 + w) + T + w * S) + s * (P * (1 + w) + w * T + S)) / (2 * d2),
               ((R + S + T + P) + 4 * w * R) / (4 * d2));
      break;
    case TabulatedPair::kQtftAllc: {
      const double off = (R * c + P * s) / d1;
      m = make(R / d1, off, off, R / d1);
      break;
    }
    case TabulatedPair::kQtftAlld:
      m = make(R / d1, ((S + w * T) * c + (w * S + T) * s) / d2, ((T + w * S) * c + (w * T + S) * s) / d2,
               (P + w * R) / d2);
      break;
    case TabulatedPair::kQtftAllh:
      m = make(R / d1, (R * (1 + w) + S + w * T) / (2 * d2), (R * (1 + w) + T + w * S) / (2 * d2),
               ((R + S + T + P) / 4 + w * R) / d2);
      break;
    case TabulatedPair::kAllcAllq:
      m = make(R / d1, (P * s + R * c + R * w) / d2, (P * s + R * c + w * R) / d2, R / d1);
      break;
    case TabulatedPair::kAlldAllq:
      m = make((P + w * R) / d2, (S * s + T * c + w * R) / d2, (T * s + S * c + w * R) / d2, R / d1);
      break;
    case TabulatedPair::kAllcAllh:
      m = make(R / d1, ((R + S) * c + (T + P) * s + 2 * w * R) / (2 * d2),
               ((R + T) * c + (S + P) * s + 2 * w * R) / (2 * d2), ((R + S + T + P) / 4 + w * R) / d2);
      break;
    case TabulatedPair::kAllcAllr3:
      m = make(R / d1, ((R + 3 * S) * (1 + w) + w * w * R) / (4 * d3),
               ((R + 3 * T) * (1 + w) + w * w * R) / (4 * d3),
               (R + 3 * S + 3 * T + 9 * P) * (1 + w + w * w) / (16 * d3));
      break;
    case TabulatedPair::kAlldAllr3:
      m = make((P + w * R) / d2, ((T + 3 * P) + w * (R + 3 * S) + w * w * R) / (4 * d3),
               ((S + 3 * P) + w * (R + 3 * T) + w * w * R) / (4 * d3),
               (R + 3 * S + 3 * T + 9 * P) * (1 + w + w * w) / (16 * d3));
      break;
  }
  const auto& e = entry(pair);
  m.labels = {e.first, e.second};
  return m;
}

PayoffMatrix2 closed_form_meta_matrix(const MetaPair& pair, DiscountFactor w, Entanglement eps,
                                      const GamePayoffs& g) {
  const auto match = find_tabulated(pair);
  if (!match) throw UnsupportedError("no closed form for " + pair.label());
  const PayoffMatrix2 m = closed_form_meta_matrix(match->pair, w, eps, g);
  return match->swapped ? m.swapped() : m;
}

PayoffMatrix2 engine_meta_matrix(const MetaPair& pair, DiscountFactor w, Entanglement eps,
                                 const GamePayoffs& g) {
  return MetaCycles(pair, eps, g).matrix(w);
}

MetaCycles::MetaCycles(const MetaPair& pair, Entanglement eps, const GamePayoffs& g)
    : labels_{pair.first.label(), pair.second.label()}, pair_(pair), eps_(eps), g_(g) {
  const std::array<const RepeatedStrategy*, 2> s{&pair.first, &pair.second};
  for (size_t r = 0; r < 2; ++r)
    for (size_t c = 0; c < 2; ++c) {
      try {
        cycles_[r][c] = payoff_cycle(*s[r], *s[c], eps, g, kDefaultPeriodSearch, pair.protocol);
      } catch (const UnsupportedError&) {
        cycles_[r][c].reset();
      }
    }
}

PayoffMatrix2 MetaCycles::matrix(DiscountFactor w) const {
  const std::array<const RepeatedStrategy*, 2> s{&pair_.first, &pair_.second};
  PayoffMatrix2 m;
  m.labels = labels_;
  for (size_t r = 0; r < 2; ++r)
    for (size_t c = 0; c < 2; ++c) {
      m.a[r][c] = cycles_[r][c]
                      ? discounted_sum(*cycles_[r][c], w).alice
                      : truncated_payoff(*s[r], *s[c], eps_, g_, w, 1e-12, pair_.protocol).value.alice;
    }
  return m;
}

}  // namespace qrpd
