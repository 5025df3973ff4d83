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

#include "qrpd/nash.hpp"

#include <cstdio>
#include <optional>
#include <ostream>
#include <set>

#include "qrpd/error.hpp"
#include "qrpd/parallel.hpp"

namespace qrpd {
namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

}  // namespace

std::string_view verdict_name(NeVerdict v) {
  switch (v) {
    case NeVerdict::kFirst: return "FIRST";
    case NeVerdict::kSecond: return "SECOND";
    case NeVerdict::kBoth: return "BOTH";
    case NeVerdict::kNeither: return "NEITHER";
  }
  return "NEITHER";
}

NEClassification classify_strict_ne(const PayoffMatrix2& m, double tie_tol) {
  NEClassification c;
  c.first_margin = m(0, 0) - m(1, 0);
  c.second_margin = m(1, 1) - m(0, 1);
  const bool first = c.first_margin > tie_tol;
  const bool second = c.second_margin > tie_tol;
  c.verdict = first ? (second ? NeVerdict::kBoth : NeVerdict::kFirst)
                    : (second ? NeVerdict::kSecond : NeVerdict::kNeither);
  return c;
}

double analytic_margin(const MetaPair& pair, std::string_view strategy, DiscountFactor wf, Entanglement eps,
                       const GamePayoffs& g) {
  const std::string a = pair.first.name;
  const std::string b = pair.second.name;
  if (strategy != a && strategy != b) {
    throw LookupError("strategy '" + std::string(strategy) + "' is not part of " + pair.label());
  }
  const std::set<std::string> names{a, b};
  auto is = [&](const char* x, const char* y) { return names == std::set<std::string>{x, y}; };
  const bool classical = pair.protocol == Protocol::kClassical;
  const double w = wf.value();
  const double c = eps.cos2_2eps();
  const double s = eps.sin2_2eps();
  const double R = g.R, S = g.S, T = g.T, P = g.P;

  if (classical && is("TFT", "ALLD")) {
    if (strategy == "TFT") return w - (T - R) / (T - P);
    return P - S;  // ALLD is always strict NE
  }
  if (!classical) {
    if (is("CTFT", "ALLD")) {
      if (strategy == "CTFT") return w - (T - R) / (R - S);
      return (P - S) / (T - R) - w;
    }
    if (is("CTFT", "ALLH")) {
      if (strategy == "CTFT") return w * (2 * R - (R + S) * c - (P + T) * s) - ((R + T) * c + (P + S) * s - 2 * R);
      return w * (2 * R - (R + T) * c - (P + S) * s) - ((R + S) * c + (P + T) * s - (R + S + T + P) / 2);
    }
    if (is("QTFT", "ALLD")) {
      if (strategy == "QTFT") return w * (R - S * c - T * s) - (T * c + S * s - R);
      return w * (R - S * s - T * c) - (S * c + T * s - P);
    }
    if (is("QTFT", "ALLH")) {
      if (strategy == "QTFT") return w - (T - R) / (R - S);
      return (T + P - R - S) / (2 * (T - R)) - w;
    }
    if (is("ALLD", "ALLQ")) {
      if (strategy == "ALLD") return (P - S) / (T - S) - s;
      return s - (T - R) / (T - S);
    }
    if (is("ALLD", "ALLH")) {
      if (strategy == "ALLD") return (P - S) / ((T - S) + (R - P)) - s;
      return s - 0.5;
    }
    if (is("ALLC", "ALLH")) {
      if (strategy == "ALLC") return s - (T - R) / ((T - S) + (R - P));
      return 0.5 - s;
    }
    // Diagonal R/(1-w) against an off-diagonal mixing R and P by epsilon.
    if (is("CTFT", "ALLQ") || is("QTFT", "ALLC") || is("ALLC", "ALLQ")) return (R - P) * s;
    // Every entry equal: no strict NE.
    if (is("CTFT", "ALLC") || is("QTFT", "ALLQ")) return 0.0;
    if (is("ALLC", "ALLR3")) {
      if (strategy == "ALLC") return w * w * R - w * (T - R) - (T - R);
      return w * w * ((T - R) + (S + 3 * P)) + w * ((T - R) + 3 * (P - S)) - ((R - T) + 3 * (S - P));
    }
    if (is("ALLD", "ALLR3")) {
      if (strategy == "ALLD") {
        return 3 * w * w * w * R + w * w * (2 * R + 4 * P - 3 * T) + w * (P - S - 3 * T - R) + (P - S);
      }
      return w * w * (S + T + 3 * P) + 3 * w * ((T - R) + 3 * (P - S)) - ((T - R) + 3 * (P - S));
    }
  }
  throw LookupError("no analytic strict-NE condition for " + pair.label());
}

bool analytic_condition(const MetaPair& pair, std::string_view strategy, DiscountFactor w, Entanglement eps,
                        const GamePayoffs& g) {
  return analytic_margin(pair, strategy, w, eps, g) > 0.0;
}

ScanGrid scan_region(const MetaPair& pair, const GamePayoffs& g, int w_steps, int eps_steps, double w_max,
                     double tie_tol, MatrixSource source, int threads) {
  if (w_steps < 2 || eps_steps < 2) throw UsageError("scan needs at least 2 steps per axis");
  DiscountFactor{w_max};  // validates w_max < 1
  const auto match = find_tabulated(pair);
  bool closed = false;
  switch (source) {
    case MatrixSource::kAuto: closed = match && published_form_consistent(match->pair); break;
    case MatrixSource::kClosedForm:
      if (!match) throw UnsupportedError("no closed form for " + pair.label());
      closed = true;
      break;
    case MatrixSource::kEngine: closed = false; break;
  }

  ScanGrid grid;
  grid.pair_label = pair.label();
  grid.labels = {pair.first.label(), pair.second.label()};
  grid.w_axis = linspace(0.0, w_max, w_steps);
  grid.eps_axis = linspace(0.0, kPi / 4.0, eps_steps);
  grid.cells.resize(static_cast<size_t>(w_steps) * static_cast<size_t>(eps_steps));
  const size_t ne = grid.eps_axis.size();

  // One task per epsilon column; round payoffs depend on epsilon only.
  parallel_for(
      ne,
      [&](size_t ie) {
        const Entanglement eps(grid.eps_axis[ie]);
        std::optional<MetaCycles> cycles;
        if (!closed) cycles.emplace(pair, eps, g);
        for (size_t iw = 0; iw < grid.w_axis.size(); ++iw) {
          const DiscountFactor w(grid.w_axis[iw]);
          const PayoffMatrix2 m = closed ? closed_form_meta_matrix(pair, w, eps, g) : cycles->matrix(w);
          ScanCell& cell = grid.cells[iw * ne + ie];
          cell.a = m.a;
          cell.ne = classify_strict_ne(m, tie_tol);
        }
      },
      threads);
  return grid;
}

void write_scan_csv(const ScanGrid& grid, std::ostream& out) {
  out << "w,epsilon,a11,a12,a21,a22,class\n";
  for (size_t iw = 0; iw < grid.w_axis.size(); ++iw)
    for (size_t ie = 0; ie < grid.eps_axis.size(); ++ie) {
      const ScanCell& c = grid.at(iw, ie);
      out << fmt12(grid.w_axis[iw]) << ',' << fmt12(grid.eps_axis[ie]) << ',' << fmt12(c.a[0][0]) << ','
          << fmt12(c.a[0][1]) << ',' << fmt12(c.a[1][0]) << ',' << fmt12(c.a[1][1]) << ','
          << verdict_name(c.ne.verdict) << '\n';
    }
}

ClassicalBaseline classical_baseline(const GamePayoffs& g, DiscountFactor w) {
  ClassicalBaseline out;
  out.matrix = closed_form_meta_matrix(TabulatedPair::kClassicalTftAlld, w, Entanglement(0.0), g);
  out.ne = classify_strict_ne(out.matrix);
  return out;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"1", "3a", "3b", "4a", "4b", "5", "6a", "6b"};
  return names;
}

FigureSpec figure_spec(std::string_view figure) {
  const char* pair = nullptr;
  if (figure == "1") pair = "TFT-ALLD";
  else if (figure == "3a") pair = "CTFT-ALLD";
  else if (figure == "3b") pair = "CTFT-ALLH";
  else if (figure == "4a") pair = "QTFT-ALLD";
  else if (figure == "4b") pair = "QTFT-ALLH";
  else if (figure == "5") pair = "ALLQ-ALLD";
  else if (figure == "6a") pair = "ALLH-ALLD";
  else if (figure == "6b") pair = "ALLH-ALLC";
  else throw LookupError("unknown figure '" + std::string(figure) + "'");
  return {std::string(figure), parse_pair(pair), kStandardGame};
}

}  // namespace qrpd
