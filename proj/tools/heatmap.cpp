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

#include "heatmap.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace qrpd::cli {
namespace {

const char* fill(NeVerdict v) {
  switch (v) {
    case NeVerdict::kFirst: return "#f2d21b";
    case NeVerdict::kSecond: return "#2f6fd6";
    case NeVerdict::kBoth: return "#3aa655";
    case NeVerdict::kNeither: return "#ffffff";
  }
  return "#ffffff";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '&') o += "&amp;";
    else if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else o += c;
  }
  return o;
}

}  // namespace

void write_heatmap_svg(const ScanGrid& grid, std::ostream& out) {
  const size_t nw = grid.w_axis.size();
  const size_t ne = grid.eps_axis.size();
  constexpr double kPlot = 480.0, kLeft = 70.0, kTop = 40.0, kLegend = 150.0;
  const double cw = kPlot / static_cast<double>(ne);
  const double ch = kPlot / static_cast<double>(nw);
  const double width = kLeft + kPlot + kLegend, height = kTop + kPlot + 60.0;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<title>" << escape(grid.pair_label) << "</title>\n";
  out << "<text x=\"" << num(kLeft + kPlot / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(grid.pair_label) << "</text>\n";
  out << "<g shape-rendering=\"crispEdges\" stroke=\"none\">\n";
  // Row iw=0 (w=0) sits at the bottom.
  for (size_t iw = 0; iw < nw; ++iw) {
    const double y = kTop + kPlot - static_cast<double>(iw + 1) * ch;
    // Merge horizontal runs of equal class to keep the file small.
    size_t ie = 0;
    while (ie < ne) {
      const NeVerdict v = grid.at(iw, ie).ne.verdict;
      size_t end = ie + 1;
      while (end < ne && grid.at(iw, end).ne.verdict == v) ++end;
      if (v != NeVerdict::kNeither) {
        out << "<rect x=\"" << num(kLeft + static_cast<double>(ie) * cw) << "\" y=\"" << num(y) << "\" width=\""
            << num(static_cast<double>(end - ie) * cw) << "\" height=\"" << num(ch) << "\" fill=\"" << fill(v)
            << "\"/>\n";
      }
      ie = end;
    }
  }
  out << "</g>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlot) << "\" height=\""
      << num(kPlot) << "\" fill=\"none\" stroke=\"#000\"/>\n";

  // Ticks: five per axis.
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    const double eps = grid.eps_axis.front() + f * (grid.eps_axis.back() - grid.eps_axis.front());
    const double w = grid.w_axis.front() + f * (grid.w_axis.back() - grid.w_axis.front());
    const double x = kLeft + f * kPlot;
    const double y = kTop + kPlot - f * kPlot;
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + kPlot) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kTop + kPlot + 5) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + kPlot + 18) << "\" text-anchor=\"middle\">" << num(eps)
        << "</text>\n";
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(y) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(w)
        << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + kPlot / 2) << "\" y=\"" << num(kTop + kPlot + 40)
      << "\" text-anchor=\"middle\">epsilon</text>\n";
  out << "<text x=\"20\" y=\"" << num(kTop + kPlot / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << num(kTop + kPlot / 2) << ")\">w</text>\n";

  const std::string first = escape(grid.labels[0]);
  const std::string second = escape(grid.labels[1]);
  const std::pair<NeVerdict, std::string> legend[] = {
      {NeVerdict::kFirst, first + " strict NE"},
      {NeVerdict::kSecond, second + " strict NE"},
      {NeVerdict::kBoth, "both"},
      {NeVerdict::kNeither, "neither"},
  };
  double ly = kTop + 10;
  for (const auto& [v, text] : legend) {
    out << "<rect x=\"" << num(kLeft + kPlot + 15) << "\" y=\"" << num(ly) << "\" width=\"14\" height=\"14\" fill=\""
        << fill(v) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << num(kLeft + kPlot + 35) << "\" y=\"" << num(ly + 11) << "\">" << text << "</text>\n";
    ly += 22;
  }
  out << "</svg>\n";
}

}  // namespace qrpd::cli
