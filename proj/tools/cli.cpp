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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heatmap.hpp"
#include "qrpd/error.hpp"
#include "qrpd/meta.hpp"
#include "qrpd/nash.hpp"
#include "qrpd/stochastic.hpp"

namespace qrpd::cli {
namespace {

using Json = nlohmann::ordered_json;

// Thrown while turning flag strings into domain values; maps to exit 2.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
auto flag(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const qrpd::Error& e) {
    throw FlagError("--" + name + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// Decimal or "p/q".
double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos && text.find("pi") == std::string::npos) {
    const double num = parse_real(text.substr(0, slash));
    const double den = parse_real(text.substr(slash + 1));
    if (den == 0.0) throw ParameterError("zero denominator in '" + text + "'");
    return num / den;
  }
  return parse_angle(text);
}

GamePayoffs parse_payoffs(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw ParameterError("expected R,S,T,P, got '" + text + "'");
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3])};
}

GamePayoffs load_game_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    return {j.at("R").get<double>(), j.at("S").get<double>(), j.at("T").get<double>(), j.at("P").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("bad game file '" + path + "': " + e.what());
  }
}

// "C,D", "C,pi,0,0", "pi,0,0,D", "t,a,p,t,a,p".
std::pair<ActionTriple, ActionTriple> parse_action_pair(const std::string& text) {
  const auto tok = split(text, ',');
  std::vector<ActionTriple> acts;
  size_t i = 0;
  while (i < tok.size()) {
    bool named = true;
    try {
      acts.push_back(named_action(tok[i]));
    } catch (const LookupError&) {
      named = false;
    }
    if (named) {
      ++i;
      continue;
    }
    if (i + 3 > tok.size()) throw ParameterError("cannot parse actions '" + text + "'");
    acts.push_back(parse_action(tok[i] + "," + tok[i + 1] + "," + tok[i + 2]));
    i += 3;
  }
  if (acts.size() != 2) throw ParameterError("expected two actions, got '" + text + "'");
  return {acts[0], acts[1]};
}

Json pair_json(const PayoffPair& p) { return Json{{"alice", p.alice}, {"bob", p.bob}}; }

Json matrix_json(const PayoffMatrix2& m) {
  return Json::array({Json::array({m.a[0][0], m.a[0][1]}), Json::array({m.a[1][0], m.a[1][1]})});
}

Json game_json(const GamePayoffs& g) { return Json{{"R", g.R}, {"S", g.S}, {"T", g.T}, {"P", g.P}}; }

// Text output keeps 12 significant digits, so round-off residues of an exact
// zero are printed as 0.
std::string fmt(double v) {
  if (std::abs(v) < 1e-13) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

Protocol protocol_for(const std::string& choice, const RepeatedStrategy& a, const RepeatedStrategy& b) {
  if (choice == "accumulated") return Protocol::kAccumulated;
  if (choice == "classical") return Protocol::kClassical;
  return (a.name == "TFT" || b.name == "TFT") ? Protocol::kClassical : Protocol::kAccumulated;
}

const char* protocol_name(Protocol p) { return p == Protocol::kClassical ? "classical" : "accumulated"; }

MatrixSource source_for(const std::string& s) {
  if (s == "closed") return MatrixSource::kClosedForm;
  if (s == "engine") return MatrixSource::kEngine;
  return MatrixSource::kAuto;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot write '" + path + "'");
  body(f);
  if (!f) throw ResourceError("write failed for '" + path + "'");
}

struct Common {
  std::string payoffs = "3,0,5,1";
  std::string game_file;

  void attach(CLI::App* app) {
    app->add_option("--payoffs", payoffs, "R,S,T,P")->capture_default_str();
    app->add_option("--game", game_file, "JSON file {\"R\":..,\"S\":..,\"T\":..,\"P\":..}");
  }
  GamePayoffs game() const {
    if (!game_file.empty()) return flag("game", [&] { return load_game_json(game_file); });
    return flag("payoffs", [&] { return parse_payoffs(payoffs); });
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Repeated quantum prisoner's dilemma toolkit", "qrpd"};
  app.require_subcommand(1);

  // Each subcommand registers an action that runs after parsing.
  std::function<void()> action;

  // oneshot
  Common c_one;
  std::string one_actions, one_eps = "0";
  bool one_json = false;
  auto* one = app.add_subcommand("oneshot", "Expected payoffs of a single round");
  one->add_option("--actions", one_actions, "A,B: names (C,D,Q,H,R3) or theta,alpha,phi triples")->required();
  one->add_option("--epsilon", one_eps, "Entanglement in [0, pi/2]")->capture_default_str();
  one->add_flag("--json", one_json, "JSON output");
  c_one.attach(one);
  one->callback([&] {
    const auto [a, b] = flag("actions", [&] { return parse_action_pair(one_actions); });
    const Entanglement eps = flag("epsilon", [&] { return Entanglement(parse_angle(one_eps)); });
    const GamePayoffs g = c_one.game();
    action = [=, &out] {
      const PayoffPair p = one_shot_payoffs(a, b, eps, g);
      if (one_json) {
        emit(out, Json{{"alice_action", a.label()},
                       {"bob_action", b.label()},
                       {"epsilon", eps.value()},
                       {"game", game_json(g)},
                       {"alice", p.alice},
                       {"bob", p.bob}});
      } else {
        out << fmt(p.alice) << ' ' << fmt(p.bob) << '\n';
      }
    };
  });

  // repeated
  Common c_rep;
  std::string rep_a, rep_b, rep_w, rep_eps = "0", rep_mode = "truncated", rep_protocol = "auto";
  double rep_tol = 1e-12;
  long long rep_samples = 100000;
  std::uint64_t rep_seed = 0;
  int rep_limit = kDefaultPeriodSearch;
  bool rep_json = false;
  auto* rep = app.add_subcommand("repeated", "Discounted payoff of a repeated game");
  rep->add_option("--a", rep_a, "Alice's strategy")->required();
  rep->add_option("--b", rep_b, "Bob's strategy")->required();
  rep->add_option("--w", rep_w, "Discount factor in [0, 1)")->required();
  rep->add_option("--epsilon", rep_eps)->capture_default_str();
  rep->add_option("--mode", rep_mode)
      ->check(CLI::IsMember({"truncated", "periodic", "markov", "mc"}))
      ->capture_default_str();
  rep->add_option("--protocol", rep_protocol)
      ->check(CLI::IsMember({"auto", "accumulated", "classical"}))
      ->capture_default_str();
  rep->add_option("--tol", rep_tol, "Truncation tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  rep->add_option("--samples", rep_samples, "Monte Carlo episodes")->check(CLI::PositiveNumber)->capture_default_str();
  rep->add_option("--seed", rep_seed)->capture_default_str();
  rep->add_option("--limit", rep_limit, "Period search limit")->check(CLI::PositiveNumber)->capture_default_str();
  rep->add_flag("--json", rep_json, "JSON output");
  c_rep.attach(rep);
  rep->callback([&] {
    const auto a = flag("a", [&] { return parse_strategy(rep_a); });
    const auto b = flag("b", [&] { return parse_strategy(rep_b); });
    const auto w = flag("w", [&] { return DiscountFactor(parse_real(rep_w)); });
    const auto eps = flag("epsilon", [&] { return Entanglement(parse_angle(rep_eps)); });
    const GamePayoffs g = c_rep.game();
    const Protocol proto = protocol_for(rep_protocol, a, b);
    if ((rep_mode == "markov" || rep_mode == "mc") && proto == Protocol::kClassical) {
      throw FlagError("--mode " + rep_mode + " needs the accumulated protocol");
    }
    action = [=, &out] {
      Json j{{"a", a.label()}, {"b", b.label()}, {"w", w.value()}, {"epsilon", eps.value()},
             {"game", game_json(g)}, {"mode", rep_mode}, {"protocol", protocol_name(proto)}};
      PayoffPair value;
      if (rep_mode == "truncated") {
        const auto t = truncated_payoff(a, b, eps, g, w, rep_tol, proto);
        value = t.value;
        j["tol"] = rep_tol;
        j["rounds_used"] = t.rounds_used;
      } else if (rep_mode == "periodic") {
        const auto cyc = payoff_cycle(a, b, eps, g, rep_limit, proto);
        value = discounted_sum(cyc, w);
        j["preperiod"] = cyc.period.preperiod;
        j["period"] = cyc.period.period;
      } else if (rep_mode == "markov") {
        if (a.kind != RepeatedStrategy::Kind::kConstant || b.kind != RepeatedStrategy::Kind::kConstant) {
          throw UnsupportedError("markov mode needs two constant strategies; use --mode mc");
        }
        value = markov_value(a.action, b.action, eps, g, w);
      } else {
        const auto est = monte_carlo_payoff(a, b, eps, g, w, MCConfig{rep_samples, rep_seed, 0});
        value = est.mean;
        j["samples"] = est.samples;
        j["seed"] = rep_seed;
        j["stderr"] = pair_json(est.stderr_of_mean);
      }
      j["alice"] = value.alice;
      j["bob"] = value.bob;
      if (rep_json) {
        emit(out, j);
        return;
      }
      out << fmt(value.alice) << ' ' << fmt(value.bob) << '\n';
      for (const auto& key : {"mode", "protocol", "tol", "rounds_used", "preperiod", "period", "samples", "seed"}) {
        if (!j.contains(key)) continue;
        const auto& v = j[key];
        out << key << ": " << (v.is_string() ? v.get<std::string>() : v.is_number_float() ? fmt(v.get<double>()) : v.dump())
            << '\n';
      }
      if (j.contains("stderr")) {
        out << "stderr: " << fmt(j["stderr"]["alice"].get<double>()) << ' ' << fmt(j["stderr"]["bob"].get<double>())
            << '\n';
      }
    };
  });

  // matrix
  Common c_mat;
  std::string mat_pair, mat_w, mat_eps = "0", mat_source = "auto";
  double mat_tie = kTieTolerance;
  auto* mat = app.add_subcommand("matrix", "2x2 meta-game matrix and strict-NE verdict (JSON)");
  mat->add_option("--pair", mat_pair, "e.g. CTFT-ALLD")->required();
  mat->add_option("--w", mat_w)->required();
  mat->add_option("--epsilon", mat_eps)->capture_default_str();
  mat->add_option("--source", mat_source)->check(CLI::IsMember({"auto", "closed", "engine"}))->capture_default_str();
  mat->add_option("--tie-tol", mat_tie)->check(CLI::NonNegativeNumber)->capture_default_str();
  c_mat.attach(mat);
  mat->callback([&] {
    const auto pair = flag("pair", [&] { return parse_pair(mat_pair); });
    const auto w = flag("w", [&] { return DiscountFactor(parse_real(mat_w)); });
    const auto eps = flag("epsilon", [&] { return Entanglement(parse_angle(mat_eps)); });
    const GamePayoffs g = c_mat.game();
    const MatrixSource src = source_for(mat_source);
    action = [=, &out] {
      const auto match = find_tabulated(pair);
      const bool closed = src == MatrixSource::kClosedForm ||
                          (src == MatrixSource::kAuto && match && published_form_consistent(match->pair));
      const PayoffMatrix2 m = closed ? closed_form_meta_matrix(pair, w, eps, g) : engine_meta_matrix(pair, w, eps, g);
      const auto ne = classify_strict_ne(m, mat_tie);
      emit(out, Json{{"pair", pair.label()},
                     {"labels", Json::array({m.labels[0], m.labels[1]})},
                     {"w", w.value()},
                     {"epsilon", eps.value()},
                     {"game", game_json(g)},
                     {"protocol", protocol_name(pair.protocol)},
                     {"source", closed ? "closed-form" : "engine"},
                     {"matrix", matrix_json(m)},
                     {"verdict", verdict_name(ne.verdict)},
                     {"first_margin", ne.first_margin},
                     {"second_margin", ne.second_margin}});
    };
  });

  // scan / reproduce share the grid writer.
  auto write_scan = [&out](const ScanGrid& grid, const std::string& csv, const std::string& svg) {
    if (csv.empty() || csv == "-") {
      write_scan_csv(grid, out);
    } else {
      write_file(csv, [&](std::ostream& f) { write_scan_csv(grid, f); });
    }
    if (!svg.empty()) write_file(svg, [&](std::ostream& f) { write_heatmap_svg(grid, f); });
  };

  Common c_scan;
  std::string scan_pair, scan_out, scan_svg, scan_wmax = "0.99", scan_source = "auto";
  int scan_ws = 128, scan_es = 128;
  double scan_tie = kTieTolerance;
  auto* scan = app.add_subcommand("scan", "Classify strict NE over a (w, epsilon) grid (CSV)");
  scan->add_option("--pair", scan_pair)->required();
  scan->add_option("--w-steps", scan_ws)->check(CLI::Range(2, 100000))->capture_default_str();
  scan->add_option("--eps-steps", scan_es)->check(CLI::Range(2, 100000))->capture_default_str();
  scan->add_option("--w-max", scan_wmax)->capture_default_str();
  scan->add_option("--out", scan_out, "CSV path; '-' or omitted for stdout");
  scan->add_option("--svg", scan_svg, "Heatmap path");
  scan->add_option("--source", scan_source)->check(CLI::IsMember({"auto", "closed", "engine"}))->capture_default_str();
  scan->add_option("--tie-tol", scan_tie)->check(CLI::NonNegativeNumber)->capture_default_str();
  c_scan.attach(scan);
  scan->callback([&] {
    const auto pair = flag("pair", [&] { return parse_pair(scan_pair); });
    const double wmax = flag("w-max", [&] { return DiscountFactor(parse_real(scan_wmax)).value(); });
    const GamePayoffs g = c_scan.game();
    const MatrixSource src = source_for(scan_source);
    action = [=] {
      write_scan(scan_region(pair, g, scan_ws, scan_es, wmax, scan_tie, src), scan_out, scan_svg);
    };
  });

  std::string fig_name, fig_out, fig_svg;
  int fig_ws = 256, fig_es = 256;
  auto* fig = app.add_subcommand("reproduce", "Scan with a figure's parameters (R,S,T,P = 3,0,5,1)");
  fig->add_option("--figure", fig_name)
      ->required()
      ->check(CLI::IsMember({"1", "3a", "3b", "4a", "4b", "5", "6a", "6b"}));
  fig->add_option("--w-steps", fig_ws)->check(CLI::Range(2, 100000))->capture_default_str();
  fig->add_option("--eps-steps", fig_es)->check(CLI::Range(2, 100000))->capture_default_str();
  fig->add_option("--out", fig_out, "CSV path; '-' or omitted for stdout");
  fig->add_option("--svg", fig_svg, "Heatmap path");
  fig->callback([&] {
    const FigureSpec spec = flag("figure", [&] { return figure_spec(fig_name); });
    action = [=] {
      write_scan(scan_region(spec.pair, spec.game, fig_ws, fig_es), fig_out, fig_svg);
    };
  });

  // stochastic
  Common c_sto;
  std::string sto_a, sto_b, sto_w, sto_eps = "0";
  long long sto_samples = 0;
  std::uint64_t sto_seed = 0;
  auto* sto = app.add_subcommand("stochastic", "Basis-state transition model (JSON)");
  sto->add_option("--a", sto_a, "Alice's strategy")->required();
  sto->add_option("--b", sto_b, "Bob's strategy")->required();
  sto->add_option("--w", sto_w)->required();
  sto->add_option("--epsilon", sto_eps)->capture_default_str();
  sto->add_option("--samples", sto_samples, "Also run Monte Carlo with this many episodes")
      ->check(CLI::NonNegativeNumber);
  sto->add_option("--seed", sto_seed)->capture_default_str();
  c_sto.attach(sto);
  sto->callback([&] {
    const auto a = flag("a", [&] { return parse_strategy(sto_a); });
    const auto b = flag("b", [&] { return parse_strategy(sto_b); });
    const auto w = flag("w", [&] { return DiscountFactor(parse_real(sto_w)); });
    const auto eps = flag("epsilon", [&] { return Entanglement(parse_angle(sto_eps)); });
    const GamePayoffs g = c_sto.game();
    action = [=, &out] {
      Json j{{"a", a.label()}, {"b", b.label()}, {"w", w.value()}, {"epsilon", eps.value()}, {"game", game_json(g)}};
      const bool constant =
          a.kind == RepeatedStrategy::Kind::kConstant && b.kind == RepeatedStrategy::Kind::kConstant;
      if (constant) {
        const auto table = propagator_matrix(a.action, b.action, eps);
        Json trans = Json::array(), amp = Json::array();
        for (int from = 0; from < 4; ++from) {
          Json trow = Json::array(), arow = Json::array();
          for (int to = 0; to < 4; ++to) {
            trow.push_back(table.transition[from][to]);
            const Complex z = table.amplitude[from][to];
            arow.push_back(Json::array({z.real(), z.imag()}));
          }
          trans.push_back(trow);
          amp.push_back(arow);
        }
        j["basis"] = Json::array({"00", "01", "10", "11"});
        j["transition"] = trans;
        j["amplitude"] = amp;
        j["markov_value"] = pair_json(markov_value(a.action, b.action, eps, g, w));
      }
      const auto cmp = compare_models(a, b, eps, g, w);
      j["unitary_value"] = pair_json(cmp.unitary_value);
      j["collapse_value"] = pair_json(cmp.collapse_value);
      j["difference"] = pair_json(cmp.difference);
      j["basis_states_only"] = cmp.basis_states_only;
      if (sto_samples > 0) {
        const auto est = monte_carlo_payoff(a, b, eps, g, w, MCConfig{sto_samples, sto_seed, 0});
        j["monte_carlo"] = Json{{"samples", est.samples}, {"seed", sto_seed}, {"mean", pair_json(est.mean)},
                                {"stderr", pair_json(est.stderr_of_mean)}};
      }
      emit(out, j);
    };
  });

  // period
  std::string per_a, per_b, per_eps = "0", per_protocol = "auto";
  int per_limit = kDefaultPeriodSearch;
  auto* per = app.add_subcommand("period", "Detect the period of the round probabilities (JSON)");
  per->add_option("--a", per_a)->required();
  per->add_option("--b", per_b)->required();
  per->add_option("--epsilon", per_eps)->capture_default_str();
  per->add_option("--limit", per_limit)->check(CLI::Range(1, static_cast<int>(kMaxRounds)))->capture_default_str();
  per->add_option("--protocol", per_protocol)
      ->check(CLI::IsMember({"auto", "accumulated", "classical"}))
      ->capture_default_str();
  per->callback([&] {
    const auto a = flag("a", [&] { return parse_strategy(per_a); });
    const auto b = flag("b", [&] { return parse_strategy(per_b); });
    const auto eps = flag("epsilon", [&] { return Entanglement(parse_angle(per_eps)); });
    const Protocol proto = protocol_for(per_protocol, a, b);
    action = [=, &out] {
      const PeriodInfo info = detect_period(a, b, eps, per_limit, proto);
      if (info.periodic) {
        emit(out, Json{{"preperiod", info.preperiod}, {"period", info.period}});
      } else {
        emit(out, Json{{"periodic", false}, {"searched", info.searched}});
      }
    };
  });

  // CLI11 wants argv order with the program name first, reversed.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;  // --help is not an error
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    action();
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out.flush();
  return 0;
}

}  // namespace qrpd::cli
