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

#include "qrpd/stochastic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "qrpd/error.hpp"
#include "qrpd/parallel.hpp"
#include "round_simulator.hpp"

namespace qrpd {
namespace {

TransitionMatrix transition_of(const Unitary4& round_op) {
  TransitionMatrix t{};
  for (int from = 0; from < 4; ++from)
    for (int to = 0; to < 4; ++to) t[from][to] = std::norm(round_op.at(to, from));
  return t;
}

// Rounds needed before the discounted tail drops below tol.
long long horizon(const GamePayoffs& g, double w, double tol) {
  const double scale = g.max_abs() / (1.0 - w);
  long long m = 1;
  for (double weight = w; weight * scale >= tol; weight *= w) {
    if (++m > kMaxRounds) throw ResourceError("discounted horizon exceeds 10^6 rounds");
  }
  return m;
}

// Per-round transition matrices for a reactive pair. Reactive strategies
// never look at outcomes, so the action sequence is fixed in advance.
struct RoundSchedule {
  std::array<std::array<TransitionMatrix, 2>, 2> transition{};  // [alice idx][bob idx]
  std::vector<std::pair<int, int>> actions;                     // per round
};

RoundSchedule schedule(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                       long long rounds) {
  RoundSchedule out;
  const std::array<Unitary2, 2> u{alice.action.unitary(), bob.action.unitary()};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.transition[a][b] = transition_of(round_operator(u[a], u[b], eps));
  detail::RoundSimulator sim(alice, bob, eps, Protocol::kClassical);
  out.actions.reserve(static_cast<size_t>(rounds));
  for (long long m = 0; m < rounds; ++m) {
    sim.step();
    out.actions.emplace_back(sim.alice_index(), sim.bob_index());
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Running mean and sum of squared deviations (Welford), mergeable in a fixed
// order (Chan et al.).
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * n * o.n / total;
    n = total;
  }

  double stderr_of_mean() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

struct BlockSums {
  Moments alice, bob;
};

}  // namespace

PropagatorTable propagator_matrix(const ActionTriple& alice, const ActionTriple& bob, Entanglement eps) {
  const Unitary4 op = round_operator(alice.unitary(), bob.unitary(), eps);
  PropagatorTable out;
  for (int from = 0; from < 4; ++from)
    for (int to = 0; to < 4; ++to) out.amplitude[from][to] = op.at(to, from);
  out.transition = transition_of(op);
  return out;
}

PayoffPair markov_value(const ActionTriple& alice, const ActionTriple& bob, Entanglement eps,
                        const GamePayoffs& g, DiscountFactor w) {
  const TransitionMatrix t = propagator_matrix(alice, bob, eps).transition;
  Eigen::Matrix4d p;
  Eigen::Vector4d ra, rb;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) p(i, j) = t[i][j];
    ra(i) = g.alice(i / 2, i % 2);
    rb(i) = g.bob(i / 2, i % 2);
  }
  const Eigen::Matrix4d system = Eigen::Matrix4d::Identity() - w.value() * p;
  const auto lu = system.partialPivLu();
  const Eigen::Vector4d va = lu.solve(p * ra);
  const Eigen::Vector4d vb = lu.solve(p * rb);
  if (!va.allFinite() || !vb.allFinite()) throw InvariantError("Markov value solve produced non-finite values");
  return {va(0), vb(0)};
}

PayoffPair collapse_value(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                          const GamePayoffs& g, DiscountFactor w, double tol) {
  if (!(tol > 0.0)) throw UsageError("truncation tolerance must be positive");
  const long long rounds = horizon(g, w.value(), tol);
  const RoundSchedule sched = schedule(alice, bob, eps, rounds);
  Probabilities dist{1.0, 0.0, 0.0, 0.0};
  PayoffPair total;
  double weight = 1.0;
  for (const auto& [a, b] : sched.actions) {
    const TransitionMatrix& t = sched.transition[a][b];
    Probabilities next{};
    for (int from = 0; from < 4; ++from)
      for (int to = 0; to < 4; ++to) next[to] += dist[from] * t[from][to];
    dist = next;
    const PayoffPair r = expected_payoffs(dist, g);
    total.alice += weight * r.alice;
    total.bob += weight * r.bob;
    weight *= w.value();
  }
  return total;
}

MCEstimate monte_carlo_payoff(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                              const GamePayoffs& g, DiscountFactor w, const MCConfig& cfg) {
  if (cfg.samples < 1) throw UsageError("Monte Carlo needs at least one sample");
  const long long rounds = horizon(g, w.value(), 1e-10);
  const RoundSchedule sched = schedule(alice, bob, eps, rounds);

  // Cumulative rows for inverse-CDF sampling.
  std::array<std::array<std::array<std::array<double, 4>, 4>, 2>, 2> cdf{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int from = 0; from < 4; ++from) {
        double acc = 0.0;
        for (int to = 0; to < 4; ++to) {
          acc += sched.transition[a][b][from][to];
          cdf[a][b][from][to] = acc;
        }
      }

  const long long blocks = (cfg.samples + kSamplesPerStream - 1) / kSamplesPerStream;
  std::vector<BlockSums> sums(static_cast<size_t>(blocks));
  const double wv = w.value();
  parallel_for(
      static_cast<size_t>(blocks),
      [&](size_t block) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(block))));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const long long begin = static_cast<long long>(block) * kSamplesPerStream;
        const long long end = std::min(cfg.samples, begin + kSamplesPerStream);
        BlockSums bs;
        for (long long i = begin; i < end; ++i) {
          int state = 0;
          double weight = 1.0, va = 0.0, vb = 0.0;
          for (const auto& [a, b] : sched.actions) {
            const auto& row = cdf[a][b][state];
            const double u = unif(rng);
            int to = 3;
            for (int k = 0; k < 4; ++k) {
              if (u < row[k]) {
                to = k;
                break;
              }
            }
            // Guard against rounding leaving u above the last cumulative sum.
            while (to > 0 && sched.transition[a][b][state][to] == 0.0) --to;
            va += weight * g.alice(to / 2, to % 2);
            vb += weight * g.bob(to / 2, to % 2);
            weight *= wv;
            state = to;
          }
          bs.alice.add(va);
          bs.bob.add(vb);
        }
        sums[block] = bs;
      },
      cfg.threads);

  BlockSums total;
  for (const auto& bs : sums) {
    total.alice.merge(bs.alice);
    total.bob.merge(bs.bob);
  }
  MCEstimate est;
  est.samples = cfg.samples;
  est.mean = {total.alice.mean, total.bob.mean};
  est.stderr_of_mean = {total.alice.stderr_of_mean(), total.bob.stderr_of_mean()};
  return est;
}

ModelComparison compare_models(const RepeatedStrategy& alice, const RepeatedStrategy& bob, Entanglement eps,
                               const GamePayoffs& g, DiscountFactor w) {
  ModelComparison out;
  const TruncatedPayoff unitary = truncated_payoff(alice, bob, eps, g, w, 1e-12);
  out.unitary_value = unitary.value;
  out.collapse_value = collapse_value(alice, bob, eps, g, w, 1e-12);
  out.difference = {out.unitary_value.alice - out.collapse_value.alice,
                    out.unitary_value.bob - out.collapse_value.bob};
  out.basis_states_only = true;
  for (const auto& r : trace(alice, bob, eps, g, unitary.rounds_used).rounds) {
    double top = 0.0;
    for (double p : r.probabilities) top = std::max(top, p);
    if (top < 1.0 - 1e-12) {
      out.basis_states_only = false;
      break;
    }
  }
  return out;
}

}  // namespace qrpd
