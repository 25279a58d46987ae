// Copyright 2026 The fpa-equilibria Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpa/correlated.h"

#include <algorithm>
#include <cmath>

#include "fpa/lp.h"
#include "fpa/parallel.h"
#include "fpa/utility.h"

namespace fpa {
namespace {

using Dist = std::vector<double>;

// Win probability of every bid against independent opponents, in doubles.
std::vector<double> WinRow(const std::vector<Dist>& opponents, int num_bids) {
  std::vector<double> h(num_bids);
  std::vector<double> below(opponents.size(), 0.0);
  for (int b = 0; b < num_bids; ++b) {
    std::vector<double> t{1.0};
    for (size_t j = 0; j < opponents.size(); ++j) {
      double g = opponents[j][b];
      std::vector<double> next(t.size() + 1, 0.0);
      for (size_t r = 0; r < t.size(); ++r) {
        next[r] += t[r] * below[j];
        next[r + 1] += t[r] * g;
      }
      t = std::move(next);
    }
    double total = 0;
    for (size_t r = 0; r < t.size(); ++r) total += t[r] / (r + 1.0);
    h[b] = total;
    for (size_t j = 0; j < opponents.size(); ++j) below[j] += opponents[j][b];
  }
  return h;
}

// Stationary distribution of the row-stochastic matrix q.
Dist Stationary(const std::vector<Dist>& q) {
  int n = static_cast<int>(q.size());
  // Solve pi (Q - I) = 0 with sum(pi) = 1 as a transposed linear system.
  std::vector<Dist> m(n, Dist(n + 1, 0.0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m[r][c] = q[c][r] - (r == c ? 1.0 : 0.0);
  }
  for (int c = 0; c < n; ++c) m[n - 1][c] = 1.0;
  m[n - 1][n] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    std::swap(m[col], m[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      double f = m[r][col] / m[col][col];
      for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Dist pi(n);
  double total = 0;
  for (int r = 0; r < n; ++r) {
    pi[r] = std::max(0.0, m[r][n] / m[r][r]);
    total += pi[r];
  }
  for (double& x : pi) x /= total;
  return pi;
}

Distribution Snap(const Dist& d) {
  Distribution out;
  Rational total = 0;
  for (double x : d) {
    Rational r = x < 1e-6 ? Rational(0) : FromDouble(x, 1000000);
    out.push_back(r);
    total += r;
  }
  for (Rational& r : out) r /= total;
  return out;
}

}  // namespace

TypeAgentGame::TypeAgentGame(const AuctionInstance& a) : a_(a) {
  RequireValid(a_);
  for (int i = 0; i < a_.n; ++i) {
    offset_.push_back(static_cast<int>(players_.size()));
    for (int v = 0; v < a_.num_values(i); ++v) players_.push_back({i, v});
  }
}

TypeAgentGame BuildTypeAgent(const AuctionInstance& a) {
  return TypeAgentGame(a);
}

PureProfile TypeAgentGame::ProfileFromOutcome(
    const std::vector<int>& outcome) const {
  PureProfile profile(a_.n);
  for (int i = 0; i < a_.n; ++i) {
    for (int v = 0; v < a_.num_values(i); ++v) {
      profile[i].push_back(outcome[PlayerIndex(i, v)]);
    }
  }
  return profile;
}

double TypeAgentGame::OutcomeCountLog10() const {
  return num_players() * std::log10(static_cast<double>(num_actions()));
}

std::vector<Rational> TypeAgentGame::PayoffRow(
    int p, const std::vector<Distribution>& mixed) const {
  auto [i, v] = players_[p];
  std::vector<Distribution> opponents;
  for (int j = 0; j < a_.n; ++j) {
    if (j == i) continue;
    Distribution d(num_actions(), Rational(0));
    for (int w = 0; w < a_.num_values(j); ++w) {
      const Rational& f = a_.priors[i][j][w];
      if (f == 0) continue;
      const Distribution& m = mixed[PlayerIndex(j, w)];
      for (int b = 0; b < num_actions(); ++b) {
        if (m[b] != 0) d[b] += f * m[b];
      }
    }
    opponents.push_back(std::move(d));
  }
  std::vector<Rational> h = WinProbabilityRow(opponents, num_actions());
  std::vector<Rational> u(num_actions());
  for (int b = 0; b < num_actions(); ++b) {
    u[b] = (a_.values[i][v] - a_.bids[b]) * h[b];
  }
  return u;
}

Rational TypeAgentGame::Payoff(int p, const std::vector<int>& outcome) const {
  std::vector<Distribution> mixed;
  for (int q = 0; q < num_players(); ++q) {
    mixed.push_back(PointMass(num_actions(), outcome[q]));
  }
  return PayoffRow(p, mixed)[outcome[p]];
}

CorrelatedComponent OutcomeComponent(const TypeAgentGame& game,
                                     const std::vector<int>& outcome,
                                     const Rational& weight) {
  CorrelatedComponent c;
  c.weight = weight;
  for (int p = 0; p < game.num_players(); ++p) {
    c.marginals.push_back(PointMass(game.num_actions(), outcome[p]));
  }
  return c;
}

CorrelatedDistribution ProductDistribution(const TypeAgentGame& game,
                                           const MixedProfile& profile) {
  CorrelatedComponent c;
  c.weight = 1;
  for (int p = 0; p < game.num_players(); ++p) {
    auto [i, v] = game.player(p);
    c.marginals.push_back(profile[i][v]);
  }
  return {c};
}

CeRegret ComputeCeRegret(const TypeAgentGame& game,
                         const CorrelatedDistribution& dist) {
  int players = game.num_players();
  int actions = game.num_actions();
  std::vector<CeRegret> per_player(players);
  ParallelFor(players, [&](std::size_t idx) {
    int p = static_cast<int>(idx);
    std::vector<std::vector<Rational>> rows;
    for (const CorrelatedComponent& c : dist) {
      rows.push_back(game.PayoffRow(p, c.marginals));
    }
    CeRegret best;
    best.regret = 0;
    for (int s = 0; s < actions; ++s) {
      Rational mass = 0;
      for (const CorrelatedComponent& c : dist) mass += c.weight * c.marginals[p][s];
      if (mass == 0) continue;
      for (int t = 0; t < actions; ++t) {
        if (t == s) continue;
        Rational gain = 0;
        for (size_t k = 0; k < dist.size(); ++k) {
          Rational w = dist[k].weight * dist[k].marginals[p][s];
          if (w != 0) gain += w * (rows[k][t] - rows[k][s]);
        }
        gain /= mass;
        if (gain > best.regret) best = CeRegret{gain, p, s, t};
      }
    }
    per_player[idx] = best;
  });
  CeRegret overall;
  overall.regret = 0;
  for (const CeRegret& r : per_player) {
    if (r.regret > overall.regret) overall = r;
  }
  return overall;
}

CorrelatedDistribution SolveCeLp(const TypeAgentGame& game) {
  if (game.OutcomeCountLog10() > 6 + 1e-9) {
    throw InputError("joint distribution above 10^6 outcomes");
  }
  int players = game.num_players();
  int actions = game.num_actions();
  long long outcomes = 1;
  for (int p = 0; p < players; ++p) outcomes *= actions;
  std::vector<long long> stride(players, 1);
  for (int p = 1; p < players; ++p) stride[p] = stride[p - 1] * actions;
  auto decode = [&](long long o) {
    std::vector<int> s(players);
    for (int p = 0; p < players; ++p) s[p] = static_cast<int>((o / stride[p]) % actions);
    return s;
  };
  // payoff[o][p] for every outcome and player.
  std::vector<std::vector<Rational>> payoff(outcomes);
  ParallelFor(outcomes, [&](std::size_t o) {
    std::vector<int> s = decode(static_cast<long long>(o));
    for (int p = 0; p < players; ++p) payoff[o].push_back(game.Payoff(p, s));
  });
  Matrix a_le;
  std::vector<Rational> b_le;
  for (int p = 0; p < players; ++p) {
    for (int s = 0; s < actions; ++s) {
      for (int t = 0; t < actions; ++t) {
        if (t == s) continue;
        std::vector<Rational> row(outcomes, Rational(0));
        for (long long o = 0; o < outcomes; ++o) {
          if ((o / stride[p]) % actions != s) continue;
          long long dev = o + (t - s) * stride[p];
          row[o] = payoff[dev][p] - payoff[o][p];
        }
        a_le.push_back(std::move(row));
        b_le.push_back(0);
      }
    }
  }
  Matrix a_eq{std::vector<Rational>(outcomes, Rational(1))};
  std::vector<Rational> b_eq{Rational(1)};
  std::vector<Rational> c(outcomes, Rational(0));
  for (long long o = 0; o < outcomes; ++o) {
    for (int p = 0; p < players; ++p) c[o] += payoff[o][p];
  }
  LpResult lp = SolveLp(a_le, b_le, a_eq, b_eq, c);
  if (lp.status != LpResult::Status::kOptimal) {
    throw InputError("correlated equilibrium LP did not solve");
  }
  CorrelatedDistribution dist;
  for (long long o = 0; o < outcomes; ++o) {
    if (lp.x[o] != 0) dist.push_back(OutcomeComponent(game, decode(o), lp.x[o]));
  }
  return dist;
}

DynamicsResult SolveCeDynamics(const TypeAgentGame& game, const Rational& eps,
                               const DynamicsOptions& options) {
  if (eps <= 0) throw InputError("eps must be positive");
  const AuctionInstance& a = game.auction();
  int players = game.num_players();
  int actions = game.num_actions();
  std::vector<double> value(players);
  for (int p = 0; p < players; ++p) {
    auto [i, v] = game.player(p);
    value[p] = ToDouble(a.values[i][v]);
  }
  std::vector<double> bids;
  for (const Rational& b : a.bids) bids.push_back(ToDouble(b));
  // gains[p][x][b]: cumulative gain of b for the expert handling action x.
  std::vector<std::vector<Dist>> gains(players,
                                       std::vector<Dist>(actions, Dist(actions, 0.0)));
  std::vector<std::vector<Dist>> history;
  DynamicsResult result;
  int checkpoint = std::min(options.first_checkpoint, options.max_rounds);
  for (int round = 1;; ++round) {
    std::vector<Dist> play(players);
    for (int p = 0; p < players; ++p) {
      std::vector<Dist> q(actions, Dist(actions));
      for (int x = 0; x < actions; ++x) {
        double top = *std::max_element(gains[p][x].begin(), gains[p][x].end());
        double total = 0;
        for (int b = 0; b < actions; ++b) {
          q[x][b] = std::exp(options.eta * (gains[p][x][b] - top));
          total += q[x][b];
        }
        for (double& e : q[x]) e /= total;
      }
      play[p] = Stationary(q);
    }
    for (int p = 0; p < players; ++p) {
      auto [i, v] = game.player(p);
      std::vector<Dist> opponents;
      for (int j = 0; j < a.n; ++j) {
        if (j == i) continue;
        Dist d(actions, 0.0);
        for (int w = 0; w < a.num_values(j); ++w) {
          double f = ToDouble(a.priors[i][j][w]);
          for (int b = 0; b < actions; ++b) {
            d[b] += f * play[game.PlayerIndex(j, w)][b];
          }
        }
        opponents.push_back(std::move(d));
      }
      std::vector<double> h = WinRow(opponents, actions);
      for (int x = 0; x < actions; ++x) {
        for (int b = 0; b < actions; ++b) {
          gains[p][x][b] += play[p][x] * (value[p] - bids[b]) * h[b];
        }
      }
    }
    history.push_back(std::move(play));
    if (round < checkpoint) continue;
    // Average over the second half; early rounds are burn-in.
    int start = round / 2;
    int window = round - start;
    int stride = std::max(1, window / options.max_components);
    CorrelatedDistribution dist;
    for (int t = start; t < round; t += stride) {
      CorrelatedComponent c;
      for (const Dist& d : history[t]) c.marginals.push_back(Snap(d));
      dist.push_back(std::move(c));
    }
    for (CorrelatedComponent& c : dist) {
      c.weight = MakeRational(1, static_cast<long long>(dist.size()));
    }
    CeRegret regret = ComputeCeRegret(game, dist);
    result.trajectory.push_back({round, ToDouble(regret.regret)});
    if (regret.regret <= eps) {
      result.distribution = std::move(dist);
      result.regret = regret.regret;
      result.rounds = round;
      return result;
    }
    if (round >= options.max_rounds) {
      throw BudgetExhausted("dynamics ended with regret " +
                            ToString(regret.regret));
    }
    checkpoint = std::min(2 * checkpoint, options.max_rounds);
  }
}

}  // namespace fpa
