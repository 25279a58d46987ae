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

#include "fpa/utility.h"

#include <functional>

namespace fpa {
namespace {

std::vector<Distribution> Opponents(const AuctionInstance& a, int i,
                                    const MixedProfile& profile) {
  std::vector<Distribution> out;
  for (int j = 0; j < a.n; ++j) {
    if (j != i) out.push_back(OpponentBidDistribution(a, i, j, profile));
  }
  return out;
}

Rational Below(const Distribution& d, int b) {
  Rational s = 0;
  for (int k = 0; k < b; ++k) s += d[k];
  return s;
}

// H from per-opponent (g, G) pairs at one bid.
Rational WinFromMasses(const std::vector<Rational>& g,
                       const std::vector<Rational>& G) {
  // Opponents surely below drop out; sure ties only shift the divisor.
  // Everything else goes through the tie-table recurrence.
  int sure_ties = 0;
  std::vector<Rational> t{Rational(1)};
  for (size_t j = 0; j < g.size(); ++j) {
    if (g[j] == 0 && G[j] == 1) continue;
    if (g[j] == 0 && G[j] == 0) return Rational(0);
    if (g[j] == 1) {
      ++sure_ties;
      continue;
    }
    std::vector<Rational> next(t.size() + 1, Rational(0));
    for (size_t r = 0; r < t.size(); ++r) {
      if (t[r] == 0) continue;
      next[r] += t[r] * G[j];
      next[r + 1] += t[r] * g[j];
    }
    t = std::move(next);
  }
  Rational h = 0;
  for (size_t r = 0; r < t.size(); ++r) {
    if (t[r] != 0) h += t[r] / Rational(static_cast<long long>(r) + 1 + sure_ties);
  }
  return h;
}

}  // namespace

Distribution OpponentBidDistribution(const AuctionInstance& a, int i, int j,
                                     const MixedProfile& profile) {
  Distribution d(a.num_bids(), Rational(0));
  for (int v = 0; v < a.num_values(j); ++v) {
    const Rational& f = a.priors[i][j][v];
    if (f == 0) continue;
    for (int b = 0; b < a.num_bids(); ++b) {
      if (profile[j][v][b] != 0) d[b] += f * profile[j][v][b];
    }
  }
  return d;
}

BidMassTable BidMass(const AuctionInstance& a, int i,
                     const MixedProfile& profile) {
  BidMassTable t;
  t.g.resize(a.n);
  t.G.resize(a.n);
  for (int j = 0; j < a.n; ++j) {
    if (j == i) continue;
    t.g[j] = OpponentBidDistribution(a, i, j, profile);
    t.G[j].assign(a.num_bids(), Rational(0));
    for (int b = 1; b < a.num_bids(); ++b) {
      t.G[j][b] = t.G[j][b - 1] + t.g[j][b - 1];
    }
  }
  return t;
}

TieTableRows TieTable(const std::vector<Distribution>& opponents, int b) {
  size_t k = opponents.size();
  TieTableRows t(k + 1);
  t[0] = {Rational(1)};
  for (size_t l = 0; l < k; ++l) {
    Rational g = opponents[l][b];
    Rational G = Below(opponents[l], b);
    t[l + 1].assign(l + 2, Rational(0));
    t[l + 1][0] = t[l][0] * G;
    for (size_t r = 0; r <= l; ++r) {
      Rational next = t[l][r] * g;
      if (r + 1 <= l) next += t[l][r + 1] * G;
      t[l + 1][r + 1] = next;
    }
  }
  return t;
}

TieTableRows TieTable(const AuctionInstance& a, int i, int b,
                      const MixedProfile& profile) {
  return TieTable(Opponents(a, i, profile), b);
}

Rational WinProbability(const std::vector<Distribution>& opponents, int b) {
  std::vector<Rational> g, G;
  for (const Distribution& d : opponents) {
    g.push_back(d[b]);
    G.push_back(Below(d, b));
  }
  return WinFromMasses(g, G);
}

std::vector<Rational> WinProbabilityRow(
    const std::vector<Distribution>& opponents, int num_bids) {
  std::vector<Rational> h(num_bids);
  std::vector<Rational> g(opponents.size()), G(opponents.size(), Rational(0));
  for (int b = 0; b < num_bids; ++b) {
    for (size_t j = 0; j < opponents.size(); ++j) g[j] = opponents[j][b];
    h[b] = WinFromMasses(g, G);
    for (size_t j = 0; j < opponents.size(); ++j) G[j] += g[j];
  }
  return h;
}

Rational WinProb(const AuctionInstance& a, int i, int b,
                 const MixedProfile& profile) {
  return WinProbability(Opponents(a, i, profile), b);
}

std::vector<Rational> WinProbRow(const AuctionInstance& a, int i,
                                 const MixedProfile& profile) {
  return WinProbabilityRow(Opponents(a, i, profile), a.num_bids());
}

Rational InterimUtility(const AuctionInstance& a, int i, int v, int b,
                        const MixedProfile& profile) {
  Rational margin = a.values[i][v] - a.bids[b];
  if (margin == 0) return Rational(0);
  return margin * WinProb(a, i, b, profile);
}

std::vector<Rational> UtilityRow(const AuctionInstance& a, int i, int v,
                                 const MixedProfile& profile) {
  std::vector<Rational> h = WinProbRow(a, i, profile);
  std::vector<Rational> u(a.num_bids());
  for (int b = 0; b < a.num_bids(); ++b) {
    u[b] = (a.values[i][v] - a.bids[b]) * h[b];
  }
  return u;
}

Rational MixedUtility(const AuctionInstance& a, int i, int v,
                      const Distribution& gamma, const MixedProfile& profile) {
  std::vector<Rational> u = UtilityRow(a, i, v, profile);
  Rational total = 0;
  for (int b = 0; b < a.num_bids(); ++b) {
    if (gamma[b] != 0) total += gamma[b] * u[b];
  }
  return total;
}

Rational BruteForceUtility(const AuctionInstance& a, int i, int v, int b,
                           const MixedProfile& profile) {
  struct Outcome {
    Rational weight;
    Rational bid;
  };
  std::vector<std::vector<Outcome>> choices;
  double terms = 1;
  for (int j = 0; j < a.n; ++j) {
    if (j == i) continue;
    std::vector<Outcome> list;
    for (int vj = 0; vj < a.num_values(j); ++vj) {
      for (int bj = 0; bj < a.num_bids(); ++bj) {
        Rational w = a.priors[i][j][vj] * profile[j][vj][bj];
        if (w != 0) list.push_back({w, a.bids[bj]});
      }
    }
    terms *= static_cast<double>(list.size());
    choices.push_back(std::move(list));
  }
  if (terms > 1e7) throw InputError("brute-force utility above 10^7 terms");
  const Rational my_bid = a.bids[b];
  const Rational margin = a.values[i][v] - my_bid;
  Rational total = 0;
  std::function<void(size_t, const Rational&, const Rational&, int)> walk =
      [&](size_t k, const Rational& weight, const Rational& top, int at_top) {
        if (k == choices.size()) {
          // W(b) is the set of highest bidders, bidder i included.
          if (my_bid > top) {
            total += weight * margin;
          } else if (my_bid == top) {
            total += weight * margin / Rational(at_top + 1);
          }
          return;
        }
        for (const Outcome& o : choices[k]) {
          Rational w = weight * o.weight;
          if (o.bid > top) {
            walk(k + 1, w, o.bid, 1);
          } else if (o.bid == top) {
            walk(k + 1, w, top, at_top + 1);
          } else {
            walk(k + 1, w, top, at_top);
          }
        }
      };
  walk(0, Rational(1), Rational(-1), 0);
  return total;
}

Distribution CfpaBidDistribution(const ContinuousAuction& c, int i, int j,
                                 const StepStrategy& s) {
  Distribution d(c.num_bids(), Rational(0));
  for (int l = 0; l < c.num_bids(); ++l) {
    Rational lo = s.RegionLo(l);
    Rational hi = s.RegionHi(l);
    if (lo < hi) d[l] = c.priors[i][j].Mass(lo, hi);
  }
  return d;
}

std::vector<Rational> CfpaWinProbRow(const ContinuousAuction& c, int i,
                                     const StepProfile& profile) {
  std::vector<Distribution> opponents;
  for (int j = 0; j < c.n; ++j) {
    if (j != i) opponents.push_back(CfpaBidDistribution(c, i, j, profile[j]));
  }
  return WinProbabilityRow(opponents, c.num_bids());
}

Rational CfpaUtility(const ContinuousAuction& c, int i, const Rational& v,
                     int b, const StepProfile& profile) {
  return (v - c.bids[b]) * CfpaWinProbRow(c, i, profile)[b];
}

}  // namespace fpa
