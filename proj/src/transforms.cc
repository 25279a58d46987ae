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

#include "fpa/transforms.h"

#include <algorithm>
#include <set>

#include "fpa/utility.h"
#include "fpa/verify.h"

namespace fpa {
namespace {

Rational Overlap(const Rational& lo1, const Rational& hi1, const Rational& lo2,
                 const Rational& hi2) {
  Rational lo = std::max(lo1, lo2);
  Rational hi = std::min(hi1, hi2);
  return hi > lo ? Rational(hi - lo) : Rational(0);
}

}  // namespace

WsneResult NeToWsne(const AuctionInstance& a, const MixedProfile& profile,
                    const Rational& delta, int d) {
  std::vector<std::string> errors = ProfileErrors(a, profile);
  if (!errors.empty()) throw InputError(errors.front());
  if (delta < 0) throw InputError("delta must be nonnegative");
  if (d < InteractionDegree(a)) {
    throw InputError("d is below the interaction degree");
  }
  if (delta * 8 * d > 1) throw InputError("delta exceeds 1/(8d)");
  if (!IsEpsMbne(a, profile, delta).ok) {
    throw InputError("input is not a delta-approximate MBNE");
  }
  WsneResult result;
  result.gamma = 0;
  result.guarantee = 0;
  if (delta > 0) {
    result.gamma = SqrtUpper(2 * d * delta, MakeRational(1, 1000000000));
    result.guarantee = result.gamma + 2 * d * delta / result.gamma;
  }
  result.profile = profile;
  for (int i = 0; i < a.n; ++i) {
    std::vector<Rational> h = WinProbRow(a, i, profile);
    for (int v = 0; v < a.num_values(i); ++v) {
      std::vector<Rational> u(a.num_bids());
      for (int b = 0; b < a.num_bids(); ++b) {
        u[b] = (a.values[i][v] - a.bids[b]) * h[b];
      }
      Rational threshold = *std::max_element(u.begin(), u.end()) - result.gamma;
      Distribution& dist = result.profile[i][v];
      Rational kept = 0;
      for (int b = 0; b < a.num_bids(); ++b) {
        if (u[b] < threshold) dist[b] = 0;
        kept += dist[b];
      }
      if (kept == 0) throw InputError("no mass left on good bids");
      for (Rational& p : dist) p /= kept;
    }
  }
  return result;
}

ShrinkResult ShrinkBidspace(const std::vector<Rational>& bids, int m) {
  if (m < 1) throw InputError("M must be at least 1");
  ShrinkResult result;
  result.m = m;
  std::set<int> kept;
  for (int l = 0; l < m; ++l) {
    Rational lo = MakeRational(l, m);
    Rational hi = MakeRational(l + 1, m);
    for (int b = 0; b < static_cast<int>(bids.size()); ++b) {
      if (bids[b] >= lo && bids[b] <= hi) {
        kept.insert(b);
        break;
      }
    }
  }
  result.kept.assign(kept.begin(), kept.end());
  for (int b : result.kept) result.bids.push_back(bids[b]);
  return result;
}

AuctionInstance RestrictBids(const AuctionInstance& a,
                             const std::vector<int>& kept) {
  AuctionInstance r = a;
  r.bids.clear();
  for (int b : kept) r.bids.push_back(a.bids[b]);
  return r;
}

MixedProfile LiftProfile(const AuctionInstance& a, const std::vector<int>& kept,
                         const MixedProfile& restricted) {
  MixedProfile p(a.n);
  for (int i = 0; i < a.n; ++i) {
    for (const Distribution& d : restricted[i]) {
      Distribution full(a.num_bids(), Rational(0));
      for (size_t k = 0; k < kept.size(); ++k) full[kept[k]] = d[k];
      p[i].push_back(full);
    }
  }
  return p;
}

DfpaToCfpaResult DfpaToCfpa(const AuctionInstance& a, const Rational& delta) {
  RequireValid(a);
  if (delta <= 0 || delta >= 1) throw InputError("delta must lie in (0,1)");
  std::set<Rational> points(a.bids.begin(), a.bids.end());
  for (const auto& vs : a.values) points.insert(vs.begin(), vs.end());
  Rational min_gap = 1;
  for (auto it = points.begin(); std::next(it) != points.end(); ++it) {
    min_gap = std::min(min_gap, Rational(*std::next(it) - *it));
  }
  DfpaToCfpaResult result;
  Rational& d = result.map.delta;
  d = delta;
  while (2 * d > min_gap) d /= 2;
  result.map.blocks.resize(a.n);
  for (int j = 0; j < a.n; ++j) {
    for (const Rational& v : a.values[j]) {
      if (v == 0) {
        result.map.blocks[j].push_back({Rational(0), d});
      } else {
        result.map.blocks[j].push_back({v - d, v});
      }
    }
  }
  ContinuousAuction& c = result.auction;
  c.n = a.n;
  c.bids = a.bids;
  c.priors.assign(a.n, std::vector<PiecewiseConstantDensity>(a.n));
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      if (i == j) continue;
      std::set<Rational> cuts{Rational(0), Rational(1)};
      for (const auto& [lo, hi] : result.map.blocks[j]) {
        cuts.insert(lo);
        cuts.insert(hi);
      }
      PiecewiseConstantDensity& f = c.priors[i][j];
      f.breakpoints.assign(cuts.begin(), cuts.end());
      for (size_t t = 0; t + 1 < f.breakpoints.size(); ++t) {
        Rational height = 0;
        for (int v = 0; v < a.num_values(j); ++v) {
          const auto& [lo, hi] = result.map.blocks[j][v];
          if (lo <= f.breakpoints[t] && f.breakpoints[t + 1] <= hi) {
            height = a.priors[i][j][v] / d;
          }
        }
        f.heights.push_back(height);
      }
    }
  }
  return result;
}

MixedProfile MbneFromCfpaPbne(const AuctionInstance& a,
                              const DfpaToCfpaMap& map,
                              const StepProfile& profile) {
  MixedProfile p(a.n);
  for (int j = 0; j < a.n; ++j) {
    const StepStrategy& s = profile[j];
    for (int v = 0; v < a.num_values(j); ++v) {
      const auto& [lo, hi] = map.blocks[j][v];
      Distribution dist(a.num_bids(), Rational(0));
      for (int l = 0; l < a.num_bids(); ++l) {
        dist[l] = Overlap(s.RegionLo(l), s.RegionHi(l), lo, hi) / map.delta;
      }
      p[j].push_back(dist);
    }
  }
  return p;
}

CfpaToDfpaResult CfpaToDfpa(const ContinuousAuction& c, const Rational& delta) {
  RequireValid(c);
  if (delta <= 0 || delta >= 1) throw InputError("delta must lie in (0,1)");
  Integer k = Numerator(delta) == 1
                  ? Denominator(delta)
                  : Integer((Denominator(delta) + Numerator(delta) - 1) /
                            Numerator(delta));
  CfpaToDfpaResult result;
  result.map.delta = Rational(Integer(1), k);
  std::set<Rational> grid;
  for (Integer t = 0; t <= k; ++t) grid.insert(Rational(t, k));
  for (const auto& row : c.priors) {
    for (const PiecewiseConstantDensity& f : row) {
      grid.insert(f.breakpoints.begin(), f.breakpoints.end());
    }
  }
  result.map.grid.assign(grid.begin(), grid.end());
  const std::vector<Rational>& g = result.map.grid;
  std::vector<Rational> values(g.begin(), g.end() - 1);
  AuctionInstance& a = result.auction;
  a.n = c.n;
  a.bids = c.bids;
  a.values.assign(c.n, values);
  a.priors.assign(c.n, std::vector<Distribution>(c.n));
  for (int i = 0; i < c.n; ++i) {
    for (int j = 0; j < c.n; ++j) {
      if (i == j) continue;
      for (size_t v = 0; v + 1 < g.size(); ++v) {
        a.priors[i][j].push_back(c.priors[i][j].Mass(g[v], g[v + 1]));
      }
    }
  }
  return result;
}

StepProfile PbneFromDfpaWsne(const AuctionInstance& a, const CfpaToDfpaMap& map,
                             const MixedProfile& profile) {
  if (!IsMonotone(profile)) throw InputError("profile is not monotone");
  const std::vector<Rational>& g = map.grid;
  StepProfile out(a.n);
  for (int j = 0; j < a.n; ++j) {
    if (a.num_values(j) + 1 != static_cast<int>(g.size())) {
      throw InputError("profile does not match the discretization");
    }
    // Jump l closes the region of bid l: the total length assigned to bids
    // up to l, since monotonicity lays segments out in bid order.
    Rational cumulative = 0;
    std::vector<Rational>& jumps = out[j].jumps;
    for (int l = 0; l + 1 < a.num_bids(); ++l) {
      for (int v = 0; v < a.num_values(j); ++v) {
        cumulative += profile[j][v][l] * (g[v + 1] - g[v]);
      }
      jumps.push_back(cumulative);
    }
  }
  return out;
}

}  // namespace fpa
