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

#include "fpa/verify.h"

#include <algorithm>
#include <functional>
#include <set>

#include "fpa/parallel.h"
#include "fpa/utility.h"

namespace fpa {
namespace {

std::vector<Rational> Utilities(const AuctionInstance& a, int i, int v,
                                const std::vector<Rational>& h) {
  std::vector<Rational> u(a.num_bids());
  for (int b = 0; b < a.num_bids(); ++b) {
    u[b] = (a.values[i][v] - a.bids[b]) * h[b];
  }
  return u;
}

Rational Max(const std::vector<Rational>& xs) {
  return *std::max_element(xs.begin(), xs.end());
}

Rational Expectation(const Distribution& d, const std::vector<Rational>& u) {
  Rational total = 0;
  for (size_t b = 0; b < d.size(); ++b) {
    if (d[b] != 0) total += d[b] * u[b];
  }
  return total;
}

// Runs check(i, h_i) per bidder in parallel; returns the first witness in
// bidder order.
VerifyResult FirstViolation(
    const AuctionInstance& a, const MixedProfile& profile,
    const std::function<std::optional<Witness>(int, const std::vector<Rational>&)>&
        check) {
  std::vector<std::optional<Witness>> found(a.n);
  ParallelFor(a.n, [&](std::size_t i) {
    int bidder = static_cast<int>(i);
    found[i] = check(bidder, WinProbRow(a, bidder, profile));
  });
  for (auto& w : found) {
    if (w) return VerifyResult{false, w};
  }
  return VerifyResult{};
}

}  // namespace

std::vector<int> BestResponses(const AuctionInstance& a, int i, int v,
                               const MixedProfile& profile,
                               const Rational& eps) {
  std::vector<Rational> u = Utilities(a, i, v, WinProbRow(a, i, profile));
  Rational best = Max(u);
  std::vector<int> out;
  for (int b = 0; b < a.num_bids(); ++b) {
    if (u[b] >= best - eps) out.push_back(b);
  }
  return out;
}

VerifyResult IsEpsPbne(const AuctionInstance& a, const PureProfile& profile,
                       const Rational& eps) {
  MixedProfile mixed = EmbedPure(a, profile);
  return FirstViolation(a, mixed, [&](int i, const std::vector<Rational>& h)
                                      -> std::optional<Witness> {
    for (int v = 0; v < a.num_values(i); ++v) {
      std::vector<Rational> u = Utilities(a, i, v, h);
      const Rational& played = u[profile[i][v]];
      for (int b = 0; b < a.num_bids(); ++b) {
        if (u[b] - played > eps) return Witness{i, v, b, u[b] - played};
      }
    }
    return std::nullopt;
  });
}

VerifyResult IsEpsMbne(const AuctionInstance& a, const MixedProfile& profile,
                       const Rational& eps) {
  return FirstViolation(a, profile, [&](int i, const std::vector<Rational>& h)
                                        -> std::optional<Witness> {
    for (int v = 0; v < a.num_values(i); ++v) {
      std::vector<Rational> u = Utilities(a, i, v, h);
      Rational played = Expectation(profile[i][v], u);
      for (int b = 0; b < a.num_bids(); ++b) {
        if (u[b] - played > eps) return Witness{i, v, b, u[b] - played};
      }
    }
    return std::nullopt;
  });
}

VerifyResult IsEpsWsne(const AuctionInstance& a, const MixedProfile& profile,
                       const Rational& eps) {
  return FirstViolation(a, profile, [&](int i, const std::vector<Rational>& h)
                                        -> std::optional<Witness> {
    for (int v = 0; v < a.num_values(i); ++v) {
      std::vector<Rational> u = Utilities(a, i, v, h);
      Rational best = Max(u);
      for (int b = 0; b < a.num_bids(); ++b) {
        if (profile[i][v][b] != 0 && best - u[b] > eps) {
          return Witness{i, v, b, best - u[b]};
        }
      }
    }
    return std::nullopt;
  });
}

bool IsMonotone(const MixedProfile& profile) {
  for (const MixedStrategy& s : profile) {
    int highest_so_far = -1;
    for (const Distribution& d : s) {
      int lo = -1, hi = -1;
      for (int b = 0; b < static_cast<int>(d.size()); ++b) {
        if (d[b] != 0) {
          if (lo < 0) lo = b;
          hi = b;
        }
      }
      if (lo < 0) continue;
      if (lo < highest_so_far) return false;
      highest_so_far = hi;
    }
  }
  return true;
}

bool IsSymmetric(const MixedProfile& profile) {
  for (const MixedStrategy& s : profile) {
    if (s != profile.front()) return false;
  }
  return true;
}

RegretReport MaxRegret(const AuctionInstance& a, const MixedProfile& profile) {
  std::vector<std::vector<RegretEntry>> per_bidder(a.n);
  ParallelFor(a.n, [&](std::size_t k) {
    int i = static_cast<int>(k);
    std::vector<Rational> h = WinProbRow(a, i, profile);
    for (int v = 0; v < a.num_values(i); ++v) {
      std::vector<Rational> u = Utilities(a, i, v, h);
      RegretEntry e;
      e.bidder = i;
      e.value = v;
      e.best_bid_utility = Max(u);
      e.played_utility = Expectation(profile[i][v], u);
      e.regret = e.best_bid_utility - e.played_utility;
      per_bidder[k].push_back(e);
    }
  });
  RegretReport report;
  report.max_regret = 0;
  for (auto& rows : per_bidder) {
    for (RegretEntry& e : rows) {
      report.max_regret = std::max(report.max_regret, e.regret);
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

CfpaVerifyResult CfpaVerifyPbne(const ContinuousAuction& c,
                                const StepProfile& profile,
                                const Rational& eps) {
  std::vector<std::string> errors = StepProfileErrors(c, profile);
  if (!errors.empty()) throw InputError(errors.front());
  std::vector<std::optional<CfpaWitness>> found(c.n);
  ParallelFor(c.n, [&](std::size_t k) {
    int i = static_cast<int>(k);
    std::vector<Rational> h = CfpaWinProbRow(c, i, profile);
    std::set<Rational> breakpoints;
    for (int j = 0; j < c.n; ++j) {
      if (j == i) continue;
      for (const Rational& x : c.priors[j][i].breakpoints) breakpoints.insert(x);
    }
    const StepStrategy& s = profile[i];
    for (int l = 0; l < c.num_bids() && !found[k]; ++l) {
      if (!s.RegionNonempty(l)) continue;
      Rational lo = s.RegionLo(l);
      Rational hi = s.RegionHi(l);
      std::set<Rational> points{lo, hi};
      for (auto it = breakpoints.lower_bound(lo);
           it != breakpoints.end() && *it <= hi; ++it) {
        points.insert(*it);
      }
      for (const Rational& v : points) {
        Rational played = (v - c.bids[l]) * h[l];
        for (int b = 0; b < c.num_bids(); ++b) {
          Rational gain = (v - c.bids[b]) * h[b] - played;
          if (gain > eps) {
            found[k] = CfpaWitness{i, v, b, gain};
            break;
          }
        }
        if (found[k]) break;
      }
    }
  });
  for (auto& w : found) {
    if (w) return CfpaVerifyResult{false, w};
  }
  return CfpaVerifyResult{};
}

}  // namespace fpa
