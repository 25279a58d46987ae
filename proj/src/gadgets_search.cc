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

#include <algorithm>
#include <atomic>
#include <limits>

#include "fpa/gadgets.h"
#include "fpa/parallel.h"
#include "fpa/utility.h"
#include "fpa/verify.h"

namespace fpa {
namespace {

constexpr std::uint64_t kMaxProfiles = 1000000000ULL;
constexpr std::uint64_t kChunk = 256;

// H row for bidder i when each opponent value plays the given bid.
std::vector<Rational> ExtremeWinRow(
    const AuctionInstance& a, int i,
    const std::vector<std::vector<int>>& chosen) {
  std::vector<Distribution> opponents;
  for (int j = 0; j < a.n; ++j) {
    if (j == i) continue;
    Distribution d(a.num_bids(), Rational(0));
    for (int v = 0; v < a.num_values(j); ++v) {
      if (a.priors[i][j][v] != 0) d[chosen[j][v]] += a.priors[i][j][v];
    }
    opponents.push_back(std::move(d));
  }
  return WinProbabilityRow(opponents, a.num_bids());
}

// One elimination pass; returns true if anything was removed.
bool EliminationPass(const AuctionInstance& a, const Rational& eps,
                     std::vector<std::vector<std::vector<int>>>& rem) {
  std::vector<std::vector<int>> lowest(a.n), highest(a.n);
  for (int j = 0; j < a.n; ++j) {
    for (int v = 0; v < a.num_values(j); ++v) {
      lowest[j].push_back(rem[j][v].front());
      highest[j].push_back(rem[j][v].back());
    }
  }
  bool changed = false;
  for (int i = 0; i < a.n; ++i) {
    // H is nonincreasing in every opponent bid.
    std::vector<Rational> hmax = ExtremeWinRow(a, i, lowest);
    std::vector<Rational> hmin = ExtremeWinRow(a, i, highest);
    for (int v = 0; v < a.num_values(i); ++v) {
      const Rational& val = a.values[i][v];
      Rational best_floor = 0;
      for (int b = 0; b < a.num_bids() && a.bids[b] <= val; ++b) {
        best_floor = std::max(best_floor, (val - a.bids[b]) * hmin[b]);
      }
      std::vector<int> keep;
      for (int b : rem[i][v]) {
        if (best_floor - (val - a.bids[b]) * hmax[b] > eps) {
          changed = true;
        } else {
          keep.push_back(b);
        }
      }
      rem[i][v] = std::move(keep);
    }
  }
  return changed;
}

bool PbneSequential(const AuctionInstance& a, const PureProfile& p,
                    const Rational& eps) {
  MixedProfile mixed = EmbedPure(a, p);
  for (int i = 0; i < a.n; ++i) {
    std::vector<Rational> h = WinProbRow(a, i, mixed);
    for (int v = 0; v < a.num_values(i); ++v) {
      const Rational& val = a.values[i][v];
      Rational played = (val - a.bids[p[i][v]]) * h[p[i][v]];
      for (int b = 0; b < a.num_bids(); ++b) {
        if ((val - a.bids[b]) * h[b] - played > eps) return false;
      }
    }
  }
  return true;
}

}  // namespace

Rational NonexistenceQ(int m) {
  return MakeRational(m - 3, m - 1) - MakeRational(2, 3 * m);
}

Rational NonexistenceThreshold(int m) {
  return MakeRational(1, 3 * m) - MakeRational(2, m * m);
}

AuctionInstance NonexistenceInstance(int m) {
  if (m < 10) throw InputError("non-existence instance needs M >= 10");
  AuctionInstance a;
  a.n = 2;
  for (int k = 0; k <= m; ++k) a.bids.push_back(MakeRational(k, m));
  a.values = {{0, 1}, {0, 1}};
  Rational q = NonexistenceQ(m);
  a.priors = {{{}, {q, 1 - q}}, {{q, 1 - q}, {}}};
  return a;
}

bool NonexistenceChainHolds(int m) {
  Rational q = NonexistenceQ(m);
  Rational half_q1 = (q + 1) / 2;
  std::vector<Rational> chain = {
      q / 2 * m,        q * (m - 2), half_q1 * (m - 3), Rational(m - 4),
      q * (m - 1),      half_q1 * (m - 2), Rational(m - 3),
      half_q1 * (m - 1)};
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    if (chain[k] > chain[k + 1]) return false;
  }
  return true;
}

PureSearchResult BruteForcePureSearch(const AuctionInstance& a,
                                      const Rational& eps) {
  RequireValid(a);
  PureSearchResult result;
  auto& rem = result.remaining;
  rem.resize(a.n);
  for (int i = 0; i < a.n; ++i) {
    for (int v = 0; v < a.num_values(i); ++v) {
      std::vector<int> bids;
      for (int b = 0; b < a.num_bids() && a.bids[b] <= a.values[i][v]; ++b) {
        bids.push_back(b);
      }
      rem[i].push_back(std::move(bids));
    }
  }
  while (EliminationPass(a, eps, rem)) {
  }

  // Mixed-radix odometer, first slot most significant.
  std::vector<std::pair<int, int>> slots;
  std::uint64_t total = 1;
  for (int i = 0; i < a.n; ++i) {
    for (int v = 0; v < a.num_values(i); ++v) {
      slots.emplace_back(i, v);
      std::uint64_t c = rem[i][v].size();
      if (total > kMaxProfiles / c) {
        throw InputError("pure search space exceeds 10^9 profiles");
      }
      total *= c;
    }
  }
  std::atomic<std::uint64_t> found(std::numeric_limits<std::uint64_t>::max());
  std::atomic<std::uint64_t> checked(0);
  std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  ParallelFor(chunks, [&](std::size_t chunk) {
    std::uint64_t begin = chunk * kChunk;
    std::uint64_t end = std::min(total, begin + kChunk);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if (idx >= found.load()) return;
      PureProfile p(a.n);
      for (int i = 0; i < a.n; ++i) p[i].resize(a.num_values(i));
      std::uint64_t rest = idx;
      for (size_t s = slots.size(); s-- > 0;) {
        auto [i, v] = slots[s];
        std::uint64_t c = rem[i][v].size();
        p[i][v] = rem[i][v][rest % c];
        rest /= c;
      }
      checked.fetch_add(1);
      if (PbneSequential(a, p, eps)) {
        std::uint64_t cur = found.load();
        while (idx < cur && !found.compare_exchange_weak(cur, idx)) {
        }
        return;
      }
    }
  });
  result.profiles_checked = checked.load();
  std::uint64_t idx = found.load();
  if (idx != std::numeric_limits<std::uint64_t>::max()) {
    PureProfile p(a.n);
    for (int i = 0; i < a.n; ++i) p[i].resize(a.num_values(i));
    for (size_t s = slots.size(); s-- > 0;) {
      auto [i, v] = slots[s];
      std::uint64_t c = rem[i][v].size();
      p[i][v] = rem[i][v][idx % c];
      idx /= c;
    }
    result.profile = p;
  }
  return result;
}

}  // namespace fpa
