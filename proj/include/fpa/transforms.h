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

#ifndef FPA_TRANSFORMS_H_
#define FPA_TRANSFORMS_H_

#include <vector>

#include "fpa/auction.h"

namespace fpa {

struct WsneResult {
  MixedProfile profile;
  // Rational upper bound on sqrt(2 d delta); 0 when delta is 0.
  Rational gamma;
  // The output is a guarantee-WSNE: gamma + 2 d delta / gamma.
  Rational guarantee;
};

// Keeps, per (i, v), only bids within gamma of the best and renormalizes.
// Requires a delta-MBNE, d >= InteractionDegree(a) and delta <= 1/(8d).
// With delta == 0 only exact best responses are kept.
WsneResult NeToWsne(const AuctionInstance& a, const MixedProfile& profile,
                    const Rational& delta, int d);

struct ShrinkResult {
  std::vector<Rational> bids;
  // Indices of the kept bids in the original bid space.
  std::vector<int> kept;
  int m = 1;
};

// Per interval [l/M, (l+1)/M] keeps the least bid inside it.
ShrinkResult ShrinkBidspace(const std::vector<Rational>& bids, int m);

// The same auction on the sub-bid-space given by sorted indices `kept`.
AuctionInstance RestrictBids(const AuctionInstance& a,
                             const std::vector<int>& kept);
// Re-expresses a profile of RestrictBids(a, kept) over a's bid space.
MixedProfile LiftProfile(const AuctionInstance& a, const std::vector<int>& kept,
                         const MixedProfile& restricted);

// Discrete to continuous: each prior mass f on v becomes height f/delta on
// [v - delta, v], or on [0, delta] for v = 0.
struct DfpaToCfpaMap {
  // Final delta after halving until 2 delta is at most every gap in the
  // union of value and bid spaces.
  Rational delta;
  // blocks[j][v] = {lo, hi} for bidder j's value index v.
  std::vector<std::vector<std::pair<Rational, Rational>>> blocks;
};

struct DfpaToCfpaResult {
  ContinuousAuction auction;
  DfpaToCfpaMap map;
};

DfpaToCfpaResult DfpaToCfpa(const AuctionInstance& a, const Rational& delta);

// beta_j(v)(b) = |region of b inside the block of (j, v)| / delta.
MixedProfile MbneFromCfpaPbne(const AuctionInstance& a,
                              const DfpaToCfpaMap& map,
                              const StepProfile& profile);

// Continuous to discrete on the grid of step 1/K (K = ceil(1/delta)) merged
// with every density breakpoint. Each value v gets the mass of [v, v+].
struct CfpaToDfpaMap {
  Rational delta;
  // Sorted grid including 1; value spaces are grid minus {1}.
  std::vector<Rational> grid;
};

struct CfpaToDfpaResult {
  AuctionInstance auction;
  CfpaToDfpaMap map;
};

CfpaToDfpaResult CfpaToDfpa(const ContinuousAuction& c, const Rational& delta);

// Lays bids out inside each [v, v+] in increasing order with lengths
// proportional to their masses. Requires a monotone profile.
StepProfile PbneFromDfpaWsne(const AuctionInstance& a, const CfpaToDfpaMap& map,
                             const MixedProfile& profile);

}  // namespace fpa

#endif  // FPA_TRANSFORMS_H_
