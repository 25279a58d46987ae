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

#ifndef FPA_UTILITY_H_
#define FPA_UTILITY_H_

#include <vector>

#include "fpa/auction.h"

namespace fpa {

// From bidder i's viewpoint: g[j][b] is the probability that opponent j bids
// exactly bids[b], G[j][b] the probability that j bids strictly below it.
// Rows for j == i are empty.
struct BidMassTable {
  std::vector<Distribution> g;
  std::vector<Distribution> G;
};

BidMassTable BidMass(const AuctionInstance& a, int i,
                     const MixedProfile& profile);

// Bid distribution of opponent j as perceived by bidder i.
Distribution OpponentBidDistribution(const AuctionInstance& a, int i, int j,
                                     const MixedProfile& profile);

// T[l][r], 0 <= r <= l <= opponents.size(): probability that exactly r of
// the first l opponents bid bid index b and the others bid below it.
using TieTableRows = std::vector<std::vector<Rational>>;
TieTableRows TieTable(const std::vector<Distribution>& opponents, int b);
TieTableRows TieTable(const AuctionInstance& a, int i, int b,
                      const MixedProfile& profile);

// Probability of winning with bid index b under uniform tie-breaking against
// independent opponents with the given bid distributions.
Rational WinProbability(const std::vector<Distribution>& opponents, int b);
// The same for every bid index at once.
std::vector<Rational> WinProbabilityRow(
    const std::vector<Distribution>& opponents, int num_bids);

Rational WinProb(const AuctionInstance& a, int i, int b,
                 const MixedProfile& profile);
// H for every bid index; it does not depend on bidder i's own value.
std::vector<Rational> WinProbRow(const AuctionInstance& a, int i,
                                 const MixedProfile& profile);

// Utilities take value and bid indices. Overbids give negative utilities.
Rational InterimUtility(const AuctionInstance& a, int i, int v, int b,
                        const MixedProfile& profile);
// Interim utility of every bid index for bidder i at value index v.
std::vector<Rational> UtilityRow(const AuctionInstance& a, int i, int v,
                                 const MixedProfile& profile);
Rational MixedUtility(const AuctionInstance& a, int i, int v,
                      const Distribution& gamma, const MixedProfile& profile);

// Direct enumeration over opponents' (value, bid) pairs, independent of the
// tie table. Throws InputError above 10^7 terms.
Rational BruteForceUtility(const AuctionInstance& a, int i, int v, int b,
                           const MixedProfile& profile);

// Bid distribution of j's step strategy under i's density on j's value.
Distribution CfpaBidDistribution(const ContinuousAuction& c, int i, int j,
                                 const StepStrategy& s);
// H for every bid index for bidder i in the continuous auction.
std::vector<Rational> CfpaWinProbRow(const ContinuousAuction& c, int i,
                                     const StepProfile& profile);
Rational CfpaUtility(const ContinuousAuction& c, int i, const Rational& v,
                     int b, const StepProfile& profile);

}  // namespace fpa

#endif  // FPA_UTILITY_H_
