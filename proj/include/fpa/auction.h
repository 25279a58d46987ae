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

#ifndef FPA_AUCTION_H_
#define FPA_AUCTION_H_

#include <string>
#include <vector>

#include "fpa/rational.h"

namespace fpa {

// A distribution over a finite index set, e.g. over the bid indices of B.
using Distribution = std::vector<Rational>;

// A discrete first-price auction with subjective priors.
//
// Bids and values are stored sorted and deduplicated; every index in this
// library is 0-based. priors[i][j][k] is the probability bidder i assigns to
// bidder j having value values[j][k]; priors[i][i] is empty.
struct AuctionInstance {
  int n = 0;
  std::vector<Rational> bids;
  std::vector<std::vector<Rational>> values;
  std::vector<std::vector<Distribution>> priors;

  int num_bids() const { return static_cast<int>(bids.size()); }
  int num_values(int i) const { return static_cast<int>(values[i].size()); }
};

// Per value index, a distribution over bid indices.
using MixedStrategy = std::vector<Distribution>;
using MixedProfile = std::vector<MixedStrategy>;

// Per value index, a single bid index.
using PureStrategy = std::vector<int>;
using PureProfile = std::vector<PureStrategy>;

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> errors;
  bool is_ipv = false;
  bool is_iid = false;
};

ValidationReport ValidateInstance(const AuctionInstance& a);

// Throws InputError naming the first violated invariant.
void RequireValid(const AuctionInstance& a);

bool IsIpv(const AuctionInstance& a);
bool IsIid(const AuctionInstance& a);

// Max over i of the number of opponents j that i does not believe to have
// value 0 surely; at least 1.
int InteractionDegree(const AuctionInstance& a);

// Problems with a mixed profile: shape, distributions, and (optionally)
// overbidding. Empty when the profile is valid.
std::vector<std::string> ProfileErrors(const AuctionInstance& a,
                                       const MixedProfile& profile,
                                       bool allow_overbidding = false);
std::vector<std::string> PureProfileErrors(const AuctionInstance& a,
                                           const PureProfile& profile,
                                           bool allow_overbidding = false);

MixedProfile EmbedPure(const AuctionInstance& a, const PureProfile& profile);

// Index of x in a sorted vector, or -1.
int FindIndex(const std::vector<Rational>& sorted, const Rational& x);

// Point mass on index k out of size entries.
Distribution PointMass(int size, int k);

// Piecewise-constant density on [0,1]: heights[t] on
// [breakpoints[t], breakpoints[t+1]].
struct PiecewiseConstantDensity {
  std::vector<Rational> breakpoints;
  std::vector<Rational> heights;

  // Probability mass of the interval [lo, hi].
  Rational Mass(const Rational& lo, const Rational& hi) const;
};

std::vector<std::string> DensityErrors(const PiecewiseConstantDensity& d);

// A first-price auction with continuous values on [0,1] and a finite B.
struct ContinuousAuction {
  int n = 0;
  std::vector<Rational> bids;
  std::vector<std::vector<PiecewiseConstantDensity>> priors;

  int num_bids() const { return static_cast<int>(bids.size()); }
};

std::vector<std::string> ContinuousErrors(const ContinuousAuction& c);
void RequireValid(const ContinuousAuction& c);
bool IsIid(const ContinuousAuction& c);

// Pure step strategy on [0,1] given by jump points a_1 <= ... <= a_{m-1}.
// The bid at v is b_l for the least l with v <= a_l (a_m = 1), so the region
// of bid l is (a_{l-1}, a_l] and the region of b_1 is [0, a_1].
struct StepStrategy {
  std::vector<Rational> jumps;

  int BidAt(const Rational& v) const;
  // Closure of the region of bid index l; lo == hi can still be nonempty for
  // l == 0 (the single point 0).
  Rational RegionLo(int l) const;
  Rational RegionHi(int l) const;
  bool RegionNonempty(int l) const;
};

using StepProfile = std::vector<StepStrategy>;

std::vector<std::string> StepProfileErrors(const ContinuousAuction& c,
                                           const StepProfile& profile);

}  // namespace fpa

#endif  // FPA_AUCTION_H_
