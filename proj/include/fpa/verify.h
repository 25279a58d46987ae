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

#ifndef FPA_VERIFY_H_
#define FPA_VERIFY_H_

#include <optional>
#include <vector>

#include "fpa/auction.h"

namespace fpa {

// A deviation of bidder `bidder` at value index `value` to bid index `bid`
// that gains `gain` over the checked strategy.
struct Witness {
  int bidder = -1;
  int value = -1;
  int bid = -1;
  Rational gain;
};

// Verifiers report the lexicographically first violating (i, v, b).
struct VerifyResult {
  bool ok = true;
  std::optional<Witness> witness;
};

// Bid indices b with u(b) >= max_b' u(b') - eps; overbids are in the max.
std::vector<int> BestResponses(const AuctionInstance& a, int i, int v,
                               const MixedProfile& profile,
                               const Rational& eps);

VerifyResult IsEpsPbne(const AuctionInstance& a, const PureProfile& profile,
                       const Rational& eps);
VerifyResult IsEpsMbne(const AuctionInstance& a, const MixedProfile& profile,
                       const Rational& eps);
// For a failure the witness bid is the offending support bid and gain is how
// far its utility falls short of the best.
VerifyResult IsEpsWsne(const AuctionInstance& a, const MixedProfile& profile,
                       const Rational& eps);

// max supp beta_i(v) <= min supp beta_i(v') whenever v < v'.
bool IsMonotone(const MixedProfile& profile);
bool IsSymmetric(const MixedProfile& profile);

struct RegretEntry {
  int bidder = 0;
  int value = 0;
  Rational best_bid_utility;
  Rational played_utility;
  Rational regret;
};

struct RegretReport {
  std::vector<RegretEntry> entries;
  Rational max_regret;
};

RegretReport MaxRegret(const AuctionInstance& a, const MixedProfile& profile);

struct CfpaWitness {
  int bidder = -1;
  Rational value;
  int bid = -1;
  Rational gain;
};

struct CfpaVerifyResult {
  bool ok = true;
  std::optional<CfpaWitness> witness;
};

// Exact check over the finite critical set: endpoints of every nonempty step
// region and every density breakpoint inside it. For a fixed bid utility is
// affine in v, so violations peak at these points.
CfpaVerifyResult CfpaVerifyPbne(const ContinuousAuction& c,
                                const StepProfile& profile,
                                const Rational& eps);

}  // namespace fpa

#endif  // FPA_VERIFY_H_
