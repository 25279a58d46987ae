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

#ifndef FPA_CORRELATED_H_
#define FPA_CORRELATED_H_

#include <utility>
#include <vector>

#include "fpa/auction.h"

namespace fpa {

// Normal-form game whose players are the (bidder, value index) pairs; every
// player picks a bid index.
class TypeAgentGame {
 public:
  explicit TypeAgentGame(const AuctionInstance& a);

  const AuctionInstance& auction() const { return a_; }
  int num_players() const { return static_cast<int>(players_.size()); }
  int num_actions() const { return a_.num_bids(); }
  std::pair<int, int> player(int p) const { return players_[p]; }
  int PlayerIndex(int bidder, int value) const {
    return offset_[bidder] + value;
  }

  // Pure profile read off an outcome: bidder i bids s[(i, v)] at value v.
  PureProfile ProfileFromOutcome(const std::vector<int>& outcome) const;
  double OutcomeCountLog10() const;

  // u_i(s(i,v), profile-from-s; v).
  Rational Payoff(int p, const std::vector<int>& outcome) const;

  // Expected payoff of every bid for player p when the others play the
  // product distribution `mixed` (one distribution per player).
  std::vector<Rational> PayoffRow(int p,
                                  const std::vector<Distribution>& mixed) const;

 private:
  AuctionInstance a_;
  std::vector<std::pair<int, int>> players_;
  std::vector<int> offset_;
};

TypeAgentGame BuildTypeAgent(const AuctionInstance& a);

// A mixture of product distributions over outcomes.
struct CorrelatedComponent {
  Rational weight;
  std::vector<Distribution> marginals;
};
using CorrelatedDistribution = std::vector<CorrelatedComponent>;

// Point masses per player make a component a single outcome.
CorrelatedComponent OutcomeComponent(const TypeAgentGame& game,
                                     const std::vector<int>& outcome,
                                     const Rational& weight);
// Product embedding of a mixed profile.
CorrelatedDistribution ProductDistribution(const TypeAgentGame& game,
                                           const MixedProfile& profile);

struct CeRegret {
  Rational regret;
  int player = -1;
  int recommended = -1;
  int deviation = -1;
};

// Max over players, recommendations with positive probability and
// deviations of the expected gain conditioned on the recommendation.
CeRegret ComputeCeRegret(const TypeAgentGame& game,
                         const CorrelatedDistribution& dist);

// Exact CE of maximal total payoff on the explicit joint distribution.
// Throws InputError above 10^6 outcomes.
CorrelatedDistribution SolveCeLp(const TypeAgentGame& game);

struct DynamicsOptions {
  double eta = 0.1;
  int max_rounds = 20000;
  int first_checkpoint = 250;
  int max_components = 200;
};

struct DynamicsResult {
  CorrelatedDistribution distribution;
  Rational regret;
  int rounds = 0;
  // Exact regret at each checkpoint, as doubles.
  std::vector<std::pair<int, double>> trajectory;
};

// Swap-regret multiplicative weights for every player; returns the average
// of the per-round product distributions over the second half of the run.
// Throws BudgetExhausted when the exact regret stays above eps.
DynamicsResult SolveCeDynamics(const TypeAgentGame& game, const Rational& eps,
                               const DynamicsOptions& options = {});

}  // namespace fpa

#endif  // FPA_CORRELATED_H_
