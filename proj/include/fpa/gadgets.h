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

#ifndef FPA_GADGETS_H_
#define FPA_GADGETS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpa/auction.h"

namespace fpa {

// ---------------------------------------------------------------------------
// Pure equilibrium non-existence and exhaustive search.

// Two bidders, V = {0, 1}, B = {0, 1/M, ..., 1}, common prior with
// f(0) = q = (M-3)/(M-1) - 2/(3M). Requires M >= 10.
AuctionInstance NonexistenceInstance(int m);
Rational NonexistenceQ(int m);
// 1/(3M) - 2/M^2.
Rational NonexistenceThreshold(int m);
// The seven-step inequality chain between q/2 M and (q+1)/2 (M-1), checked
// exactly.
bool NonexistenceChainHolds(int m);

struct PureSearchResult {
  std::optional<PureProfile> profile;
  // Candidate bids per (bidder, value) left after elimination.
  std::vector<std::vector<std::vector<int>>> remaining;
  std::uint64_t profiles_checked = 0;
};

// Iteratively removes bids that are never eps-best responses, then walks all
// remaining non-overbidding pure profiles in lexicographic order and returns
// the first eps-PBNE. Throws InputError above 10^9 profiles.
PureSearchResult BruteForcePureSearch(const AuctionInstance& a,
                                      const Rational& eps);

// ---------------------------------------------------------------------------
// Boolean circuits with OR, NOT and SPLIT gates.

enum class GateKind { kOr, kNot, kSplit };

struct CircuitGate {
  GateKind kind;
  std::vector<std::string> outputs;
  std::vector<std::string> inputs;
};

struct Circuit {
  std::vector<std::string> inputs;
  // Topologically ordered.
  std::vector<CircuitGate> gates;
  std::string output;
};

// One statement per line: "input x", "y = OR a b", "y = NOT x",
// "a b = SPLIT x", "output y". '#' starts a comment.
Circuit ParseCircuit(const std::string& text);

using BoolAssignment = std::map<std::string, bool>;

// Values of every node under an assignment of the inputs.
BoolAssignment EvaluateCircuit(const Circuit& c, const BoolAssignment& inputs);
// First satisfying input assignment in binary counting order, if any.
std::optional<BoolAssignment> SolveCircuit(const Circuit& c);

struct CircuitReduction {
  AuctionInstance auction;
  std::vector<std::string> bidder_names;
  // Bidder whose strategy encodes each circuit node.
  std::map<std::string, int> node_bidder;
  int k = -1;
  int l = -1;
  // Guarantee of the reduction on the scaled instance: 1/180.
  Rational eps_bound;
};

// Builds the scaled instance with V = {0, 9/40, 1} and
// B = {0, 1/10, 2/10, 3/10}, padded with value-0 bidders up to min_bidders.
CircuitReduction CircuitToDfpa(const Circuit& c, int min_bidders = 10);

// Exact PBNE for a satisfying assignment. Throws InputError otherwise.
PureProfile AssignmentToPbne(const Circuit& c, const CircuitReduction& r,
                             const BoolAssignment& inputs);

// Pure profile with gate bidders set from the propagated assignment (output
// satisfied or not) and every other entry set to an exact best response.
PureProfile PropagatedProfile(const Circuit& c, const CircuitReduction& r,
                              const BoolAssignment& inputs);

// Pairs (k's bid, l's bid) at value 1 that are mutual eps-best responses
// when everything else follows `profile`.
std::vector<std::pair<int, int>> OutputGadgetFixedPoints(
    const CircuitReduction& r, const PureProfile& profile,
    const Rational& eps);

// ---------------------------------------------------------------------------
// PureCircuit instances and their auction encoding.

enum class PureGateKind { kNot, kAnd, kPurify };

struct PureGate {
  PureGateKind kind;
  std::string x, y, z;
};

struct PureCircuit {
  std::vector<std::string> nodes;
  std::vector<PureGate> gates;
};

// "y = NOT x", "z = AND x y", "y z = PURIFY x".
PureCircuit ParsePureCircuit(const std::string& text);

enum class Trit { kZero, kOne, kBottom };
using TritAssignment = std::map<std::string, Trit>;

bool SatisfiesPureCircuit(const PureCircuit& pc, const TritAssignment& a);

struct PureCircuitReduction {
  AuctionInstance auction;
  std::vector<std::string> bidder_names;
  std::map<std::string, int> node_bidder;
  // Auxiliary bidder of each NOT gate, keyed by the gate output.
  std::map<std::string, int> not_aux;
  std::vector<int> constant_members;
  int constant = -1;
};

// B = {0, 1/4, 1/2, 3/4}; every bidder has V = {0, v}. Pads with value-0
// bidders invisible to all priors up to min_bidders (1000 for the exact
// guarantee, 0 to skip).
PureCircuitReduction PureCircuitToDfpa(const PureCircuit& pc,
                                       int min_bidders = 1000);

TritAssignment ExtractAssignment(const PureCircuitReduction& r,
                                 const MixedProfile& profile);

// Starting from all-zero bids, repeatedly switches the first (bidder, value)
// pair that is not eps-best responding to its first best response. Returns
// the profile if it settles within max_steps switches.
std::optional<PureProfile> BestResponseDynamics(const AuctionInstance& a,
                                                const Rational& eps,
                                                int max_steps);

// ---------------------------------------------------------------------------
// Gadget checks.

struct GadgetCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Circuit-gadget suite: utility tables of the projection, OR, NOT, input and
// output gadgets, with uniqueness of the claimed best responses.
std::vector<GadgetCheck> CheckCircuitGadgets(int n = 10);
// Pure-circuit gadget suite: constant, AND, PURIFY and NOT margins.
std::vector<GadgetCheck> CheckPureCircuitGadgets(int min_bidders = 0);

}  // namespace fpa

#endif  // FPA_GADGETS_H_
