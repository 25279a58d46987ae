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

#ifndef FPA_SYMMETRIC_H_
#define FPA_SYMMETRIC_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fpa/auction.h"

namespace fpa {

// Support structure of a symmetric monotone strategy over k values and m
// bids, 0-based: xi[l] is a value index, nondecreasing, xi[m-1] == k-1.
struct SupportStructure {
  int k = 0;
  int m = 0;
  std::vector<int> xi;

  bool IsMixed(int j) const;
  // Bid interval [Lo(j), Hi(j)] that value j may use; a single bid for a
  // pure value.
  int Lo(int j) const;
  int Hi(int j) const;
};

// Whether xi is a valid structure for (k, m).
bool IsValidStructure(const SupportStructure& s);

// All structures in lexicographic order; throws InputError above `limit`.
std::vector<SupportStructure> EnumerateStructures(int k, int m,
                                                  std::size_t limit = 1000000);
// Number of structures, C(k+m-2, m-1).
Integer CountStructures(int k, int m);

// Per value index a distribution over bid indices. Entries outside the
// structure's intervals are forced to 0; pure values get their point mass.
std::vector<Distribution> Expand(const SupportStructure& s,
                                 const std::vector<Distribution>& p);

// The feasibility system for one structure of an iid instance.
struct PolySystem {
  int n = 0;
  std::vector<Rational> values;
  std::vector<Rational> prior;
  std::vector<Rational> bids;
  SupportStructure structure;
  // Per value, the non-overbidding bids inside its interval. For pure values
  // this holds the forced bid when it is not an overbid.
  std::vector<std::vector<int>> allowed;
  bool trivially_infeasible = false;
  std::string infeasible_reason;

  int k() const { return static_cast<int>(values.size()); }
  int m() const { return static_cast<int>(bids.size()); }
  int NumFreeVariables() const;
  // Degree of each no-improvement polynomial in the p variables.
  int Degree() const { return n; }
};

PolySystem BuildSystem(const AuctionInstance& a, const SupportStructure& s);

// u(l, j) from the binomial expansion and from the telescoped form
// ((v_j - b_l)/n) sum_r G_{l+1}^r G_l^{n-1-r}. Both are exact.
Rational UtilityBinomial(const PolySystem& sys,
                         const std::vector<Distribution>& p, int l, int j);
Rational UtilityTelescoped(const PolySystem& sys,
                           const std::vector<Distribution>& p, int l, int j);

// Largest violation of any constraint of the system at an exact point; 0
// means feasible.
Rational ExactViolation(const PolySystem& sys,
                        const std::vector<Distribution>& p);

struct SolverOptions {
  int starts = 64;
  int max_sweeps = 100000;
  std::uint64_t seed = 0;
  // Optional start point tried before the multistart.
  std::vector<std::vector<double>> initial;
};

enum class SolveStatus {
  kConverged,
  kStagnated,
  kBudgetExhausted,
  kTriviallyInfeasible,
};

const char* SolveStatusName(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kTriviallyInfeasible;
  // k x m probabilities of the best point found.
  std::vector<std::vector<double>> p;
  double penalty = 0;
  double max_violation = 0;
};

// Numeric penalty minimization; every start that reaches a small violation
// is handed to `accept`, and the search stops once it returns true.
using AcceptFn = std::function<bool(const std::vector<std::vector<double>>&)>;
SolveOutcome SolveSystem(const PolySystem& sys, const SolverOptions& options,
                         const AcceptFn& accept = nullptr,
                         double accept_violation = 0);

// Truncates entries <= delta to 0 and >= 1 to 1, then renormalizes each row
// exactly. Requires delta <= 1/(3m).
std::vector<Distribution> RoundSolution(
    const std::vector<std::vector<double>>& p_tilde, const Rational& delta);

struct SymmetricResult {
  MixedProfile profile;
  SupportStructure structure;
  Rational max_regret;
  // Size and contents of the shrunk bid space the system was solved on.
  int m_shrink = 0;
  std::vector<Rational> shrunk_bids;
  Rational delta;
  int structures_tried = 0;
};

// Shrinks B to M = ceil(2/eps) bids, solves each structure at eps/2 with
// rounding precision eps/(16 M n), and returns the first profile, in
// enumeration order, whose exact regret on the original auction is <= eps.
// Throws BudgetExhausted when no structure verifies.
SymmetricResult SolveSymmetric(const AuctionInstance& a, const Rational& eps,
                               const SolverOptions& options = {});

// The same without shrinking: solves on a's own bid space and verifies at
// eps there.
SymmetricResult SolveSymmetricOnBids(const AuctionInstance& a,
                                     const Rational& eps,
                                     const SolverOptions& options = {});

}  // namespace fpa

#endif  // FPA_SYMMETRIC_H_
