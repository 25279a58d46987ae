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

#include "fpa/auction.h"

#include <algorithm>

namespace fpa {
namespace {

std::string Pair(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void CheckSortedUnit(const std::vector<Rational>& xs, const std::string& what,
                     std::vector<std::string>* errors) {
  for (size_t t = 0; t < xs.size(); ++t) {
    if (xs[t] < 0 || xs[t] > 1) {
      errors->push_back(what + " entry outside [0,1]");
      return;
    }
    if (t > 0 && xs[t] <= xs[t - 1]) {
      errors->push_back(what + " not strictly increasing");
      return;
    }
  }
}

void CheckDistribution(const Distribution& d, const std::string& what,
                       std::vector<std::string>* errors) {
  Rational total = 0;
  for (const Rational& p : d) {
    if (p < 0) {
      errors->push_back(what + " has a negative probability");
      return;
    }
    total += p;
  }
  if (total != 1) errors->push_back(what + " does not sum to 1");
}

}  // namespace

int FindIndex(const std::vector<Rational>& sorted, const Rational& x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  if (it == sorted.end() || *it != x) return -1;
  return static_cast<int>(it - sorted.begin());
}

Distribution PointMass(int size, int k) {
  Distribution d(size, Rational(0));
  d[k] = 1;
  return d;
}

ValidationReport ValidateInstance(const AuctionInstance& a) {
  ValidationReport report;
  std::vector<std::string>& errors = report.errors;
  if (a.n < 1) errors.push_back("n must be at least 1");
  if (a.bids.empty()) {
    errors.push_back("bid space empty");
  } else {
    CheckSortedUnit(a.bids, "bid space", &errors);
    if (a.bids.front() != 0) errors.push_back("null bid absent");
  }
  if (static_cast<int>(a.values.size()) != a.n) {
    errors.push_back("expected one value space per bidder");
  } else {
    for (int i = 0; i < a.n; ++i) {
      if (a.values[i].empty()) {
        errors.push_back("value space of bidder " + std::to_string(i) +
                         " empty");
      }
      CheckSortedUnit(a.values[i], "value space of bidder " + std::to_string(i),
                      &errors);
    }
  }
  bool shape_ok = errors.empty() && static_cast<int>(a.priors.size()) == a.n;
  if (errors.empty() && !shape_ok) errors.push_back("priors have wrong shape");
  if (shape_ok) {
    for (int i = 0; i < a.n && shape_ok; ++i) {
      if (static_cast<int>(a.priors[i].size()) != a.n) {
        errors.push_back("priors have wrong shape");
        shape_ok = false;
        break;
      }
      for (int j = 0; j < a.n; ++j) {
        if (i == j) {
          if (!a.priors[i][j].empty()) {
            errors.push_back("prior of a bidder about itself " + Pair(i, j));
          }
          continue;
        }
        if (a.priors[i][j].size() != a.values[j].size()) {
          errors.push_back("missing prior " + Pair(i, j));
          shape_ok = false;
          continue;
        }
        CheckDistribution(a.priors[i][j], "pmf " + Pair(i, j), &errors);
      }
    }
  }
  report.valid = errors.empty();
  if (report.valid) {
    report.is_ipv = IsIpv(a);
    report.is_iid = IsIid(a);
  }
  return report;
}

void RequireValid(const AuctionInstance& a) {
  ValidationReport report = ValidateInstance(a);
  if (!report.valid) throw InputError(report.errors.front());
}

bool IsIpv(const AuctionInstance& a) {
  for (int j = 0; j < a.n; ++j) {
    const Distribution* first = nullptr;
    for (int i = 0; i < a.n; ++i) {
      if (i == j) continue;
      if (first == nullptr) {
        first = &a.priors[i][j];
      } else if (a.priors[i][j] != *first) {
        return false;
      }
    }
  }
  return true;
}

bool IsIid(const AuctionInstance& a) {
  if (!IsIpv(a)) return false;
  if (a.n < 2) return true;
  for (int j = 1; j < a.n; ++j) {
    if (a.values[j] != a.values[0]) return false;
  }
  // Under IPV, F_j is the common belief of any i != j about j.
  const Distribution& f0 = a.priors[1][0];
  for (int j = 1; j < a.n; ++j) {
    if (a.priors[0][j] != f0) return false;
  }
  return true;
}

int InteractionDegree(const AuctionInstance& a) {
  int d = 0;
  for (int i = 0; i < a.n; ++i) {
    int count = 0;
    for (int j = 0; j < a.n; ++j) {
      if (j == i) continue;
      bool surely_zero = a.values[j].front() == 0 && a.priors[i][j][0] == 1;
      if (!surely_zero) ++count;
    }
    d = std::max(d, count);
  }
  return std::max(d, 1);
}

std::vector<std::string> ProfileErrors(const AuctionInstance& a,
                                       const MixedProfile& profile,
                                       bool allow_overbidding) {
  std::vector<std::string> errors;
  if (static_cast<int>(profile.size()) != a.n) {
    errors.push_back("profile has wrong number of bidders");
    return errors;
  }
  for (int i = 0; i < a.n; ++i) {
    if (static_cast<int>(profile[i].size()) != a.num_values(i)) {
      errors.push_back("strategy of bidder " + std::to_string(i) +
                       " has wrong number of values");
      continue;
    }
    for (int v = 0; v < a.num_values(i); ++v) {
      const Distribution& d = profile[i][v];
      std::string what = "strategy of bidder " + std::to_string(i) +
                         " at value " + ToString(a.values[i][v]);
      if (static_cast<int>(d.size()) != a.num_bids()) {
        errors.push_back(what + " has wrong number of bids");
        continue;
      }
      CheckDistribution(d, what, &errors);
      if (allow_overbidding) continue;
      for (int b = 0; b < a.num_bids(); ++b) {
        if (d[b] > 0 && a.bids[b] > a.values[i][v]) {
          errors.push_back(what + " overbids");
          break;
        }
      }
    }
  }
  return errors;
}

std::vector<std::string> PureProfileErrors(const AuctionInstance& a,
                                           const PureProfile& profile,
                                           bool allow_overbidding) {
  std::vector<std::string> errors;
  if (static_cast<int>(profile.size()) != a.n) {
    errors.push_back("profile has wrong number of bidders");
    return errors;
  }
  for (int i = 0; i < a.n; ++i) {
    if (static_cast<int>(profile[i].size()) != a.num_values(i)) {
      errors.push_back("strategy of bidder " + std::to_string(i) +
                       " has wrong number of values");
      continue;
    }
    for (int v = 0; v < a.num_values(i); ++v) {
      int b = profile[i][v];
      if (b < 0 || b >= a.num_bids()) {
        errors.push_back("bid index out of range");
      } else if (!allow_overbidding && a.bids[b] > a.values[i][v]) {
        errors.push_back("strategy of bidder " + std::to_string(i) +
                         " at value " + ToString(a.values[i][v]) +
                         " overbids");
      }
    }
  }
  return errors;
}

MixedProfile EmbedPure(const AuctionInstance& a, const PureProfile& profile) {
  MixedProfile mixed(a.n);
  for (int i = 0; i < a.n; ++i) {
    for (int b : profile[i]) mixed[i].push_back(PointMass(a.num_bids(), b));
  }
  return mixed;
}

Rational PiecewiseConstantDensity::Mass(const Rational& lo,
                                        const Rational& hi) const {
  Rational total = 0;
  for (size_t t = 0; t + 1 < breakpoints.size(); ++t) {
    Rational left = std::max(lo, breakpoints[t]);
    Rational right = std::min(hi, breakpoints[t + 1]);
    if (right > left) total += heights[t] * (right - left);
  }
  return total;
}

std::vector<std::string> DensityErrors(const PiecewiseConstantDensity& d) {
  std::vector<std::string> errors;
  if (d.breakpoints.size() < 2 || d.breakpoints.front() != 0 ||
      d.breakpoints.back() != 1) {
    errors.push_back("density breakpoints must start at 0 and end at 1");
    return errors;
  }
  CheckSortedUnit(d.breakpoints, "density breakpoints", &errors);
  if (d.heights.size() + 1 != d.breakpoints.size()) {
    errors.push_back("density needs one height per interval");
    return errors;
  }
  for (const Rational& h : d.heights) {
    if (h < 0) errors.push_back("density height negative");
  }
  if (errors.empty() && d.Mass(0, 1) != 1) {
    errors.push_back("density does not integrate to 1");
  }
  return errors;
}

std::vector<std::string> ContinuousErrors(const ContinuousAuction& c) {
  std::vector<std::string> errors;
  if (c.n < 1) errors.push_back("n must be at least 1");
  if (c.bids.empty()) {
    errors.push_back("bid space empty");
  } else {
    CheckSortedUnit(c.bids, "bid space", &errors);
    if (c.bids.front() != 0) errors.push_back("null bid absent");
  }
  if (static_cast<int>(c.priors.size()) != c.n) {
    errors.push_back("densities have wrong shape");
    return errors;
  }
  for (int i = 0; i < c.n; ++i) {
    if (static_cast<int>(c.priors[i].size()) != c.n) {
      errors.push_back("densities have wrong shape");
      return errors;
    }
    for (int j = 0; j < c.n; ++j) {
      if (i == j) continue;
      for (const std::string& e : DensityErrors(c.priors[i][j])) {
        errors.push_back(e + " " + Pair(i, j));
      }
    }
  }
  return errors;
}

void RequireValid(const ContinuousAuction& c) {
  std::vector<std::string> errors = ContinuousErrors(c);
  if (!errors.empty()) throw InputError(errors.front());
}

namespace {

bool SameDensity(const PiecewiseConstantDensity& x,
                 const PiecewiseConstantDensity& y) {
  return x.breakpoints == y.breakpoints && x.heights == y.heights;
}

}  // namespace

bool IsIid(const ContinuousAuction& c) {
  const PiecewiseConstantDensity* first = nullptr;
  for (int i = 0; i < c.n; ++i) {
    for (int j = 0; j < c.n; ++j) {
      if (i == j) continue;
      if (first == nullptr) {
        first = &c.priors[i][j];
      } else if (!SameDensity(*first, c.priors[i][j])) {
        return false;
      }
    }
  }
  return true;
}

int StepStrategy::BidAt(const Rational& v) const {
  for (size_t l = 0; l < jumps.size(); ++l) {
    if (v <= jumps[l]) return static_cast<int>(l);
  }
  return static_cast<int>(jumps.size());
}

Rational StepStrategy::RegionLo(int l) const {
  return l == 0 ? Rational(0) : jumps[l - 1];
}

Rational StepStrategy::RegionHi(int l) const {
  return l == static_cast<int>(jumps.size()) ? Rational(1) : jumps[l];
}

bool StepStrategy::RegionNonempty(int l) const {
  return l == 0 || RegionLo(l) < RegionHi(l);
}

std::vector<std::string> StepProfileErrors(const ContinuousAuction& c,
                                           const StepProfile& profile) {
  std::vector<std::string> errors;
  if (static_cast<int>(profile.size()) != c.n) {
    errors.push_back("step profile has wrong number of bidders");
    return errors;
  }
  for (int i = 0; i < c.n; ++i) {
    const StepStrategy& s = profile[i];
    std::string who = "step strategy of bidder " + std::to_string(i);
    if (static_cast<int>(s.jumps.size()) + 1 != c.num_bids()) {
      errors.push_back(who + " needs one jump point per bid but the last");
      continue;
    }
    bool ordered = true;
    for (size_t l = 0; l < s.jumps.size(); ++l) {
      if (s.jumps[l] < 0 || s.jumps[l] > 1 ||
          (l > 0 && s.jumps[l] < s.jumps[l - 1])) {
        ordered = false;
      }
    }
    if (!ordered) {
      errors.push_back(who + " jump points not nondecreasing in [0,1]");
      continue;
    }
    for (int l = 0; l < c.num_bids(); ++l) {
      if (s.RegionNonempty(l) && c.bids[l] > s.RegionLo(l)) {
        errors.push_back(who + " overbids");
        break;
      }
    }
  }
  return errors;
}

}  // namespace fpa
