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

#include "fpa/symmetric.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <random>

#include "fpa/parallel.h"
#include "fpa/transforms.h"
#include "fpa/verify.h"

namespace fpa {
namespace {

Rational Power(const Rational& x, int e) {
  Rational r = 1;
  for (int t = 0; t < e; ++t) r *= x;
  return r;
}

Integer Binomial(int n, int r) {
  Integer c = 1;
  for (int t = 1; t <= r; ++t) c = c * (n - r + t) / t;
  return c;
}

void ExactMasses(const PolySystem& sys, const std::vector<Distribution>& p,
                 int l, Rational* g, Rational* G) {
  *g = 0;
  *G = 0;
  for (int j = 0; j < sys.k(); ++j) {
    *g += p[j][l] * sys.prior[j];
    for (int t = 0; t < l; ++t) *G += p[j][t] * sys.prior[j];
  }
}

// Numeric state of one system: utilities via the telescoped form.
class NumericSystem {
 public:
  explicit NumericSystem(const PolySystem& sys) : sys_(sys) {
    for (const Rational& v : sys.values) values_.push_back(ToDouble(v));
    for (const Rational& f : sys.prior) prior_.push_back(ToDouble(f));
    for (const Rational& b : sys.bids) bids_.push_back(ToDouble(b));
    h_.resize(sys.m());
  }

  // Sum of squared positive regrets; also reports the largest regret.
  double Penalty(const std::vector<std::vector<double>>& p,
                 double* max_violation = nullptr) {
    int k = sys_.k(), m = sys_.m(), n = sys_.n;
    double below = 0;
    for (int l = 0; l < m; ++l) {
      double g = 0;
      for (int j = 0; j < k; ++j) g += p[j][l] * prior_[j];
      double above = below + g;
      // sum_r above^r below^(n-1-r), evaluated Horner style.
      double s = 0;
      for (int r = 0; r < n; ++r) s = s * above + std::pow(below, r);
      // The loop above builds sum_r above^(n-1-r) below^r, the same sum.
      h_[l] = s / n;
      below = above;
    }
    double penalty = 0, worst = 0;
    for (int j = 0; j < k; ++j) {
      double played = 0;
      for (int l = 0; l < m; ++l) {
        if (p[j][l] != 0) played += p[j][l] * (values_[j] - bids_[l]) * h_[l];
      }
      for (int l = 0; l < m; ++l) {
        double gain = (values_[j] - bids_[l]) * h_[l] - played;
        if (gain > 0) {
          penalty += gain * gain;
          worst = std::max(worst, gain);
        }
      }
    }
    if (max_violation != nullptr) *max_violation = worst;
    return penalty;
  }

 private:
  const PolySystem& sys_;
  std::vector<double> values_, prior_, bids_, h_;
};

std::vector<std::vector<double>> StartPoint(const PolySystem& sys,
                                            std::mt19937_64* rng) {
  std::vector<std::vector<double>> p(sys.k(), std::vector<double>(sys.m(), 0));
  std::gamma_distribution<double> gamma(1.0);
  for (int j = 0; j < sys.k(); ++j) {
    const std::vector<int>& a = sys.allowed[j];
    if (!sys.structure.IsMixed(j)) {
      p[j][a.front()] = 1;
      continue;
    }
    double total = 0;
    for (int l : a) {
      p[j][l] = rng == nullptr ? 1.0 : gamma(*rng) + 1e-12;
      total += p[j][l];
    }
    for (int l : a) p[j][l] /= total;
  }
  return p;
}

// Pairwise mass transfers with golden-section line search.
struct DescentResult {
  double penalty;
  double max_violation;
  bool budget_hit;
};

DescentResult Descend(const PolySystem& sys, NumericSystem& num,
                      std::vector<std::vector<double>>& p, int max_sweeps) {
  const double kGolden = 0.6180339887498949;
  double current = num.Penalty(p);
  double window_start = current;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (current <= 1e-26) break;
    for (int j = 0; j < sys.k(); ++j) {
      if (!sys.structure.IsMixed(j)) continue;
      const std::vector<int>& a = sys.allowed[j];
      for (size_t x = 0; x < a.size(); ++x) {
        for (size_t y = x + 1; y < a.size(); ++y) {
          int from = a[x], to = a[y];
          double base_from = p[j][from], base_to = p[j][to];
          auto eval = [&](double t) {
            p[j][from] = base_from - t;
            p[j][to] = base_to + t;
            return num.Penalty(p);
          };
          double lo = -base_to, hi = base_from;
          if (hi - lo < 1e-15) continue;
          double c = hi - kGolden * (hi - lo), d = lo + kGolden * (hi - lo);
          double fc = eval(c), fd = eval(d);
          for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
            if (fc < fd) {
              hi = d;
              d = c;
              fd = fc;
              c = hi - kGolden * (hi - lo);
              fc = eval(c);
            } else {
              lo = c;
              c = d;
              fc = fd;
              d = lo + kGolden * (hi - lo);
              fd = eval(d);
            }
          }
          double t = 0.5 * (lo + hi);
          double best = eval(t);
          // Endpoints matter: equilibria often sit on the boundary.
          for (double edge : {-base_to, base_from}) {
            double fe = eval(edge);
            if (fe < best) {
              best = fe;
              t = edge;
            }
          }
          if (best < current) {
            p[j][from] = std::max(0.0, base_from - t);
            p[j][to] = std::max(0.0, base_to + t);
            current = num.Penalty(p);
          } else {
            p[j][from] = base_from;
            p[j][to] = base_to;
          }
        }
      }
    }
    if ((sweep + 1) % 20 == 0) {
      if (window_start - current <= 1e-9 * window_start) break;
      window_start = current;
    }
    if (sweep + 1 == max_sweeps) {
      double worst = 0;
      double pen = num.Penalty(p, &worst);
      return {pen, worst, true};
    }
  }
  double worst = 0;
  double pen = num.Penalty(p, &worst);
  return {pen, worst, false};
}

MixedProfile SymmetricProfile(int n, const std::vector<Distribution>& row) {
  return MixedProfile(n, row);
}

SymmetricResult SolveOn(const AuctionInstance& a, const std::vector<int>& kept,
                        int m_for_delta, const Rational& eps_solve,
                        const Rational& eps_verify,
                        const SolverOptions& options) {
  if (!IsIid(a)) throw InputError("instance is not iid");
  AuctionInstance restricted = RestrictBids(a, kept);
  int k = restricted.num_values(0);
  int m = restricted.num_bids();
  std::vector<SupportStructure> structures = EnumerateStructures(k, m);
  Rational delta = eps_solve / (8 * m_for_delta * a.n);
  double accept_violation = ToDouble(eps_solve);

  std::atomic<std::size_t> found(structures.size());
  std::vector<std::optional<SymmetricResult>> results(structures.size());
  ParallelFor(structures.size(), [&](std::size_t idx) {
    if (idx > found.load()) return;
    PolySystem sys = BuildSystem(restricted, structures[idx]);
    if (sys.trivially_infeasible) return;
    auto accept = [&](const std::vector<std::vector<double>>& p) {
      std::vector<Distribution> rounded =
          Expand(sys.structure, RoundSolution(p, delta));
      MixedProfile profile =
          LiftProfile(a, kept, SymmetricProfile(a.n, rounded));
      RegretReport report = MaxRegret(a, profile);
      if (report.max_regret > eps_verify) return false;
      SymmetricResult r;
      r.profile = std::move(profile);
      r.structure = sys.structure;
      r.max_regret = report.max_regret;
      r.delta = delta;
      results[idx] = std::move(r);
      return true;
    };
    SolveSystem(sys, options, accept, accept_violation);
    if (results[idx]) {
      std::size_t cur = found.load();
      while (idx < cur && !found.compare_exchange_weak(cur, idx)) {
      }
    }
  });
  for (std::size_t idx = 0; idx < structures.size(); ++idx) {
    if (results[idx]) {
      SymmetricResult r = std::move(*results[idx]);
      r.structures_tried = static_cast<int>(idx) + 1;
      for (int b : kept) r.shrunk_bids.push_back(a.bids[b]);
      return r;
    }
  }
  throw BudgetExhausted("no support structure produced a verified profile");
}

}  // namespace

bool SupportStructure::IsMixed(int j) const {
  return std::find(xi.begin(), xi.end(), j) != xi.end();
}

int SupportStructure::Lo(int j) const {
  for (int l = 0; l < m; ++l) {
    if (IsMixed(j) ? xi[l] == j : xi[l] > j) return l;
  }
  return m - 1;
}

int SupportStructure::Hi(int j) const {
  if (!IsMixed(j)) return Lo(j);
  int last = 0;
  for (int l = 0; l < m; ++l) {
    if (xi[l] == j) last = l;
  }
  return std::min(last + 1, m - 1);
}

bool IsValidStructure(const SupportStructure& s) {
  if (s.k < 1 || s.m < 1 || static_cast<int>(s.xi.size()) != s.m) return false;
  for (int l = 0; l < s.m; ++l) {
    if (s.xi[l] < 0 || s.xi[l] >= s.k) return false;
    if (l > 0 && s.xi[l] < s.xi[l - 1]) return false;
  }
  return s.xi.back() == s.k - 1;
}

Integer CountStructures(int k, int m) { return Binomial(k + m - 2, m - 1); }

std::vector<SupportStructure> EnumerateStructures(int k, int m,
                                                  std::size_t limit) {
  if (k < 1 || m < 1) throw InputError("k and m must be positive");
  if (CountStructures(k, m) > Integer(static_cast<unsigned long long>(limit))) {
    throw InputError("too many support structures");
  }
  std::vector<SupportStructure> out;
  SupportStructure s{k, m, std::vector<int>(m, 0)};
  s.xi[m - 1] = k - 1;
  while (true) {
    out.push_back(s);
    // Advance the prefix xi[0..m-2] as a nondecreasing odometer.
    int pos = m - 2;
    while (pos >= 0 && s.xi[pos] == k - 1) --pos;
    if (pos < 0) break;
    int next = s.xi[pos] + 1;
    for (int t = pos; t <= m - 2; ++t) s.xi[t] = next;
  }
  return out;
}

std::vector<Distribution> Expand(const SupportStructure& s,
                                 const std::vector<Distribution>& p) {
  std::vector<Distribution> out(s.k, Distribution(s.m, Rational(0)));
  for (int j = 0; j < s.k; ++j) {
    if (!s.IsMixed(j)) {
      out[j][s.Lo(j)] = 1;
      continue;
    }
    for (int l = s.Lo(j); l <= s.Hi(j); ++l) out[j][l] = p[j][l];
  }
  return out;
}

int PolySystem::NumFreeVariables() const {
  int count = 0;
  for (int j = 0; j < k(); ++j) {
    if (structure.IsMixed(j)) count += static_cast<int>(allowed[j].size());
  }
  return count;
}

PolySystem BuildSystem(const AuctionInstance& a, const SupportStructure& s) {
  if (!IsIid(a)) throw InputError("instance is not iid");
  if (!IsValidStructure(s) || s.k != a.num_values(0) || s.m != a.num_bids()) {
    throw InputError("structure does not fit the instance");
  }
  PolySystem sys;
  sys.n = a.n;
  sys.values = a.values[0];
  sys.bids = a.bids;
  sys.structure = s;
  if (a.n >= 2) {
    sys.prior = a.priors[1][0];
  } else {
    sys.prior.assign(s.k, MakeRational(1, s.k));
  }
  sys.allowed.resize(s.k);
  for (int j = 0; j < s.k; ++j) {
    for (int l = s.Lo(j); l <= s.Hi(j); ++l) {
      if (sys.bids[l] <= sys.values[j]) sys.allowed[j].push_back(l);
    }
    if (sys.allowed[j].empty() && !sys.trivially_infeasible) {
      sys.trivially_infeasible = true;
      sys.infeasible_reason = "value " + std::to_string(j) +
                              (s.IsMixed(j) ? " has only overbids in its interval"
                                            : " is forced to overbid");
    }
  }
  return sys;
}

Rational UtilityBinomial(const PolySystem& sys,
                         const std::vector<Distribution>& p, int l, int j) {
  Rational g, G;
  ExactMasses(sys, p, l, &g, &G);
  Rational s = 0;
  for (int r = 0; r < sys.n; ++r) {
    s += Rational(Binomial(sys.n - 1, r)) * Power(g, r) *
         Power(G, sys.n - 1 - r) / Rational(r + 1);
  }
  return (sys.values[j] - sys.bids[l]) * s;
}

Rational UtilityTelescoped(const PolySystem& sys,
                           const std::vector<Distribution>& p, int l, int j) {
  Rational g, G;
  ExactMasses(sys, p, l, &g, &G);
  Rational s = 0;
  for (int r = 0; r < sys.n; ++r) s += Power(G + g, r) * Power(G, sys.n - 1 - r);
  return (sys.values[j] - sys.bids[l]) / Rational(sys.n) * s;
}

Rational ExactViolation(const PolySystem& sys,
                        const std::vector<Distribution>& p) {
  Rational worst = 0;
  for (int j = 0; j < sys.k(); ++j) {
    Rational total = 0;
    for (int l = 0; l < sys.m(); ++l) {
      worst = std::max(worst, Rational(-p[j][l]));
      if (sys.bids[l] > sys.values[j]) worst = std::max(worst, p[j][l]);
      total += p[j][l];
    }
    worst = std::max(worst, abs(total - 1));
    std::vector<Rational> u(sys.m());
    Rational played = 0;
    for (int l = 0; l < sys.m(); ++l) {
      u[l] = UtilityTelescoped(sys, p, l, j);
      played += p[j][l] * u[l];
    }
    for (int l = 0; l < sys.m(); ++l) worst = std::max(worst, u[l] - played);
  }
  return worst;
}

const char* SolveStatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kStagnated:
      return "stagnated";
    case SolveStatus::kBudgetExhausted:
      return "budget-exhausted";
    case SolveStatus::kTriviallyInfeasible:
      return "trivially-infeasible";
  }
  return "unknown";
}

SolveOutcome SolveSystem(const PolySystem& sys, const SolverOptions& options,
                         const AcceptFn& accept, double accept_violation) {
  SolveOutcome out;
  if (sys.trivially_infeasible) return out;
  NumericSystem num(sys);
  out.penalty = std::numeric_limits<double>::infinity();
  bool budget_hit = false;
  int total_starts = options.starts + (options.initial.empty() ? 0 : 1);
  for (int start = 0; start < total_starts; ++start) {
    std::vector<std::vector<double>> p;
    int random_index = options.initial.empty() ? start : start - 1;
    if (random_index < 0) {
      p = options.initial;
    } else if (random_index == 0) {
      p = StartPoint(sys, nullptr);
    } else {
      std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(random_index));
      p = StartPoint(sys, &rng);
    }
    DescentResult r = Descend(sys, num, p, options.max_sweeps);
    budget_hit = budget_hit || r.budget_hit;
    if (r.penalty < out.penalty) {
      out.penalty = r.penalty;
      out.max_violation = r.max_violation;
      out.p = p;
    }
    if (accept && r.max_violation <= accept_violation && accept(p)) {
      out.status = SolveStatus::kConverged;
      out.p = p;
      out.penalty = r.penalty;
      out.max_violation = r.max_violation;
      return out;
    }
    if (!accept && r.max_violation <= 1e-12) break;
  }
  if (out.max_violation <= 1e-12) {
    out.status = SolveStatus::kConverged;
  } else {
    out.status =
        budget_hit ? SolveStatus::kBudgetExhausted : SolveStatus::kStagnated;
  }
  return out;
}

std::vector<Distribution> RoundSolution(
    const std::vector<std::vector<double>>& p_tilde, const Rational& delta) {
  std::vector<Distribution> out;
  for (const std::vector<double>& row : p_tilde) {
    if (delta * 3 * static_cast<long long>(row.size()) > 1) {
      throw InputError("rounding needs delta <= 1/(3m)");
    }
    Distribution d;
    Rational total = 0;
    for (double x : row) {
      Rational r = FromDouble(x);
      if (r <= delta) {
        r = 0;
      } else if (r >= 1) {
        r = 1;
      }
      d.push_back(r);
      total += r;
    }
    if (total == 0) throw InputError("row rounds to zero");
    for (Rational& r : d) r /= total;
    out.push_back(std::move(d));
  }
  return out;
}

SymmetricResult SolveSymmetric(const AuctionInstance& a, const Rational& eps,
                               const SolverOptions& options) {
  RequireValid(a);
  if (eps <= 0) throw InputError("eps must be positive");
  Integer m_int = (Denominator(eps) * 2 + Numerator(eps) - 1) / Numerator(eps);
  int m_shrink = m_int > 1000000 ? 1000000 : m_int.convert_to<int>();
  ShrinkResult shrink = ShrinkBidspace(a.bids, m_shrink);
  SymmetricResult r = SolveOn(a, shrink.kept, m_shrink, eps / 2, eps, options);
  r.m_shrink = m_shrink;
  return r;
}

SymmetricResult SolveSymmetricOnBids(const AuctionInstance& a,
                                     const Rational& eps,
                                     const SolverOptions& options) {
  RequireValid(a);
  if (eps <= 0) throw InputError("eps must be positive");
  std::vector<int> all(a.num_bids());
  for (int b = 0; b < a.num_bids(); ++b) all[b] = b;
  SymmetricResult r = SolveOn(a, all, a.num_bids(), eps / 2, eps, options);
  r.m_shrink = a.num_bids();
  return r;
}

}  // namespace fpa
