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
#include <set>

#include "fpa/gadgets.h"
#include "fpa/utility.h"
#include "fpa/verify.h"
#include "gadgets_internal.h"

namespace fpa {
namespace {

using internal::InstanceBuilder;

std::vector<Rational> TwoPoint(const Rational& v) { return {Rational(0), v}; }

Distribution Surely() { return {Rational(0), Rational(1)}; }

int ArgMax(const std::vector<Rational>& u) {
  return static_cast<int>(std::max_element(u.begin(), u.end()) - u.begin());
}

}  // namespace

PureCircuit ParsePureCircuit(const std::string& text) {
  PureCircuit pc;
  std::set<std::string> outputs;
  for (const auto& t : internal::Statements(text)) {
    auto eq = std::find(t.begin(), t.end(), "=");
    if (eq == t.end() || eq + 1 == t.end()) {
      throw InputError("malformed gate statement");
    }
    std::vector<std::string> outs(t.begin(), eq);
    std::vector<std::string> ins(eq + 2, t.end());
    const std::string& kind = *(eq + 1);
    PureGate g;
    if (kind == "NOT" && outs.size() == 1 && ins.size() == 1) {
      g = {PureGateKind::kNot, ins[0], outs[0], ""};
    } else if (kind == "AND" && outs.size() == 1 && ins.size() == 2) {
      g = {PureGateKind::kAnd, ins[0], ins[1], outs[0]};
    } else if (kind == "PURIFY" && outs.size() == 2 && ins.size() == 1) {
      g = {PureGateKind::kPurify, ins[0], outs[0], outs[1]};
    } else {
      throw InputError("unknown gate or wrong arity: " + kind);
    }
    std::set<std::string> used{g.x, g.y};
    if (g.kind != PureGateKind::kNot) used.insert(g.z);
    if (used.size() != (g.kind == PureGateKind::kNot ? 2u : 3u)) {
      throw InputError("gate nodes must be distinct");
    }
    for (const std::string& o : outs) {
      if (!outputs.insert(o).second) {
        throw InputError("node '" + o + "' is the output of two gates");
      }
      pc.nodes.push_back(o);
    }
    pc.gates.push_back(g);
  }
  for (const PureGate& g : pc.gates) {
    std::vector<std::string> ins = {g.x};
    if (g.kind == PureGateKind::kAnd) ins.push_back(g.y);
    for (const std::string& x : ins) {
      if (!outputs.count(x)) {
        throw InputError("node '" + x + "' is not the output of any gate");
      }
    }
  }
  return pc;
}

bool SatisfiesPureCircuit(const PureCircuit& pc, const TritAssignment& a) {
  auto val = [&](const std::string& x) {
    auto it = a.find(x);
    if (it == a.end()) throw InputError("no value for node " + x);
    return it->second;
  };
  const Trit kZero = Trit::kZero, kOne = Trit::kOne, kBot = Trit::kBottom;
  for (const PureGate& g : pc.gates) {
    switch (g.kind) {
      case PureGateKind::kNot:
        if (val(g.x) == kZero && val(g.y) != kOne) return false;
        if (val(g.x) == kOne && val(g.y) != kZero) return false;
        break;
      case PureGateKind::kAnd:
        if (val(g.x) == kOne && val(g.y) == kOne && val(g.z) != kOne) {
          return false;
        }
        if ((val(g.x) == kZero || val(g.y) == kZero) && val(g.z) != kZero) {
          return false;
        }
        break;
      case PureGateKind::kPurify:
        if (val(g.y) == kBot && val(g.z) == kBot) return false;
        if (val(g.x) != kBot && (val(g.y) != val(g.x) || val(g.z) != val(g.x))) {
          return false;
        }
        break;
    }
  }
  return true;
}

PureCircuitReduction PureCircuitToDfpa(const PureCircuit& pc,
                                       int min_bidders) {
  InstanceBuilder builder;
  PureCircuitReduction r;
  for (int k = 1; k <= 2; ++k) {
    r.constant_members.push_back(
        builder.Add("const#c" + std::to_string(k), TwoPoint(MakeRational(1, 2))));
  }
  r.constant = builder.Add("const#", TwoPoint(Rational(1)));
  for (int c : r.constant_members) builder.SetPrior(r.constant, c, Surely());

  for (const PureGate& g : pc.gates) {
    switch (g.kind) {
      case PureGateKind::kNot:
        r.node_bidder[g.y] = builder.Add(g.y, TwoPoint(MakeRational(5, 8)));
        r.not_aux[g.y] =
            builder.Add(g.y + "#aux", TwoPoint(MakeRational(13, 14)));
        break;
      case PureGateKind::kAnd:
        r.node_bidder[g.z] = builder.Add(g.z, TwoPoint(MakeRational(7, 12)));
        break;
      case PureGateKind::kPurify:
        r.node_bidder[g.y] = builder.Add(g.y, TwoPoint(MakeRational(9, 16)));
        r.node_bidder[g.z] = builder.Add(g.z, TwoPoint(MakeRational(11, 16)));
        break;
    }
  }
  const auto& node = r.node_bidder;
  for (const PureGate& g : pc.gates) {
    switch (g.kind) {
      case PureGateKind::kNot: {
        int aux = r.not_aux.at(g.y);
        builder.SetPrior(aux, node.at(g.x), Surely());
        builder.SetPrior(aux, r.constant, Surely());
        builder.SetPrior(node.at(g.y), aux,
                         {MakeRational(1, 9), MakeRational(8, 9)});
        break;
      }
      case PureGateKind::kAnd:
        builder.SetPrior(node.at(g.z), node.at(g.x), Surely());
        builder.SetPrior(node.at(g.z), node.at(g.y), Surely());
        break;
      case PureGateKind::kPurify:
        builder.SetPrior(node.at(g.y), node.at(g.x), Surely());
        builder.SetPrior(node.at(g.z), node.at(g.x), Surely());
        break;
    }
  }
  r.auction = builder.Build({Rational(0), MakeRational(1, 4),
                             MakeRational(1, 2), MakeRational(3, 4)},
                            min_bidders, &r.bidder_names);
  return r;
}

TritAssignment ExtractAssignment(const PureCircuitReduction& r,
                                 const MixedProfile& profile) {
  TritAssignment out;
  for (const auto& [name, bidder] : r.node_bidder) {
    const Rational& p1 = profile.at(bidder).at(1).at(1);
    out[name] = p1 == 1 ? Trit::kOne : p1 == 0 ? Trit::kZero : Trit::kBottom;
  }
  return out;
}

std::optional<PureProfile> BestResponseDynamics(const AuctionInstance& a,
                                                const Rational& eps,
                                                int max_steps) {
  RequireValid(a);
  PureProfile p(a.n);
  std::vector<int> active;
  for (int i = 0; i < a.n; ++i) {
    p[i].assign(a.num_values(i), 0);
    // Bid 0 is always a best response for a bidder whose values are all 0.
    if (a.values[i].back() != 0) active.push_back(i);
  }
  MixedProfile mixed = EmbedPure(a, p);
  for (int step = 0; step < max_steps; ++step) {
    bool changed = false;
    for (size_t k = 0; k < active.size() && !changed; ++k) {
      int i = active[k];
      std::vector<Rational> h = WinProbRow(a, i, mixed);
      for (int v = 0; v < a.num_values(i) && !changed; ++v) {
        std::vector<Rational> u(a.num_bids());
        for (int b = 0; b < a.num_bids(); ++b) {
          u[b] = (a.values[i][v] - a.bids[b]) * h[b];
        }
        int best = ArgMax(u);
        if (u[best] - u[p[i][v]] > eps) {
          p[i][v] = best;
          mixed[i][v] = PointMass(a.num_bids(), best);
          changed = true;
        }
      }
    }
    if (!changed) return p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

struct MarginContext {
  const PureCircuitReduction& r;
  const AuctionInstance& a;
  Rational eps;
  std::vector<GadgetCheck>* out;

  // Node bidders play `p1` on b1 and the rest on b2; constant bidders and
  // NOT auxiliaries play their intended bids.
  MixedProfile Base() const {
    MixedProfile m(a.n);
    for (int i = 0; i < a.n; ++i) {
      m[i].assign(a.num_values(i), PointMass(a.num_bids(), 0));
    }
    for (int c : r.constant_members) m[c][1] = PointMass(a.num_bids(), 1);
    m[r.constant][1] = PointMass(a.num_bids(), 2);
    for (const auto& [name, b] : r.node_bidder) {
      m[b][1] = PointMass(a.num_bids(), 2);
    }
    for (const auto& [name, b] : r.not_aux) {
      m[b][1] = PointMass(a.num_bids(), 2);
    }
    return m;
  }

  static Distribution Split(int bids, const Rational& p1) {
    Distribution d(bids, Rational(0));
    d[1] = p1;
    d[2] = 1 - p1;
    return d;
  }

  void Gap(const std::string& name, int i, const MixedProfile& m, int hi,
           int lo, const Rational& want) {
    std::vector<Rational> u = UtilityRow(a, i, 1, m);
    Rational got = u[hi] - u[lo];
    GadgetCheck c{name, got == want, ""};
    if (!c.ok) c.detail = "got " + ToString(got) + ", want " + ToString(want);
    out->push_back(c);
  }

  void Unique(const std::string& name, int i, const MixedProfile& m,
              int want) {
    std::vector<int> br = BestResponses(a, i, 1, m, eps);
    GadgetCheck c{name, br == std::vector<int>{want}, ""};
    if (!c.ok) {
      c.detail = "eps-best responses:";
      for (int b : br) c.detail += " " + std::to_string(b);
    }
    out->push_back(c);
  }

  void Row(const std::string& name, int i, const MixedProfile& m,
           const std::vector<Rational>& want) {
    std::vector<Rational> u = UtilityRow(a, i, 1, m);
    GadgetCheck c{name, true, ""};
    for (size_t b = 0; b < want.size(); ++b) {
      if (u[b] != want[b]) {
        c.ok = false;
        c.detail += "bid " + std::to_string(b) + ": got " + ToString(u[b]) +
                    ", want " + ToString(want[b]) + "; ";
      }
    }
    out->push_back(c);
  }
};

}  // namespace

std::vector<GadgetCheck> CheckPureCircuitGadgets(int min_bidders) {
  PureCircuit pc = ParsePureCircuit(
      "x = NOT y\ny = NOT x\nz = AND x y\np q = PURIFY z\n");
  PureCircuitReduction r = PureCircuitToDfpa(pc, min_bidders);
  const AuctionInstance& a = r.auction;
  std::vector<GadgetCheck> out;
  MarginContext ctx{r, a, MakeRational(1, 36) - MakeRational(1, 1000000000),
                    &out};
  const int nb = a.num_bids();
  const int x = r.node_bidder.at("x"), y = r.node_bidder.at("y");
  const int z = r.node_bidder.at("z");
  const int py = r.node_bidder.at("p"), pz = r.node_bidder.at("q");
  const int aux = r.not_aux.at("x");  // x = NOT y
  const int nx = r.node_bidder.at("x");

  int degree = InteractionDegree(a);
  out.push_back({"interaction degree is 2", degree == 2,
                 "got " + std::to_string(degree)});

  MixedProfile base = ctx.Base();
  ctx.Row("constant member utilities", r.constant_members[0], base,
          {MakeRational(1, 2 * a.n), MakeRational(1, 4), Rational(0)});
  ctx.Unique("constant member plays b1", r.constant_members[0], base, 1);
  ctx.Row("constant utilities", r.constant, base,
          {Rational(0), MakeRational(1, 4), MakeRational(1, 2),
           MakeRational(1, 4)});
  ctx.Unique("constant plays b2", r.constant, base, 2);

  // AND with x, y valid: p1, q1 are their masses on b1.
  const Rational half = MakeRational(1, 2);
  for (auto [p1, q1] : std::vector<std::pair<Rational, Rational>>{
           {1, 1}, {0, 1}, {1, 0}, {0, 0}, {0, half}, {half, 0}}) {
    MixedProfile m = base;
    m[x][1] = MarginContext::Split(nb, p1);
    m[y][1] = MarginContext::Split(nb, q1);
    std::string tag = "AND p1=" + ToString(p1) + " q1=" + ToString(q1);
    if (p1 == 1 && q1 == 1) {
      ctx.Gap(tag + " margin", z, m, 1, 2, MakeRational(1, 36));
      ctx.Unique(tag + " plays b1", z, m, 1);
    } else {
      Rational other = p1 == 0 ? q1 : p1;
      ctx.Gap(tag + " margin", z, m, 2, 1,
              (other / 2 + (1 - other) / 3) / 12);
      ctx.Unique(tag + " plays b2", z, m, 2);
    }
  }

  // PURIFY: u(b1) - u(b2) = p1/8 - v/2 + 1/4.
  for (Rational p1 : {Rational(0), MakeRational(1, 4), half,
                      MakeRational(3, 4), Rational(1)}) {
    MixedProfile m = base;
    m[z][1] = MarginContext::Split(nb, p1);
    for (auto [who, v] : {std::pair{py, MakeRational(9, 16)},
                          std::pair{pz, MakeRational(11, 16)}}) {
      std::string tag = std::string(who == py ? "PURIFY first" : "PURIFY second") +
                        " p1=" + ToString(p1);
      ctx.Gap(tag + " margin", who, m, 1, 2, p1 / 8 - v / 2 + MakeRational(1, 4));
      bool first = who == py;
      if (p1 == 0 || (!first && p1 <= half)) ctx.Unique(tag + " plays b2", who, m, 2);
      if (p1 == 1 || (first && p1 >= half)) ctx.Unique(tag + " plays b1", who, m, 1);
    }
  }

  // NOT x = NOT y: the auxiliary reads y and the constant.
  for (int bit = 0; bit <= 1; ++bit) {
    MixedProfile m = base;
    m[y][1] = PointMass(nb, bit ? 1 : 2);
    std::string tag = "NOT auxiliary input=" + std::to_string(bit);
    if (bit == 0) {
      ctx.Gap(tag + " margin", aux, m, 3, 2, MakeRational(1, 28));
      ctx.Unique(tag + " plays b3", aux, m, 3);
    } else {
      ctx.Gap(tag + " margin", aux, m, 2, 3, MakeRational(1, 28));
      ctx.Unique(tag + " plays b2", aux, m, 2);
    }
  }
  for (int aux_bid = 2; aux_bid <= 3; ++aux_bid) {
    MixedProfile m = base;
    m[aux][1] = PointMass(nb, aux_bid);
    std::string tag = "NOT output vs auxiliary b" + std::to_string(aux_bid);
    if (aux_bid == 2) {
      ctx.Gap(tag + " margin", nx, m, 2, 1, MakeRational(1, 36));
      ctx.Unique(tag + " plays b2", nx, m, 2);
    } else {
      ctx.Gap(tag + " margin", nx, m, 1, 2, MakeRational(1, 36));
      ctx.Unique(tag + " plays b1", nx, m, 1);
    }
  }
  return out;
}

}  // namespace fpa
