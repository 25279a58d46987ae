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
#include <functional>
#include <set>

#include "fpa/gadgets.h"
#include "fpa/utility.h"
#include "fpa/verify.h"
#include "gadgets_internal.h"

namespace fpa {
namespace {

using internal::InstanceBuilder;

std::vector<Rational> CircuitValues() {
  return {Rational(0), MakeRational(9, 40), Rational(1)};
}

std::vector<Rational> CircuitBids() {
  return {Rational(0), MakeRational(1, 10), MakeRational(2, 10),
          MakeRational(3, 10)};
}

// Prior that reads an encoding node: it only sees values 0 and 9/40.
Distribution ProjectionPrior() {
  return {MakeRational(6, 100), MakeRational(94, 100), Rational(0)};
}

// Prior of a NOT bidder: it only sees values 0 and 1.
Distribution NotPrior() {
  return {MakeRational(6, 100), Rational(0), MakeRational(94, 100)};
}

Distribution OutputPairPrior() {
  return {MakeRational(8, 11), Rational(0), MakeRational(3, 11)};
}

Distribution OutputNodePrior() {
  return {MakeRational(1, 2), MakeRational(1, 2), Rational(0)};
}

// Bid indices of the two encoding strategies on V = {0, 9/40, 1}.
PureStrategy Encoding(bool bit) {
  return bit ? PureStrategy{0, 2, 3} : PureStrategy{0, 1, 2};
}

GateKind ParseGateKind(const std::string& s) {
  if (s == "OR") return GateKind::kOr;
  if (s == "NOT") return GateKind::kNot;
  if (s == "SPLIT") return GateKind::kSplit;
  throw InputError("unknown gate '" + s + "'");
}

int BidderOf(const CircuitReduction& r, const std::string& name) {
  auto it = std::find(r.bidder_names.begin(), r.bidder_names.end(), name);
  if (it == r.bidder_names.end()) throw InputError("no bidder " + name);
  return static_cast<int>(it - r.bidder_names.begin());
}

int ArgMax(const std::vector<Rational>& u) {
  return static_cast<int>(std::max_element(u.begin(), u.end()) - u.begin());
}

}  // namespace

Circuit ParseCircuit(const std::string& text) {
  Circuit c;
  std::vector<CircuitGate> pending;
  std::set<std::string> defined;
  auto define = [&](const std::string& node) {
    if (!defined.insert(node).second) {
      throw InputError("node '" + node + "' defined twice");
    }
  };
  bool has_output = false;
  for (const auto& t : internal::Statements(text)) {
    if (t[0] == "input") {
      if (t.size() != 2) throw InputError("malformed input statement");
      define(t[1]);
      c.inputs.push_back(t[1]);
      continue;
    }
    if (t[0] == "output") {
      if (t.size() != 2 || has_output) {
        throw InputError("expected exactly one 'output <node>' statement");
      }
      c.output = t[1];
      has_output = true;
      continue;
    }
    auto eq = std::find(t.begin(), t.end(), "=");
    if (eq == t.end() || eq + 1 == t.end()) {
      throw InputError("malformed gate statement");
    }
    CircuitGate g;
    g.kind = ParseGateKind(*(eq + 1));
    g.outputs.assign(t.begin(), eq);
    g.inputs.assign(eq + 2, t.end());
    size_t outs = g.kind == GateKind::kSplit ? 2 : 1;
    size_t ins = g.kind == GateKind::kOr ? 2 : 1;
    if (g.outputs.size() != outs || g.inputs.size() != ins) {
      throw InputError("wrong arity for gate " + *(eq + 1));
    }
    if (g.kind == GateKind::kOr && g.inputs[0] == g.inputs[1]) {
      throw InputError("OR inputs must be distinct; use SPLIT");
    }
    for (const std::string& o : g.outputs) define(o);
    pending.push_back(std::move(g));
  }
  if (!has_output) throw InputError("missing output statement");
  if (!defined.count(c.output)) throw InputError("output node undefined");

  // Topological order; a leftover gate means a cycle or an undefined input.
  std::set<std::string> ready(c.inputs.begin(), c.inputs.end());
  while (!pending.empty()) {
    auto it = std::find_if(pending.begin(), pending.end(), [&](auto& g) {
      return std::all_of(g.inputs.begin(), g.inputs.end(),
                         [&](auto& x) { return ready.count(x) > 0; });
    });
    if (it == pending.end()) {
      throw InputError("circuit has a cycle or an undefined node");
    }
    for (const std::string& o : it->outputs) ready.insert(o);
    c.gates.push_back(std::move(*it));
    pending.erase(it);
  }
  return c;
}

BoolAssignment EvaluateCircuit(const Circuit& c, const BoolAssignment& inputs) {
  BoolAssignment val;
  for (const std::string& x : c.inputs) {
    auto it = inputs.find(x);
    if (it == inputs.end()) throw InputError("no value for input " + x);
    val[x] = it->second;
  }
  for (const CircuitGate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kOr:
        val[g.outputs[0]] = val.at(g.inputs[0]) || val.at(g.inputs[1]);
        break;
      case GateKind::kNot:
        val[g.outputs[0]] = !val.at(g.inputs[0]);
        break;
      case GateKind::kSplit:
        val[g.outputs[0]] = val[g.outputs[1]] = val.at(g.inputs[0]);
        break;
    }
  }
  return val;
}

std::optional<BoolAssignment> SolveCircuit(const Circuit& c) {
  if (c.inputs.size() > 24) throw InputError("too many inputs to enumerate");
  for (std::uint64_t mask = 0; mask < (1ULL << c.inputs.size()); ++mask) {
    BoolAssignment in;
    for (size_t k = 0; k < c.inputs.size(); ++k) {
      in[c.inputs[k]] = (mask >> k) & 1;
    }
    if (EvaluateCircuit(c, in).at(c.output)) return in;
  }
  return std::nullopt;
}

CircuitReduction CircuitToDfpa(const Circuit& c, int min_bidders) {
  InstanceBuilder builder;
  CircuitReduction r;
  auto& node = r.node_bidder;
  for (const std::string& x : c.inputs) {
    int a = builder.Add(x, CircuitValues());
    int b = builder.Add(x + "#pair", CircuitValues());
    builder.SetPrior(a, b, ProjectionPrior());
    builder.SetPrior(b, a, ProjectionPrior());
    node[x] = a;
  }
  for (const CircuitGate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kOr: {
        int k = builder.Add(g.outputs[0] + "#or", CircuitValues());
        builder.SetPrior(k, node.at(g.inputs[0]), ProjectionPrior());
        builder.SetPrior(k, node.at(g.inputs[1]), ProjectionPrior());
        int y = builder.Add(g.outputs[0], CircuitValues());
        builder.SetPrior(y, k, ProjectionPrior());
        node[g.outputs[0]] = y;
        break;
      }
      case GateKind::kNot: {
        int j = builder.Add(g.outputs[0] + "#not", CircuitValues());
        builder.SetPrior(j, node.at(g.inputs[0]), NotPrior());
        int y = builder.Add(g.outputs[0], CircuitValues());
        builder.SetPrior(y, j, ProjectionPrior());
        node[g.outputs[0]] = y;
        break;
      }
      case GateKind::kSplit:
        for (const std::string& o : g.outputs) {
          int y = builder.Add(o, CircuitValues());
          builder.SetPrior(y, node.at(g.inputs[0]), ProjectionPrior());
          node[o] = y;
        }
        break;
    }
  }
  r.k = builder.Add("out#k", CircuitValues());
  r.l = builder.Add("out#l", CircuitValues());
  builder.SetPrior(r.k, r.l, OutputPairPrior());
  builder.SetPrior(r.l, r.k, OutputPairPrior());
  builder.SetPrior(r.k, node.at(c.output), OutputNodePrior());
  r.auction = builder.Build(CircuitBids(), min_bidders, &r.bidder_names);
  r.eps_bound = MakeRational(1, 180);
  return r;
}

PureProfile PropagatedProfile(const Circuit& c, const CircuitReduction& r,
                              const BoolAssignment& inputs) {
  const AuctionInstance& a = r.auction;
  BoolAssignment val = EvaluateCircuit(c, inputs);
  // -1 marks entries no prior looks at; they get a best response below.
  PureProfile p(a.n);
  for (int i = 0; i < a.n; ++i) p[i].assign(a.num_values(i), 0);
  for (const auto& [name, bidder] : r.node_bidder) {
    p[bidder] = Encoding(val.at(name));
  }
  for (const std::string& x : c.inputs) {
    p[BidderOf(r, x + "#pair")] = Encoding(val.at(x));
  }
  for (const CircuitGate& g : c.gates) {
    if (g.kind == GateKind::kOr) {
      bool any = val.at(g.inputs[0]) || val.at(g.inputs[1]);
      p[BidderOf(r, g.outputs[0] + "#or")] = {0, any ? 2 : 1, -1};
    } else if (g.kind == GateKind::kNot) {
      p[BidderOf(r, g.outputs[0] + "#not")] = {0, val.at(g.inputs[0]) ? 1 : 2,
                                               -1};
    }
  }
  p[r.k] = {0, -1, 3};
  p[r.l] = {0, -1, 1};

  PureProfile base = p;
  for (auto& s : base) {
    for (int& b : s) b = std::max(b, 0);
  }
  MixedProfile mixed = EmbedPure(a, base);
  for (int i = 0; i < a.n; ++i) {
    for (int v = 0; v < a.num_values(i); ++v) {
      if (p[i][v] < 0) p[i][v] = ArgMax(UtilityRow(a, i, v, mixed));
    }
  }
  return p;
}

PureProfile AssignmentToPbne(const Circuit& c, const CircuitReduction& r,
                             const BoolAssignment& inputs) {
  if (!EvaluateCircuit(c, inputs).at(c.output)) {
    throw InputError("assignment does not satisfy the circuit");
  }
  PureProfile p = PropagatedProfile(c, r, inputs);
  // Against a true output the output gadget settles on (3, 1); the free
  // entries were already set to best responses.
  return p;
}

std::vector<std::pair<int, int>> OutputGadgetFixedPoints(
    const CircuitReduction& r, const PureProfile& profile,
    const Rational& eps) {
  const AuctionInstance& a = r.auction;
  const int top = 2;
  auto responses = [&](int who, int other, int other_bid) {
    PureProfile p = profile;
    p[other][top] = other_bid;
    return BestResponses(a, who, top, EmbedPure(a, p), eps);
  };
  std::vector<std::vector<int>> br_k(a.num_bids()), br_l(a.num_bids());
  for (int t = 0; t < a.num_bids(); ++t) {
    br_k[t] = responses(r.k, r.l, t);
    br_l[t] = responses(r.l, r.k, t);
  }
  std::vector<std::pair<int, int>> fixed;
  for (int kb = 0; kb < a.num_bids(); ++kb) {
    for (int lb : br_l[kb]) {
      if (std::count(br_k[lb].begin(), br_k[lb].end(), kb)) {
        fixed.emplace_back(kb, lb);
      }
    }
  }
  return fixed;
}

// ---------------------------------------------------------------------------
// Gadget tables. Entries are unscaled (values 0, 9/4, 10 and bids 0..3);
// A trailing "n" (or "/n") divides by the number of bidders and "-" is not
// checked.

namespace {

struct TableCase {
  std::string name;
  int bidder;
  PureProfile profile;
  std::vector<std::string> h;
  std::vector<std::string> u_mid;  // value 9/4
  std::vector<std::string> u_top;  // value 10, may be empty
  int br_mid;
  int br_top;                      // -1 when not checked
};

Rational TableEntry(const std::string& s, int n) {
  if (!s.empty() && s.back() == 'n') {
    std::string c = s.substr(0, s.size() - 1);
    if (!c.empty() && c.back() == '/') c.pop_back();
    return ParseRational(c) / n;
  }
  return ParseRational(s);
}

void CompareRow(const std::string& name, const std::vector<Rational>& got,
                const std::vector<std::string>& want, const Rational& scale,
                int n, std::vector<GadgetCheck>* out) {
  GadgetCheck check{name, true, ""};
  for (size_t b = 0; b < want.size(); ++b) {
    if (want[b] == "-") continue;
    Rational expected = TableEntry(want[b], n);
    if (got[b] * scale != expected) {
      check.ok = false;
      check.detail += "bid " + std::to_string(b) + ": got " +
                      ToString(got[b] * scale) + ", want " +
                      ToString(expected) + "; ";
    }
  }
  out->push_back(check);
}

void CheckBestResponse(const std::string& name, const AuctionInstance& a,
                       int i, int v, const MixedProfile& mixed,
                       const Rational& eps, int want,
                       std::vector<GadgetCheck>* out) {
  std::vector<int> br = BestResponses(a, i, v, mixed, eps);
  GadgetCheck check{name, br == std::vector<int>{want}, ""};
  if (!check.ok) {
    check.detail = "eps-best responses:";
    for (int b : br) check.detail += " " + std::to_string(b);
  }
  out->push_back(check);
}

}  // namespace

std::vector<GadgetCheck> CheckCircuitGadgets(int n) {
  Circuit c = ParseCircuit(
      "input x\ninput w\nnv = NOT x\no = OR x w\np q = SPLIT o\noutput nv\n");
  CircuitReduction r = CircuitToDfpa(c, n);
  const AuctionInstance& a = r.auction;
  // Scaled tolerance just under 1/18 on the unscaled instance.
  Rational eps = (MakeRational(1, 18) - MakeRational(1, 1000000000)) / 10;
  PureProfile zero(a.n);
  for (int i = 0; i < a.n; ++i) zero[i].assign(a.num_values(i), 0);
  auto with = [&](std::vector<std::pair<int, PureStrategy>> set) {
    PureProfile p = zero;
    for (auto& [i, s] : set) p[i] = s;
    return p;
  };
  int x = r.node_bidder.at("x"), w = r.node_bidder.at("w");
  int o = r.node_bidder.at("o"), pp = r.node_bidder.at("p");
  int nv = r.node_bidder.at("nv");
  int pair = BidderOf(r, "x#pair");
  int orb = BidderOf(r, "o#or"), notb = BidderOf(r, "nv#not");
  PureStrategy s0 = Encoding(false), s1 = Encoding(true);

  std::vector<TableCase> cases = {
      {"projection t=0", pp, with({{o, {0, 0, 3}}}),
       {"1/n", "1", "1", "1"}, {"9/4n", "5/4", "1/4", "-"},
       {"10/n", "9", "8", "7"}, 1, 1},
      {"projection t=1", pp, with({{o, {0, 1, 3}}}),
       {"3/50n", "53/100", "1", "1"}, {"27/200n", "53/80", "1/4", "-"},
       {"3/5n", "477/100", "8", "7"}, 1, 2},
      {"projection t=2", pp, with({{o, {0, 2, 3}}}),
       {"3/50n", "3/50", "53/100", "1"}, {"27/200n", "3/40", "53/400", "-"},
       {"3/5n", "27/50", "106/25", "7"}, 2, 3},
      {"projection t=3", pp, with({{o, {0, 3, 3}}}),
       {"3/50n", "3/50", "3/50", "53/100"}, {"27/200n", "3/40", "3/200", "-"},
       {"3/5n", "27/50", "24/50", "371/100"}, 1, 3},
      {"input pair s0", x, with({{pair, s0}}),
       {"3/50n", "53/100", "1", "1"}, {}, {}, 1, 2},
      {"input pair s1", x, with({{pair, s1}}),
       {"3/50n", "3/50", "53/100", "1"}, {}, {}, 2, 3},
      {"OR (s0,s0)", orb, with({{x, s0}, {w, s0}}),
       {"9/2500n", "2659/7500", "1", "1"},
       {"81/10000n", "2659/6000", "1/4", "-"}, {}, 1, -1},
      {"OR (s0,s1)", orb, with({{x, s0}, {w, s1}}),
       {"9/2500n", "159/5000", "53/100", "1"},
       {"81/10000n", "159/4000", "53/400", "-"}, {}, 2, -1},
      {"OR (s1,s1)", orb, with({{x, s1}, {w, s1}}),
       {"9/2500n", "9/2500", "2659/7500", "1"},
       {"81/10000n", "9/2000", "2659/30000", "-"}, {}, 2, -1},
      {"NOT s0", notb, with({{x, s0}}),
       {"3/50n", "3/50", "53/100", "1"}, {"27/200n", "3/40", "53/400", "-"},
       {}, 2, -1},
      {"NOT s1", notb, with({{x, s1}}),
       {"3/50n", "3/50", "3/50", "53/100"}, {"27/200n", "3/40", "3/200", "-"},
       {}, 1, -1},
  };
  const std::vector<std::vector<std::string>> l_h = {
      {"1/n", "1", "1", "1"},
      {"8/11n", "19/22", "1", "1"},
      {"8/11n", "8/11", "19/22", "1"},
      {"8/11n", "8/11", "8/11", "19/22"}};
  const std::vector<std::vector<std::string>> l_u = {
      {"10/n", "9", "8", "7"},
      {"80/11n", "171/22", "8", "7"},
      {"80/11n", "72/11", "76/11", "7"},
      {"80/11n", "72/11", "64/11", "133/22"}};
  const int l_br[] = {1, 2, 3, 1};
  const std::vector<std::vector<std::string>> k_h = {
      {"1/2n", "3/4", "1", "1"},
      {"4/11n", "29/44", "1", "1"},
      {"4/11n", "6/11", "19/22", "1"},
      {"4/11n", "6/11", "8/11", "19/22"}};
  const std::vector<std::vector<std::string>> k_u = {
      {"5/n", "27/4", "8", "7"},
      {"40/11n", "261/44", "8", "7"},
      {"40/11n", "54/11", "76/11", "7"},
      {"40/11n", "54/11", "64/11", "133/22"}};
  const int k_br[] = {2, 2, 3, 3};
  for (int t = 0; t < 4; ++t) {
    std::string ts = std::to_string(t);
    cases.push_back({"output l vs k t=" + ts, r.l,
                     with({{r.k, {0, 0, t}}}), l_h[t], {}, l_u[t], -1,
                     l_br[t]});
    cases.push_back({"output k (s0) vs l t=" + ts, r.k,
                     with({{nv, s0}, {r.l, {0, 0, t}}}), k_h[t], {}, k_u[t],
                     -1, k_br[t]});
  }
  cases.push_back({"output k (s1) vs l t=1", r.k,
                   with({{nv, s1}, {r.l, {0, 0, 1}}}),
                   {"4/11n", "19/44", "3/4", "1"}, {},
                   {"40/11n", "171/44", "6", "7"}, -1, 3});

  std::vector<GadgetCheck> out;
  for (const TableCase& tc : cases) {
    MixedProfile mixed = EmbedPure(a, tc.profile);
    CompareRow(tc.name + " H", WinProbRow(a, tc.bidder, mixed), tc.h, 1, a.n,
               &out);
    if (!tc.u_mid.empty()) {
      CompareRow(tc.name + " u(9/4)", UtilityRow(a, tc.bidder, 1, mixed),
                 tc.u_mid, 10, a.n, &out);
    }
    if (!tc.u_top.empty()) {
      CompareRow(tc.name + " u(10)", UtilityRow(a, tc.bidder, 2, mixed),
                 tc.u_top, 10, a.n, &out);
    }
    if (tc.br_mid >= 0) {
      CheckBestResponse(tc.name + " unique best response at 9/4", a,
                        tc.bidder, 1, mixed, eps, tc.br_mid, &out);
    }
    if (tc.br_top >= 0) {
      CheckBestResponse(tc.name + " unique best response at 10", a,
                        tc.bidder, 2, mixed, eps, tc.br_top, &out);
    }
  }
  return out;
}

}  // namespace fpa
