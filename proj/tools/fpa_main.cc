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

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fpa/auction.h"
#include "fpa/correlated.h"
#include "fpa/gadgets.h"
#include "fpa/io.h"
#include "fpa/parallel.h"
#include "fpa/symmetric.h"
#include "fpa/transforms.h"
#include "fpa/utility.h"
#include "fpa/verify.h"

namespace fpa {
namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3 };

struct Options {
  std::string command;
  std::string instance;
  std::string profile;
  std::string out;
  std::string eps = "0/1";
  std::string notion = "mbne";
  std::string dir;
  std::string delta;
  std::string method = "lp";
  std::string kind;
  std::string netlist;
  std::string suite = "all";
  std::string value;
  std::string instance_out;
  std::uint64_t seed = 0;
  int threads = 0;
  int bidder = 0;
  int m = 0;
  int starts = 64;
  int degree = 0;
  int min_bidders = -1;
  int max_rounds = 20000;
  bool no_shrink = false;
};

// A finished report plus the exit status it implies.
struct Outcome {
  Json report;
  int status = kOk;
};

Rational ParseFlag(const std::string& text, const char* flag) {
  try {
    return ParseRational(text);
  } catch (const InputError&) {
    throw InputError(std::string("--") + flag + " expects a rational p/q");
  }
}

Json ReadOrThrow(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("--") + flag + " is required");
  return ReadJsonFile(path);
}

AuctionInstance LoadInstance(const Options& o) {
  return InstanceFromJson(ReadOrThrow(o.instance, "instance"));
}

Json WitnessJson(const AuctionInstance& a, const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"bidder", w->bidder},
          {"value", ToString(a.values[w->bidder][w->value])},
          {"bid", ToString(a.bids[w->bid])},
          {"gain", ToString(w->gain)}};
}

Json RegretJson(const AuctionInstance& a, const RegretReport& r) {
  Json entries = Json::array();
  for (const RegretEntry& e : r.entries) {
    entries.push_back({{"bidder", e.bidder},
                       {"value", ToString(a.values[e.bidder][e.value])},
                       {"best", ToString(e.best_bid_utility)},
                       {"played", ToString(e.played_utility)},
                       {"regret", ToString(e.regret)}});
  }
  return {{"max_regret", ToString(r.max_regret)}, {"entries", entries}};
}

Outcome RunValidate(const Options& o) {
  Json doc = ReadOrThrow(o.instance, "instance");
  Outcome out;
  try {
    if (IsContinuousDocument(doc)) {
      ContinuousAuction c = ContinuousFromJson(doc);
      out.report = {{"verdict", "valid"}, {"kind", "cfpa"}, {"n", c.n},
                    {"iid", IsIid(c)}};
    } else {
      AuctionInstance a = InstanceFromJson(doc);
      out.report = {{"verdict", "valid"},
                    {"kind", "dfpa"},
                    {"n", a.n},
                    {"ipv", IsIpv(a)},
                    {"iid", IsIid(a)},
                    {"interaction_degree", InteractionDegree(a)}};
    }
  } catch (const InputError& e) {
    out.report = {{"verdict", "invalid"}, {"errors", Json::array({e.what()})}};
    out.status = kVerifyFailed;
  }
  return out;
}

Outcome RunUtility(const Options& o) {
  AuctionInstance a = LoadInstance(o);
  MixedProfile p = MixedProfileFromJson(a, ReadOrThrow(o.profile, "profile"));
  if (o.bidder < 0 || o.bidder >= a.n) throw InputError("bidder out of range");
  int v = FindIndex(a.values[o.bidder], ParseFlag(o.value, "value"));
  if (v < 0) throw InputError("--value is not in the bidder's value space");
  std::vector<Rational> h = WinProbRow(a, o.bidder, p);
  std::vector<Rational> u = UtilityRow(a, o.bidder, v, p);
  Json rows = Json::array();
  for (int b = 0; b < a.num_bids(); ++b) {
    rows.push_back({{"bid", ToString(a.bids[b])},
                    {"win_prob", ToString(h[b])},
                    {"utility", ToString(u[b])}});
  }
  Outcome out;
  out.report = {{"verdict", "ok"},
                {"bidder", o.bidder},
                {"value", ToString(a.values[o.bidder][v])},
                {"bids", rows},
                {"played",
                 ToString(MixedUtility(a, o.bidder, v, p[o.bidder][v], p))}};
  return out;
}

Outcome RunVerify(const Options& o) {
  Rational eps = ParseFlag(o.eps, "eps");
  if (eps < 0) throw InputError("--eps must be nonnegative");
  Json doc = ReadOrThrow(o.instance, "instance");
  Json prof = ReadOrThrow(o.profile, "profile");
  Outcome out;
  if (o.notion == "cfpa-pbne") {
    ContinuousAuction c = ContinuousFromJson(doc);
    CfpaVerifyResult r = CfpaVerifyPbne(c, StepProfileFromJson(prof), eps);
    out.report = {{"verdict", r.ok ? "ok" : "violated"}, {"witness", nullptr}};
    if (r.witness) {
      out.report["witness"] = {{"bidder", r.witness->bidder},
                               {"value", ToString(r.witness->value)},
                               {"bid", ToString(c.bids[r.witness->bid])},
                               {"gain", ToString(r.witness->gain)}};
    }
    out.status = r.ok ? kOk : kVerifyFailed;
    return out;
  }
  AuctionInstance a = InstanceFromJson(doc);
  if (o.notion == "ce") {
    TypeAgentGame game(a);
    CeRegret r = ComputeCeRegret(game, CorrelatedFromJson(game, prof));
    bool ok = r.regret <= eps;
    out.report = {{"verdict", ok ? "ok" : "violated"},
                  {"ce_regret", ToString(r.regret)},
                  {"witness", nullptr}};
    if (!ok) {
      auto [i, v] = game.player(r.player);
      out.report["witness"] = {{"bidder", i},
                               {"value", ToString(a.values[i][v])},
                               {"recommended", ToString(a.bids[r.recommended])},
                               {"deviation", ToString(a.bids[r.deviation])},
                               {"gain", ToString(r.regret)}};
    }
    out.status = ok ? kOk : kVerifyFailed;
    return out;
  }
  VerifyResult r;
  if (o.notion == "pbne") {
    r = IsEpsPbne(a, PureProfileFromJson(a, prof), eps);
  } else {
    MixedProfile p = MixedProfileFromJson(a, prof);
    if (o.notion == "mbne") {
      r = IsEpsMbne(a, p, eps);
    } else if (o.notion == "wsne") {
      r = IsEpsWsne(a, p, eps);
    } else {
      throw InputError("unknown --notion " + o.notion);
    }
    out.report["monotone"] = IsMonotone(p);
    out.report["symmetric"] = IsSymmetric(p);
    out.report["max_regret"] = ToString(MaxRegret(a, p).max_regret);
  }
  out.report["verdict"] = r.ok ? "ok" : "violated";
  out.report["witness"] = WitnessJson(a, r.witness);
  out.status = r.ok ? kOk : kVerifyFailed;
  return out;
}

Outcome RunTransform(const Options& o) {
  Outcome out;
  Json doc = ReadOrThrow(o.instance, "instance");
  if (o.dir == "d2c") {
    AuctionInstance a = InstanceFromJson(doc);
    DfpaToCfpaResult r = DfpaToCfpa(a, ParseFlag(o.delta, "delta"));
    Json blocks = Json::array();
    for (const auto& row : r.map.blocks) {
      Json jb = Json::array();
      for (const auto& [lo, hi] : row) jb.push_back({ToString(lo), ToString(hi)});
      blocks.push_back(jb);
    }
    out.report = {{"verdict", "ok"},
                  {"instance", ContinuousToJson(r.auction)},
                  {"map", {{"delta", ToString(r.map.delta)}, {"blocks", blocks}}}};
    if (!o.profile.empty()) {
      StepProfile s = StepProfileFromJson(ReadJsonFile(o.profile));
      out.report["profile"] = MixedProfileToJson(a, MbneFromCfpaPbne(a, r.map, s));
    }
  } else if (o.dir == "c2d") {
    ContinuousAuction c = ContinuousFromJson(doc);
    CfpaToDfpaResult r = CfpaToDfpa(c, ParseFlag(o.delta, "delta"));
    out.report = {{"verdict", "ok"},
                  {"instance", InstanceToJson(r.auction)},
                  {"map",
                   {{"delta", ToString(r.map.delta)},
                    {"grid", RationalsToJson(r.map.grid)}}}};
    if (!o.profile.empty()) {
      MixedProfile p = MixedProfileFromJson(r.auction, ReadJsonFile(o.profile));
      out.report["profile"] = StepProfileToJson(PbneFromDfpaWsne(r.auction, r.map, p));
    }
  } else if (o.dir == "ne2wsne") {
    AuctionInstance a = InstanceFromJson(doc);
    MixedProfile p = MixedProfileFromJson(a, ReadOrThrow(o.profile, "profile"));
    int d = o.degree > 0 ? o.degree : InteractionDegree(a);
    WsneResult r = NeToWsne(a, p, ParseFlag(o.delta, "delta"), d);
    out.report = {{"verdict", "ok"},
                  {"profile", MixedProfileToJson(a, r.profile)},
                  {"gamma", ToString(r.gamma)},
                  {"guarantee", ToString(r.guarantee)},
                  {"degree", d}};
  } else {
    throw InputError("--dir must be d2c, c2d or ne2wsne");
  }
  if (!o.instance_out.empty() && out.report.contains("instance")) {
    WriteTextFile(o.instance_out, out.report["instance"].dump(2) + "\n");
  }
  return out;
}

Outcome RunShrink(const Options& o) {
  AuctionInstance a = LoadInstance(o);
  ShrinkResult s = ShrinkBidspace(a.bids, o.m);
  AuctionInstance restricted = RestrictBids(a, s.kept);
  Outcome out;
  out.report = {{"verdict", "ok"},
                {"m", s.m},
                {"bids", RationalsToJson(s.bids)},
                {"kept", s.kept},
                {"instance", InstanceToJson(restricted)}};
  if (!o.profile.empty()) {
    MixedProfile p = MixedProfileFromJson(restricted, ReadJsonFile(o.profile));
    out.report["profile"] = MixedProfileToJson(a, LiftProfile(a, s.kept, p));
  }
  if (!o.instance_out.empty()) {
    WriteTextFile(o.instance_out, SerializeInstance(restricted) + "\n");
  }
  return out;
}

Json StructureJson(const SupportStructure& s) {
  return {{"k", s.k}, {"m", s.m}, {"xi", s.xi}};
}

Outcome RunSolveSymmetric(const Options& o) {
  AuctionInstance a = LoadInstance(o);
  Rational eps = ParseFlag(o.eps, "eps");
  SolverOptions opts;
  opts.seed = o.seed;
  opts.starts = o.starts;
  SymmetricResult r = o.no_shrink ? SolveSymmetricOnBids(a, eps, opts)
                                  : SolveSymmetric(a, eps, opts);
  Outcome out;
  out.report = {{"verdict", "found"},
                {"profile", MixedProfileToJson(a, r.profile)},
                {"max_regret", ToString(r.max_regret)},
                {"structure", StructureJson(r.structure)},
                {"shrunk_bids", RationalsToJson(r.shrunk_bids)},
                {"rounding_delta", ToString(r.delta)},
                {"structures_tried", r.structures_tried},
                {"regret", RegretJson(a, MaxRegret(a, r.profile))}};
  return out;
}

Outcome RunSolveCe(const Options& o) {
  AuctionInstance a = LoadInstance(o);
  TypeAgentGame game(a);
  Outcome out;
  if (o.method == "lp") {
    CorrelatedDistribution d = SolveCeLp(game);
    out.report = {{"verdict", "found"},
                  {"distribution", CorrelatedToJson(game, d)},
                  {"ce_regret", ToString(ComputeCeRegret(game, d).regret)}};
  } else if (o.method == "dynamics") {
    DynamicsOptions opts;
    opts.max_rounds = o.max_rounds;
    DynamicsResult r = SolveCeDynamics(game, ParseFlag(o.eps, "eps"), opts);
    out.report = {{"verdict", "found"},
                  {"distribution", CorrelatedToJson(game, r.distribution)},
                  {"ce_regret", ToString(r.regret)},
                  {"rounds", r.rounds}};
  } else {
    throw InputError("--method must be lp or dynamics");
  }
  return out;
}

std::string ReadNetlist(const Options& o) {
  if (o.netlist.empty()) throw InputError("--netlist is required");
  std::ifstream in(o.netlist);
  if (!in) throw InputError("cannot read " + o.netlist);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome RunGen(const Options& o) {
  Outcome out;
  if (o.kind == "nonexist") {
    int m = o.m > 0 ? o.m : 12;
    AuctionInstance a = NonexistenceInstance(m);
    out.report = {{"verdict", "ok"},
                  {"instance", InstanceToJson(a)},
                  {"q", ToString(NonexistenceQ(m))},
                  {"eps_threshold", ToString(NonexistenceThreshold(m))}};
  } else if (o.kind == "circuit") {
    Circuit c = ParseCircuit(ReadNetlist(o));
    CircuitReduction r = CircuitToDfpa(c, o.min_bidders < 0 ? 10 : o.min_bidders);
    out.report = {{"verdict", "ok"},
                  {"instance", InstanceToJson(r.auction)},
                  {"bidders", r.bidder_names},
                  {"node_bidder", r.node_bidder},
                  {"eps_bound", ToString(r.eps_bound)}};
    std::optional<BoolAssignment> sat = SolveCircuit(c);
    out.report["satisfiable"] = sat.has_value();
    if (sat) {
      out.report["assignment"] = *sat;
      out.report["profile"] =
          PureProfileToJson(r.auction, AssignmentToPbne(c, r, *sat));
    }
  } else if (o.kind == "purecircuit") {
    PureCircuit pc = ParsePureCircuit(ReadNetlist(o));
    PureCircuitReduction r =
        PureCircuitToDfpa(pc, o.min_bidders < 0 ? 1000 : o.min_bidders);
    out.report = {{"verdict", "ok"},
                  {"instance", InstanceToJson(r.auction)},
                  {"bidders", r.bidder_names},
                  {"node_bidder", r.node_bidder}};
  } else {
    throw InputError("--kind must be nonexist, circuit or purecircuit");
  }
  if (!o.instance_out.empty()) {
    WriteTextFile(o.instance_out, out.report["instance"].dump(2) + "\n");
  }
  return out;
}

Outcome RunBrutePure(const Options& o) {
  AuctionInstance a = LoadInstance(o);
  PureSearchResult r = BruteForcePureSearch(a, ParseFlag(o.eps, "eps"));
  Outcome out;
  out.report = {{"verdict", r.profile ? "found" : "none"},
                {"profile", nullptr}};
  if (r.profile) out.report["profile"] = PureProfileToJson(a, *r.profile);
  return out;
}

Outcome RunCheckGadgets(const Options& o) {
  std::vector<GadgetCheck> checks;
  if (o.suite == "circuit" || o.suite == "all") {
    auto c = CheckCircuitGadgets(o.min_bidders < 0 ? 10 : o.min_bidders);
    checks.insert(checks.end(), c.begin(), c.end());
  }
  if (o.suite == "pure-circuit" || o.suite == "all") {
    auto d = CheckPureCircuitGadgets(o.min_bidders < 0 ? 0 : o.min_bidders);
    checks.insert(checks.end(), d.begin(), d.end());
  }
  if (checks.empty()) {
    throw InputError("--suite must be circuit, pure-circuit or all");
  }
  Json list = Json::array();
  bool ok = true;
  for (const GadgetCheck& c : checks) {
    ok = ok && c.ok;
    list.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  Outcome out;
  out.report = {{"verdict", ok ? "ok" : "mismatch"}, {"checks", list}};
  out.status = ok ? kOk : kVerifyFailed;
  return out;
}

int Main(int argc, char** argv) {
  CLI::App app{"Exact equilibrium toolkit for discrete first-price auctions"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (FPA_THREADS)");
  app.add_option("--seed", o.seed, "Seed recorded in the report");
  app.add_option("--out", o.out, "Write the report here instead of stdout");

  std::function<Outcome(const Options&)> run;
  auto sub = [&](const char* name, const char* help,
                 std::function<Outcome(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&, name, fn] {
      o.command = name;
      run = fn;
    });
    s->add_option("--threads", o.threads, "Worker threads (FPA_THREADS)");
    s->add_option("--seed", o.seed, "Seed");
    s->add_option("--out", o.out, "Report path");
    return s;
  };

  CLI::App* s = sub("validate", "Validate an instance file", RunValidate);
  s->add_option("instance", o.instance)->required();

  s = sub("utility", "Win probabilities and utilities of one bidder", RunUtility);
  s->add_option("--instance", o.instance)->required();
  s->add_option("--profile", o.profile)->required();
  s->add_option("--bidder", o.bidder)->required();
  s->add_option("--value", o.value)->required();

  s = sub("verify", "Check an equilibrium notion", RunVerify);
  s->add_option("--instance", o.instance)->required();
  s->add_option("--profile", o.profile)->required();
  s->add_option("--notion", o.notion)
      ->check(CLI::IsMember({"pbne", "mbne", "wsne", "cfpa-pbne", "ce"}));
  s->add_option("--eps", o.eps);

  s = sub("transform", "DFPA/CFPA transforms and NE to WSNE", RunTransform);
  s->add_option("--dir", o.dir)
      ->required()
      ->check(CLI::IsMember({"d2c", "c2d", "ne2wsne"}));
  s->add_option("--delta", o.delta)->required();
  s->add_option("--instance", o.instance)->required();
  s->add_option("--profile", o.profile);
  s->add_option("--degree", o.degree);
  s->add_option("--instance-out", o.instance_out);

  s = sub("shrink", "Shrink the bid space to a 1/M grid", RunShrink);
  s->add_option("--instance", o.instance)->required();
  s->add_option("--m", o.m)->required();
  s->add_option("--profile", o.profile);
  s->add_option("--instance-out", o.instance_out);

  s = sub("solve-symmetric", "Symmetric monotone eps-MBNE of an iid instance",
          RunSolveSymmetric);
  s->add_option("--instance", o.instance)->required();
  s->add_option("--eps", o.eps)->required();
  s->add_option("--starts", o.starts);
  s->add_flag("--no-shrink", o.no_shrink);

  s = sub("solve-ce", "Correlated equilibrium", RunSolveCe);
  s->add_option("--instance", o.instance)->required();
  s->add_option("--method", o.method)->check(CLI::IsMember({"lp", "dynamics"}));
  s->add_option("--eps", o.eps);
  s->add_option("--max-rounds", o.max_rounds);

  s = sub("gen", "Generate hardness instances", RunGen);
  s->add_option("--kind", o.kind)
      ->required()
      ->check(CLI::IsMember({"nonexist", "circuit", "purecircuit"}));
  s->add_option("--m", o.m);
  s->add_option("--netlist", o.netlist);
  s->add_option("--min-bidders", o.min_bidders);
  s->add_option("--instance-out", o.instance_out);

  s = sub("brute-pure", "Exhaustive eps-PBNE search", RunBrutePure);
  s->add_option("--instance", o.instance)->required();
  s->add_option("--eps", o.eps)->required();

  s = sub("check-gadgets", "Recompute the gadget tables and margins",
          RunCheckGadgets);
  s->add_option("--suite", o.suite)
      ->check(CLI::IsMember({"circuit", "pure-circuit", "all"}));
  s->add_option("--min-bidders", o.min_bidders);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (o.threads > 0) SetNumThreads(o.threads);

  Outcome out;
  try {
    out = run(o);
  } catch (const InputError& e) {
    out.report = {{"verdict", "error"}, {"error", e.what()}};
    out.status = kInputError;
  } catch (const BudgetExhausted& e) {
    out.report = {{"verdict", "budget-exhausted"}, {"error", e.what()}};
    out.status = kBudget;
  }
  out.report["metadata"] = {
      {"version", kVersion}, {"command", o.command}, {"seed", o.seed}};
  std::string text = out.report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    try {
      WriteTextFile(o.out, text);
    } catch (const InputError& e) {
      std::cerr << e.what() << "\n";
      return kInputError;
    }
  }
  return out.status;
}

}  // namespace
}  // namespace fpa

int main(int argc, char** argv) { return fpa::Main(argc, argv); }
