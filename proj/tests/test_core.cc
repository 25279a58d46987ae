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

#include <string>

#include "doctest.h"
#include "fpa/auction.h"
#include "fpa/gadgets.h"
#include "fpa/io.h"
#include "fpa/utility.h"
#include "test_support.h"

namespace fpa {
namespace {

using testing::R;

bool HasError(const ValidationReport& r, const std::string& needle) {
  for (const std::string& e : r.errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(R("3/50") == MakeRational(3, 50));
  CHECK(R("6/100") == MakeRational(3, 50));
  CHECK(R("-2/4") == MakeRational(-1, 2));
  CHECK(R("7") == Rational(7));
  CHECK(ToString(R("6/100")) == "3/50");
  CHECK(ToString(Rational(0)) == "0/1");
  CHECK(ToString(R("-1/2")) == "-1/2");
  CHECK_THROWS_AS(ParseRational("1/0"), InputError);
  CHECK_THROWS_AS(ParseRational("abc"), InputError);
  CHECK_THROWS_AS(ParseRational("0.5"), InputError);
}

TEST_CASE("FromDouble and SqrtUpper") {
  CHECK(FromDouble(0.1) == MakeRational(1, 10));
  CHECK(FromDouble(0.75) == MakeRational(3, 4));
  CHECK(FromDouble(1.0 / 3.0, 1000) == MakeRational(1, 3));
  Rational tol = MakeRational(1, 1000000000);
  for (Rational x : {Rational(2), MakeRational(1, 128), Rational(9)}) {
    Rational g = SqrtUpper(x, tol);
    CHECK(g * g >= x);
    CHECK(g * g <= x * (1 + tol) * (1 + tol));
  }
  CHECK(SqrtUpper(Rational(0), tol) == 0);
}

TEST_CASE("validation accepts the iid 2x2 instance") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  ValidationReport r = ValidateInstance(a);
  CHECK(r.valid);
  CHECK(r.is_ipv);
  CHECK(r.is_iid);
}

TEST_CASE("validation names violated invariants") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  AuctionInstance bad = a;
  bad.priors[0][1] = {MakeRational(49, 100), MakeRational(1, 2)};
  ValidationReport r = ValidateInstance(bad);
  CHECK_FALSE(r.valid);
  CHECK(HasError(r, "does not sum to 1"));

  bad = a;
  bad.bids = {MakeRational(1, 4), MakeRational(1, 2)};
  CHECK(HasError(ValidateInstance(bad), "null bid absent"));

  bad = a;
  bad.values[0] = {Rational(1), Rational(0)};
  CHECK_FALSE(ValidateInstance(bad).valid);

  bad = a;
  bad.priors[1][0] = {Rational(2), Rational(-1)};
  CHECK(HasError(ValidateInstance(bad), "negative probability"));

  Json doc = ReadJsonFile(testing::Fixture("bad_pmf_sum.json"));
  CHECK_THROWS_AS(InstanceFromJson(doc), InputError);
}

TEST_CASE("subjective priors are neither ipv nor iid") {
  AuctionInstance a = testing::LoadFixture("subjective_n3.json");
  CHECK(ValidateInstance(a).valid);
  CHECK_FALSE(IsIpv(a));
  CHECK_FALSE(IsIid(a));
}

TEST_CASE("interaction degree") {
  // Each bidder sees one neighbour with a nonzero value.
  AuctionInstance a;
  a.n = 3;
  a.bids = {Rational(0), MakeRational(1, 2)};
  a.values.assign(3, {Rational(0), Rational(1)});
  a.priors.assign(3, std::vector<Distribution>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      a.priors[i][j] = j == (i + 1) % 3
                           ? Distribution{MakeRational(1, 2), MakeRational(1, 2)}
                           : PointMass(2, 0);
    }
  }
  CHECK(InteractionDegree(a) == 1);
  CHECK(InteractionDegree(testing::LoadFixture("iid_n3_v3_b4.json")) == 2);
  PureCircuit pc = ParsePureCircuit("x = NOT y\ny = NOT x\n");
  CHECK(InteractionDegree(PureCircuitToDfpa(pc, 0).auction) == 2);
}

TEST_CASE("instance round trip") {
  testing::Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    AuctionInstance a = testing::RandomInstance(rng, 4, 3, 4);
    std::string text = SerializeInstance(a);
    AuctionInstance b = ParseInstance(text);
    CHECK(b.n == a.n);
    CHECK(b.bids == a.bids);
    CHECK(b.values == a.values);
    CHECK(b.priors == a.priors);
    CHECK(SerializeInstance(b) == text);
  }
}

TEST_CASE("instance parse errors") {
  std::string base = SerializeInstance(testing::LoadFixture("iid_2x2.json"));
  Json j = ParseJsonText(base);
  Json neg = j;
  neg["priors"][0]["pmf"] = Json::object({{"0/1", "3/2"}, {"1/1", "-1/2"}});
  CHECK_THROWS_AS(InstanceFromJson(neg), InputError);
  Json key = j;
  key["priors"][0]["pmf"] = Json::object({{"1/3", "1/1"}});
  CHECK_THROWS_AS(InstanceFromJson(key), InputError);
  Json missing = j;
  missing["priors"].erase(0);
  CHECK_THROWS_AS(InstanceFromJson(missing), InputError);
  Json floats = j;
  floats["bids"] = {0.0, 0.5};
  CHECK_THROWS_AS(InstanceFromJson(floats), InputError);
  CHECK_THROWS_AS(ParseJsonText("{not json"), InputError);
}

TEST_CASE("profile round trip") {
  testing::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    AuctionInstance a = testing::RandomInstance(rng, 3, 3, 4);
    MixedProfile p = testing::RandomProfile(rng, a);
    CHECK(MixedProfileFromJson(a, MixedProfileToJson(a, p)) == p);
  }
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  PureProfile pure =
      PureProfileFromJson(a, ReadJsonFile(testing::Fixture("iid_2x2_pbne.json")));
  CHECK(pure == PureProfile{{0, 0}, {0, 0}});
  CHECK(PureProfileFromJson(a, PureProfileToJson(a, pure)) == pure);
  CHECK(PureProfileFromJson(a, MixedProfileToJson(a, EmbedPure(a, pure))) ==
        pure);
}

TEST_CASE("bid masses") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  PureProfile zero = {{0, 0}, {0, 0}};
  BidMassTable t = BidMass(a, 0, EmbedPure(a, zero));
  CHECK(t.g[1][0] == 1);
  CHECK(t.G[1][1] == 1);
  CHECK(t.G[1][0] == 0);

  // The projection prior against an encoding bidder playing (0, 1, x).
  Circuit c = ParseCircuit("input x\noutput x\n");
  CircuitReduction r = CircuitToDfpa(c, 2);
  int x = r.node_bidder.at("x");
  int pair = x + 1;
  PureProfile p(r.auction.n);
  for (int i = 0; i < r.auction.n; ++i) p[i].assign(r.auction.num_values(i), 0);
  p[pair] = {0, 1, 3};
  Distribution d = OpponentBidDistribution(r.auction, x, pair,
                                           EmbedPure(r.auction, p));
  CHECK(d[0] == MakeRational(3, 50));
  CHECK(d[1] == MakeRational(47, 50));
}

TEST_CASE("tie table trivial cases and subset oracle") {
  std::vector<Distribution> below = {PointMass(3, 0), PointMass(3, 0)};
  TieTableRows t = TieTable(below, 1);
  CHECK(t[2][0] == 1);
  CHECK(t[2][1] == 0);
  CHECK(t[2][2] == 0);
  std::vector<Distribution> at = {PointMass(3, 1), PointMass(3, 1)};
  t = TieTable(at, 1);
  CHECK(t[2][2] == 1);
  CHECK(t[2][0] == 0);

  testing::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    int opponents = testing::Uniform(rng, 1, 5);
    int m = testing::Uniform(rng, 1, 4);
    std::vector<Distribution> opp;
    for (int j = 0; j < opponents; ++j) {
      opp.push_back(testing::RandomDistribution(rng, m));
    }
    for (int b = 0; b < m; ++b) {
      TieTableRows got = TieTable(opp, b);
      auto want = testing::OracleTieTable(opp, b);
      CHECK(got == want);
      // Ties and lower bids plus "someone bids higher" partition everything.
      Rational above = 1;
      for (const Distribution& d : opp) {
        Rational at_most = 0;
        for (int c = 0; c <= b; ++c) at_most += d[c];
        above *= at_most;
      }
      CHECK(Sum(got[opponents]) == above);
    }
  }
}

TEST_CASE("win probability examples") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  MixedProfile zero = EmbedPure(a, {{0, 0}, {0, 0}});
  CHECK(WinProb(a, 0, 1, zero) == 1);
  CHECK(WinProb(a, 0, 0, zero) == MakeRational(1, 2));

  Circuit c = ParseCircuit("input x\noutput x\n");
  CircuitReduction r = CircuitToDfpa(c, 10);
  const AuctionInstance& g = r.auction;
  int x = r.node_bidder.at("x");
  PureProfile p(g.n);
  for (int i = 0; i < g.n; ++i) p[i].assign(g.num_values(i), 0);
  p[x + 1] = {0, 0, 3};
  std::vector<Rational> h = WinProbRow(g, x, EmbedPure(g, p));
  CHECK(h[0] == MakeRational(1, g.n));
  CHECK(h[1] == 1);
  p[x + 1] = {0, 1, 3};
  MixedProfile m = EmbedPure(g, p);
  CHECK(WinProb(g, x, 1, m) == MakeRational(53, 100));
  // Unscaled u(1; 9/4) is 53/80.
  CHECK(InterimUtility(g, x, 1, 1, m) * 10 == MakeRational(53, 80));
}

TEST_CASE("win probability is nondecreasing in the bid") {
  testing::Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    AuctionInstance a = testing::RandomInstance(rng, 4, 3, 4);
    MixedProfile p = testing::RandomProfile(rng, a);
    for (int i = 0; i < a.n; ++i) {
      std::vector<Rational> h = WinProbRow(a, i, p);
      for (size_t b = 1; b < h.size(); ++b) CHECK(h[b - 1] <= h[b]);
    }
  }
}

TEST_CASE("utilities match the enumeration oracles") {
  testing::Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    AuctionInstance a = testing::RandomInstance(rng, 4, 3, 4);
    MixedProfile p = testing::RandomProfile(rng, a, t % 2 == 0);
    for (int i = 0; i < a.n; ++i) {
      for (int v = 0; v < a.num_values(i); ++v) {
        for (int b = 0; b < a.num_bids(); ++b) {
          Rational u = InterimUtility(a, i, v, b, p);
          CHECK(u == testing::OracleUtility(a, i, v, b, p));
          CHECK(u == BruteForceUtility(a, i, v, b, p));
        }
      }
    }
  }
}

TEST_CASE("mixed utility") {
  testing::Rng rng(17);
  AuctionInstance a = testing::RandomInstance(rng, 3, 3, 4);
  MixedProfile p = testing::RandomProfile(rng, a);
  std::vector<Rational> row = UtilityRow(a, 0, 0, p);
  for (int b = 0; b < a.num_bids(); ++b) {
    CHECK(MixedUtility(a, 0, 0, PointMass(a.num_bids(), b), p) == row[b]);
  }
  if (a.num_bids() >= 2) {
    Distribution half(a.num_bids(), Rational(0));
    half[0] = half[1] = MakeRational(1, 2);
    CHECK(MixedUtility(a, 0, 0, half, p) == (row[0] + row[1]) / 2);
  }
  Distribution gamma = testing::RandomDistribution(rng, a.num_bids());
  Rational want = 0;
  for (int b = 0; b < a.num_bids(); ++b) {
    want += gamma[b] * testing::OracleUtility(a, 0, 0, b, p);
  }
  CHECK(MixedUtility(a, 0, 0, gamma, p) == want);
}

TEST_CASE("utility trivial cases") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  MixedProfile zero = EmbedPure(a, {{0, 0}, {0, 0}});
  // Single opponent at 0: (v - b) for b > 0; a sure two-way tie halves it.
  CHECK(BruteForceUtility(a, 0, 1, 1, zero) == MakeRational(1, 2));
  CHECK(BruteForceUtility(a, 0, 1, 0, zero) == MakeRational(1, 2));
  // Against 1/2 at value 1: bid 0 only ties with value-0 opponents.
  MixedProfile high = EmbedPure(a, {{0, 1}, {0, 1}});
  CHECK(InterimUtility(a, 0, 1, 1, high) == MakeRational(3, 8));
  CHECK(InterimUtility(a, 0, 1, 0, high) == MakeRational(1, 4));
  CHECK(InterimUtility(a, 0, 0, 0, high) == 0);
}

TEST_CASE("continuous bid distributions and utilities") {
  ContinuousAuction c;
  c.n = 2;
  c.bids = {Rational(0), MakeRational(1, 2)};
  PiecewiseConstantDensity uniform{{Rational(0), Rational(1)}, {Rational(1)}};
  c.priors = {{{}, uniform}, {uniform, {}}};
  StepStrategy half{{MakeRational(1, 2)}};
  Distribution d = CfpaBidDistribution(c, 0, 1, half);
  CHECK(d[0] == MakeRational(1, 2));
  CHECK(d[1] == MakeRational(1, 2));

  // A block of height 1/delta under a constant strategy is a point mass.
  Rational delta = MakeRational(1, 8);
  PiecewiseConstantDensity block{
      {Rational(0), MakeRational(3, 8), MakeRational(1, 2), Rational(1)},
      {Rational(0), 1 / delta, Rational(0)}};
  c.priors[0][1] = block;
  StepStrategy constant_high{{Rational(0)}};
  d = CfpaBidDistribution(c, 0, 1, constant_high);
  CHECK(d[1] == 1);

  StepProfile prof = {half, half};
  c.priors[0][1] = uniform;
  std::vector<Rational> h = CfpaWinProbRow(c, 0, prof);
  CHECK(h[0] == MakeRational(1, 4));
  CHECK(h[1] == MakeRational(3, 4));
  CHECK(CfpaUtility(c, 0, MakeRational(3, 4), 1, prof) ==
        MakeRational(3, 16));
  CHECK(CfpaUtility(c, 0, MakeRational(1, 2), 1, prof) == 0);
  // Opponent surely above: no chance to win.
  StepProfile above = {half, constant_high};
  CHECK(CfpaWinProbRow(c, 0, above)[0] == 0);
}

TEST_CASE("continuous utilities match an integration oracle") {
  testing::Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    ContinuousAuction c;
    c.n = testing::Uniform(rng, 2, 3);
    c.bids = testing::RandomGrid(rng, testing::Uniform(rng, 2, 4), 8, true);
    c.priors.assign(c.n, std::vector<PiecewiseConstantDensity>(c.n));
    for (int i = 0; i < c.n; ++i) {
      for (int j = 0; j < c.n; ++j) {
        if (i == j) continue;
        c.priors[i][j] = testing::RandomDensity(rng, 3, 6);
      }
    }
    StepProfile prof;
    for (int i = 0; i < c.n; ++i) {
      prof.push_back(testing::RandomSteps(rng, c.bids, 9));
    }
    for (int i = 0; i < c.n; ++i) {
      std::vector<Distribution> opp;
      for (int j = 0; j < c.n; ++j) {
        if (j == i) continue;
        Distribution d(c.num_bids(), Rational(0));
        for (int l = 0; l < c.num_bids(); ++l) {
          Rational lo = l == 0 ? Rational(0) : prof[j].jumps[l - 1];
          Rational hi = l + 1 < c.num_bids() ? prof[j].jumps[l] : Rational(1);
          if (hi > lo) d[l] = testing::OracleMass(c.priors[i][j], lo, hi);
        }
        CHECK(d == CfpaBidDistribution(c, i, j, prof[j]));
        opp.push_back(d);
      }
      std::vector<Rational> h = CfpaWinProbRow(c, i, prof);
      for (int b = 0; b < c.num_bids(); ++b) {
        CHECK(h[b] == testing::OracleWinProb(opp, b));
      }
    }
  }
}

}  // namespace
}  // namespace fpa
