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

#include "doctest.h"
#include "fpa/io.h"
#include "fpa/transforms.h"
#include "fpa/utility.h"
#include "fpa/verify.h"
#include "test_support.h"

namespace fpa {
namespace {

using testing::R;

std::vector<Rational> Tenths() {
  std::vector<Rational> b;
  for (int k = 0; k <= 10; ++k) b.push_back(MakeRational(k, 10));
  return b;
}

TEST_CASE("shrink keeps the least bid per interval") {
  ShrinkResult s = ShrinkBidspace(Tenths(), 4);
  CHECK(s.bids == std::vector<Rational>{R("0"), R("3/10"), R("1/2"),
                                         R("4/5")});
  CHECK(s.kept == std::vector<int>{0, 3, 5, 8});
  CHECK(s.m == 4);
  // Coarser than the bid space: every bid survives when M is large.
  CHECK(ShrinkBidspace(Tenths(), 40).bids == Tenths());
  CHECK(ShrinkBidspace(Tenths(), 1).bids == std::vector<Rational>{R("0")});
}

TEST_CASE("shrink leaves every bid within 1/M of a kept bid below it") {
  testing::Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> bids =
        testing::RandomGrid(rng, testing::Uniform(rng, 1, 12), 24, true);
    int m = testing::Uniform(rng, 1, 10);
    ShrinkResult s = ShrinkBidspace(bids, m);
    CHECK(static_cast<int>(s.bids.size()) <= m + 1);
    CHECK(s.bids.front() == 0);
    for (const Rational& b : bids) {
      bool close = false;
      for (const Rational& k : s.bids) {
        if (k <= b && b - k <= MakeRational(1, m)) close = true;
      }
      CHECK(close);
    }
  }
}

TEST_CASE("restrict and lift are inverse on supports") {
  AuctionInstance a = testing::LoadFixture("iid_n3_v3_b4.json");
  std::vector<int> kept = {0, 2};
  AuctionInstance r = RestrictBids(a, kept);
  CHECK(r.bids == std::vector<Rational>{R("0"), R("1/2")});
  MixedProfile p = EmbedPure(r, {{0, 1, 1}, {0, 0, 1}, {0, 1, 1}});
  MixedProfile lifted = LiftProfile(a, kept, p);
  CHECK(lifted[0][1] == PointMass(4, 2));
  CHECK(lifted[1][1] == PointMass(4, 0));
  // Utilities are unchanged by the embedding.
  for (int i = 0; i < a.n; ++i) {
    for (int v = 0; v < a.num_values(i); ++v) {
      for (size_t k = 0; k < kept.size(); ++k) {
        CHECK(InterimUtility(r, i, v, static_cast<int>(k), p) ==
              InterimUtility(a, i, v, kept[k], lifted));
      }
    }
  }
}

TEST_CASE("exact MBNE to WSNE keeps only best responses") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  MixedProfile p = EmbedPure(a, {{0, 1}, {0, 1}});
  WsneResult w = NeToWsne(a, p, 0, 1);
  CHECK(w.gamma == 0);
  CHECK(w.profile == p);
  CHECK(IsEpsWsne(a, w.profile, 0).ok);
}

TEST_CASE("approximate MBNE to WSNE drops a suboptimal bid") {
  AuctionInstance a = testing::LoadFixture("iid_2x2.json");
  // Bidder 0 at value 1 puts 1/32 on bid 0, which trails by 1/8.
  MixedProfile p = EmbedPure(a, {{0, 1}, {0, 1}});
  p[0][1] = {MakeRational(1, 32), MakeRational(31, 32)};
  Rational delta = MaxRegret(a, p).max_regret;
  CHECK(delta == MakeRational(1, 256));
  WsneResult w = NeToWsne(a, p, delta, 1);
  CHECK(w.gamma * w.gamma >= 2 * delta);
  CHECK(w.gamma < MakeRational(1, 8));
  CHECK(w.profile[0][1] == PointMass(2, 1));
  CHECK(IsEpsWsne(a, w.profile, w.guarantee).ok);
  CHECK_THROWS_AS(NeToWsne(a, p, delta / 2, 1), InputError);
  CHECK_THROWS_AS(NeToWsne(a, p, R("1/4"), 1), InputError);
}

TEST_CASE("MBNE to WSNE guarantee holds on random near-equilibria") {
  testing::Rng rng(43);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 20; ++t) {
    AuctionInstance a = testing::RandomInstance(rng, 3, 3, 3);
    MixedProfile p = testing::RandomProfile(rng, a);
    int d = std::max(1, InteractionDegree(a));
    Rational delta = MaxRegret(a, p).max_regret;
    if (delta * 8 * d > 1) continue;
    ++checked;
    WsneResult w = NeToWsne(a, p, delta, d);
    CHECK(IsEpsWsne(a, w.profile, w.guarantee).ok);
  }
  CHECK(checked > 0);
}

TEST_CASE("discrete to continuous blocks") {
  AuctionInstance a;
  a.n = 2;
  a.bids = {Rational(0), MakeRational(1, 2)};
  a.values = {{MakeRational(1, 2)}, {MakeRational(1, 2)}};
  a.priors = {{{}, {Rational(1)}}, {{Rational(1)}, {}}};
  DfpaToCfpaResult r = DfpaToCfpa(a, R("1/8"));
  CHECK(r.map.delta == MakeRational(1, 8));
  const PiecewiseConstantDensity& f = r.auction.priors[0][1];
  CHECK(f.Mass(R("3/8"), R("1/2")) == 1);
  CHECK(f.Mass(0, R("3/8")) == 0);
  CHECK(f.Mass(R("7/16"), R("1/2")) == MakeRational(1, 2));

  // Two-point prior with 0 at the bottom.
  AuctionInstance b;
  b.n = 2;
  b.bids = {Rational(0), MakeRational(1, 10)};
  b.values = {{Rational(0), MakeRational(9, 40)},
              {Rational(0), MakeRational(9, 40)}};
  Distribution prior = {MakeRational(3, 50), MakeRational(47, 50)};
  b.priors = {{{}, prior}, {prior, {}}};
  r = DfpaToCfpa(b, R("1/100"));
  CHECK(r.map.delta == MakeRational(1, 100));
  const PiecewiseConstantDensity& g = r.auction.priors[0][1];
  CHECK(g.Mass(0, R("1/100")) == MakeRational(3, 50));
  CHECK(g.Mass(R("9/40") - R("1/100"), R("9/40")) == MakeRational(47, 50));
  CHECK(g.Mass(0, 1) == 1);

  // delta halves until it fits the smallest gap.
  r = DfpaToCfpa(b, R("1/2"));
  CHECK(r.map.delta == MakeRational(1, 32));
}

TEST_CASE("continuous PBNE to discrete MBNE") {
  AuctionInstance a;
  a.n = 2;
  a.bids = {Rational(0), MakeRational(1, 4), MakeRational(1, 2)};
  a.values = {{MakeRational(1, 2)}, {MakeRational(1, 2)}};
  a.priors = {{{}, {Rational(1)}}, {{Rational(1)}, {}}};
  DfpaToCfpaResult r = DfpaToCfpa(a, R("1/8"));
  REQUIRE(r.map.delta == MakeRational(1, 8));
  // Jump 30% into the block [3/8, 1/2].
  StepStrategy s{{R("3/8") + R("3/10") * R("1/8"), Rational(1)}};
  MixedProfile p = MbneFromCfpaPbne(a, r.map, {s, s});
  CHECK(p[0][0] == Distribution{R("3/10"), R("7/10"), R("0")});
}

TEST_CASE("continuous to discrete grid") {
  ContinuousAuction c;
  c.n = 2;
  c.bids = {Rational(0), MakeRational(1, 2)};
  PiecewiseConstantDensity uniform{{Rational(0), Rational(1)}, {Rational(1)}};
  c.priors = {{{}, uniform}, {uniform, {}}};
  CfpaToDfpaResult r = CfpaToDfpa(c, R("1/4"));
  CHECK(r.auction.values[0] ==
        std::vector<Rational>{R("0"), R("1/4"), R("1/2"), R("3/4")});
  CHECK(r.auction.priors[0][1] == Distribution(4, R("1/4")));

  PiecewiseConstantDensity split{{Rational(0), R("1/3"), Rational(1)},
                                 {R("3/2"), R("3/4")}};
  c.priors = {{{}, split}, {split, {}}};
  r = CfpaToDfpa(c, R("1/2"));
  CHECK(r.auction.values[0] == std::vector<Rational>{R("0"), R("1/3"), R("1/2")});
  CHECK(r.auction.priors[0][1] ==
        Distribution{R("1/2"), R("1/8"), R("3/8")});
  CHECK(ValidateInstance(r.auction).valid);

  CHECK_THROWS_AS(CfpaToDfpa(c, 0), InputError);
}

TEST_CASE("discrete WSNE to continuous PBNE") {
  ContinuousAuction c;
  c.n = 2;
  c.bids = {Rational(0), MakeRational(1, 2)};
  PiecewiseConstantDensity uniform{{Rational(0), Rational(1)}, {Rational(1)}};
  c.priors = {{{}, uniform}, {uniform, {}}};
  CfpaToDfpaResult r = CfpaToDfpa(c, R("1/2"));
  const AuctionInstance& a = r.auction;
  REQUIRE(a.num_values(0) == 2);
  // Point masses jump exactly at a grid value.
  MixedProfile p = EmbedPure(a, {{0, 1}, {0, 1}});
  StepProfile s = PbneFromDfpaWsne(a, r.map, p);
  CHECK(s[0].jumps == std::vector<Rational>{R("1/2")});
  // An even mix on the upper cell jumps at its midpoint.
  p[0][1] = {R("1/2"), R("1/2")};
  s = PbneFromDfpaWsne(a, r.map, p);
  CHECK(s[0].jumps == std::vector<Rational>{R("3/4")});
  CHECK(s[1].jumps == std::vector<Rational>{R("1/2")});
  // Non-monotone input is rejected.
  CHECK_THROWS_AS(PbneFromDfpaWsne(a, r.map, EmbedPure(a, {{1, 0}, {0, 1}})),
                  InputError);
}

}  // namespace
}  // namespace fpa
