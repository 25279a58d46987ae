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

#include "fpa/io.h"

#include <fstream>
#include <sstream>

namespace fpa {
namespace {

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InputError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

std::vector<Rational> RationalList(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const Json& x : j) out.push_back(RationalFromJson(x));
  return out;
}

int IntField(const Json& j, const char* name) {
  const Json& x = Field(j, name);
  if (!x.is_number_integer()) {
    throw InputError(std::string("field \"") + name + "\" must be an integer");
  }
  return x.get<int>();
}

void CheckBidder(int i, int n) {
  if (i < 0 || i >= n) throw InputError("bidder index out of range");
}

}  // namespace

Rational RationalFromJson(const Json& j) {
  if (j.is_string()) return ParseRational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError("rationals must be \"p/q\" strings");
}

Json RationalToJson(const Rational& r) { return ToString(r); }

Json RationalsToJson(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(ToString(r));
  return out;
}

Json InstanceToJson(const AuctionInstance& a) {
  Json j;
  j["kind"] = "dfpa";
  j["n"] = a.n;
  j["bids"] = RationalsToJson(a.bids);
  Json values = Json::array();
  for (const auto& v : a.values) values.push_back(RationalsToJson(v));
  j["values"] = values;
  Json priors = Json::array();
  for (int i = 0; i < a.n; ++i) {
    for (int k = 0; k < a.n; ++k) {
      if (i == k) continue;
      Json pmf = Json::object();
      for (int v = 0; v < a.num_values(k); ++v) {
        if (a.priors[i][k][v] != 0) {
          pmf[ToString(a.values[k][v])] = ToString(a.priors[i][k][v]);
        }
      }
      priors.push_back({{"i", i}, {"j", k}, {"pmf", pmf}});
    }
  }
  j["priors"] = priors;
  return j;
}

AuctionInstance InstanceFromJson(const Json& j) {
  if (IsContinuousDocument(j)) {
    throw InputError("expected a discrete instance, got kind \"cfpa\"");
  }
  AuctionInstance a;
  a.n = IntField(j, "n");
  if (a.n < 1) throw InputError("n must be at least 1");
  a.bids = RationalList(Field(j, "bids"), "bids");
  const Json& values = Field(j, "values");
  if (!values.is_array() || static_cast<int>(values.size()) != a.n) {
    throw InputError("values must hold one array per bidder");
  }
  for (const Json& v : values) a.values.push_back(RationalList(v, "values"));
  a.priors.assign(a.n, std::vector<Distribution>(a.n));
  std::vector<std::vector<bool>> seen(a.n, std::vector<bool>(a.n, false));
  const Json& priors = Field(j, "priors");
  if (!priors.is_array()) throw InputError("priors must be an array");
  for (const Json& entry : priors) {
    int i = IntField(entry, "i");
    int k = IntField(entry, "j");
    CheckBidder(i, a.n);
    CheckBidder(k, a.n);
    if (i == k) throw InputError("prior of a bidder about itself");
    if (seen[i][k]) throw InputError("duplicate prior");
    seen[i][k] = true;
    Distribution pmf(a.values[k].size(), Rational(0));
    const Json& masses = Field(entry, "pmf");
    if (!masses.is_object()) throw InputError("pmf must be an object");
    for (auto it = masses.begin(); it != masses.end(); ++it) {
      Rational value = ParseRational(it.key());
      int idx = FindIndex(a.values[k], value);
      if (idx < 0) throw InputError("prior key not in value space");
      Rational p = RationalFromJson(it.value());
      if (p < 0) throw InputError("negative probability");
      pmf[idx] += p;
    }
    a.priors[i][k] = pmf;
  }
  for (int i = 0; i < a.n; ++i) {
    for (int k = 0; k < a.n; ++k) {
      if (i != k && !seen[i][k]) {
        throw InputError("missing prior (" + std::to_string(i) + "," +
                         std::to_string(k) + ")");
      }
    }
  }
  RequireValid(a);
  return a;
}

std::string SerializeInstance(const AuctionInstance& a) {
  return InstanceToJson(a).dump(2);
}

AuctionInstance ParseInstance(const std::string& text) {
  return InstanceFromJson(ParseJsonText(text));
}

bool IsContinuousDocument(const Json& j) {
  return j.is_object() && j.contains("kind") && j.at("kind") == "cfpa";
}

Json ContinuousToJson(const ContinuousAuction& c) {
  Json j;
  j["kind"] = "cfpa";
  j["n"] = c.n;
  j["bids"] = RationalsToJson(c.bids);
  Json densities = Json::array();
  for (int i = 0; i < c.n; ++i) {
    for (int k = 0; k < c.n; ++k) {
      if (i == k) continue;
      densities.push_back({{"i", i},
                           {"j", k},
                           {"breakpoints", RationalsToJson(c.priors[i][k].breakpoints)},
                           {"heights", RationalsToJson(c.priors[i][k].heights)}});
    }
  }
  j["densities"] = densities;
  return j;
}

ContinuousAuction ContinuousFromJson(const Json& j) {
  ContinuousAuction c;
  c.n = IntField(j, "n");
  if (c.n < 1) throw InputError("n must be at least 1");
  c.bids = RationalList(Field(j, "bids"), "bids");
  c.priors.assign(c.n, std::vector<PiecewiseConstantDensity>(c.n));
  std::vector<std::vector<bool>> seen(c.n, std::vector<bool>(c.n, false));
  const Json& densities = Field(j, "densities");
  if (!densities.is_array()) throw InputError("densities must be an array");
  for (const Json& entry : densities) {
    int i = IntField(entry, "i");
    int k = IntField(entry, "j");
    CheckBidder(i, c.n);
    CheckBidder(k, c.n);
    if (i == k) throw InputError("density of a bidder about itself");
    if (seen[i][k]) throw InputError("duplicate density");
    seen[i][k] = true;
    c.priors[i][k].breakpoints =
        RationalList(Field(entry, "breakpoints"), "breakpoints");
    c.priors[i][k].heights = RationalList(Field(entry, "heights"), "heights");
  }
  for (int i = 0; i < c.n; ++i) {
    for (int k = 0; k < c.n; ++k) {
      if (i != k && !seen[i][k]) throw InputError("missing density");
    }
  }
  RequireValid(c);
  return c;
}

Json MixedProfileToJson(const AuctionInstance& a, const MixedProfile& p) {
  Json strategies = Json::array();
  for (int i = 0; i < a.n; ++i) {
    Json s = Json::object();
    for (int v = 0; v < a.num_values(i); ++v) {
      Json d = Json::object();
      for (int b = 0; b < a.num_bids(); ++b) {
        if (p[i][v][b] != 0) d[ToString(a.bids[b])] = ToString(p[i][v][b]);
      }
      s[ToString(a.values[i][v])] = d;
    }
    strategies.push_back(s);
  }
  return Json{{"mixed", strategies}};
}

Json PureProfileToJson(const AuctionInstance& a, const PureProfile& p) {
  Json strategies = Json::array();
  for (int i = 0; i < a.n; ++i) {
    Json s = Json::object();
    for (int v = 0; v < a.num_values(i); ++v) {
      s[ToString(a.values[i][v])] = ToString(a.bids[p[i][v]]);
    }
    strategies.push_back(s);
  }
  return Json{{"pure", strategies}};
}

namespace {

const Json& StrategiesArray(const AuctionInstance& a, const Json& j,
                            const char* key) {
  const Json& s = j.at(key);
  if (!s.is_array() || static_cast<int>(s.size()) != a.n) {
    throw InputError("profile must hold one strategy per bidder");
  }
  return s;
}

int ValueIndex(const AuctionInstance& a, int i, const std::string& key) {
  int v = FindIndex(a.values[i], ParseRational(key));
  if (v < 0) throw InputError("profile value not in value space");
  return v;
}

int BidIndex(const AuctionInstance& a, const Json& x) {
  int b = FindIndex(a.bids, RationalFromJson(x));
  if (b < 0) throw InputError("profile bid not in bid space");
  return b;
}

}  // namespace

MixedProfile MixedProfileFromJson(const AuctionInstance& a, const Json& j) {
  if (j.is_object() && j.contains("pure")) {
    return EmbedPure(a, PureProfileFromJson(a, j));
  }
  if (!j.is_object() || !j.contains("mixed")) {
    throw InputError("profile needs a \"mixed\" or \"pure\" field");
  }
  const Json& s = StrategiesArray(a, j, "mixed");
  MixedProfile p(a.n);
  for (int i = 0; i < a.n; ++i) {
    p[i].assign(a.num_values(i), Distribution(a.num_bids(), Rational(0)));
    std::vector<bool> seen(a.num_values(i), false);
    if (!s[i].is_object()) throw InputError("strategy must be an object");
    for (auto it = s[i].begin(); it != s[i].end(); ++it) {
      int v = ValueIndex(a, i, it.key());
      seen[v] = true;
      if (!it.value().is_object()) throw InputError("bid pmf must be an object");
      for (auto bt = it.value().begin(); bt != it.value().end(); ++bt) {
        int b = FindIndex(a.bids, ParseRational(bt.key()));
        if (b < 0) throw InputError("profile bid not in bid space");
        p[i][v][b] += RationalFromJson(bt.value());
      }
    }
    for (bool ok : seen) {
      if (!ok) throw InputError("strategy misses a value");
    }
  }
  std::vector<std::string> errors = ProfileErrors(a, p, true);
  if (!errors.empty()) throw InputError(errors.front());
  return p;
}

PureProfile PureProfileFromJson(const AuctionInstance& a, const Json& j) {
  if (j.is_object() && j.contains("mixed")) {
    MixedProfile m = MixedProfileFromJson(a, j);
    PureProfile p(a.n);
    for (int i = 0; i < a.n; ++i) {
      for (const Distribution& d : m[i]) {
        int chosen = -1;
        for (int b = 0; b < a.num_bids(); ++b) {
          if (d[b] == 1) chosen = b;
        }
        if (chosen < 0) throw InputError("profile is not pure");
        p[i].push_back(chosen);
      }
    }
    return p;
  }
  if (!j.is_object() || !j.contains("pure")) {
    throw InputError("profile needs a \"pure\" or \"mixed\" field");
  }
  const Json& s = StrategiesArray(a, j, "pure");
  PureProfile p(a.n);
  for (int i = 0; i < a.n; ++i) {
    p[i].assign(a.num_values(i), -1);
    if (!s[i].is_object()) throw InputError("strategy must be an object");
    for (auto it = s[i].begin(); it != s[i].end(); ++it) {
      p[i][ValueIndex(a, i, it.key())] = BidIndex(a, it.value());
    }
    for (int b : p[i]) {
      if (b < 0) throw InputError("strategy misses a value");
    }
  }
  return p;
}

Json StepProfileToJson(const StepProfile& p) {
  Json steps = Json::array();
  for (const StepStrategy& s : p) steps.push_back(RationalsToJson(s.jumps));
  return Json{{"steps", steps}};
}

StepProfile StepProfileFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("steps") || !j.at("steps").is_array()) {
    throw InputError("step profile needs a \"steps\" array");
  }
  StepProfile p;
  for (const Json& s : j.at("steps")) {
    p.push_back(StepStrategy{RationalList(s, "jump points")});
  }
  return p;
}

Json CorrelatedToJson(const TypeAgentGame& game,
                      const CorrelatedDistribution& dist) {
  const AuctionInstance& a = game.auction();
  Json comps = Json::array();
  for (const CorrelatedComponent& c : dist) {
    Json marginals = Json::array();
    for (int p = 0; p < game.num_players(); ++p) {
      auto [i, v] = game.player(p);
      Json bids = Json::object();
      for (int b = 0; b < a.num_bids(); ++b) {
        if (c.marginals[p][b] != 0) {
          bids[ToString(a.bids[b])] = ToString(c.marginals[p][b]);
        }
      }
      marginals.push_back({{"bidder", i},
                           {"value", ToString(a.values[i][v])},
                           {"bids", bids}});
    }
    comps.push_back({{"weight", ToString(c.weight)}, {"marginals", marginals}});
  }
  return Json{{"components", comps}};
}

CorrelatedDistribution CorrelatedFromJson(const TypeAgentGame& game,
                                          const Json& j) {
  const AuctionInstance& a = game.auction();
  if (!j.is_object() || !j.contains("components") ||
      !j.at("components").is_array()) {
    throw InputError("correlated distribution needs a \"components\" array");
  }
  CorrelatedDistribution dist;
  Rational total = 0;
  for (const Json& c : j.at("components")) {
    CorrelatedComponent comp;
    comp.weight = RationalFromJson(Field(c, "weight"));
    if (comp.weight < 0) throw InputError("negative component weight");
    total += comp.weight;
    comp.marginals.assign(game.num_players(),
                          Distribution(a.num_bids(), Rational(0)));
    std::vector<bool> seen(game.num_players(), false);
    const Json& marginals = Field(c, "marginals");
    if (!marginals.is_array()) throw InputError("marginals must be an array");
    for (const Json& m : marginals) {
      int i = IntField(m, "bidder");
      CheckBidder(i, a.n);
      int v = FindIndex(a.values[i], RationalFromJson(Field(m, "value")));
      if (v < 0) throw InputError("marginal value not in value space");
      int p = game.PlayerIndex(i, v);
      if (seen[p]) throw InputError("duplicate marginal");
      seen[p] = true;
      const Json& bids = Field(m, "bids");
      if (!bids.is_object()) throw InputError("bids must be an object");
      for (auto it = bids.begin(); it != bids.end(); ++it) {
        Rational q = RationalFromJson(it.value());
        if (q < 0) throw InputError("negative probability");
        comp.marginals[p][BidIndex(a, it.key())] += q;
      }
      if (Sum(comp.marginals[p]) != 1) {
        throw InputError("marginal does not sum to 1");
      }
    }
    for (bool ok : seen) {
      if (!ok) throw InputError("component misses a player");
    }
    dist.push_back(std::move(comp));
  }
  if (total != 1) throw InputError("component weights do not sum to 1");
  return dist;
}

Json ParseJsonText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJsonText(buffer.str());
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace fpa
