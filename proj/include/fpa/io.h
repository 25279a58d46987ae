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

#ifndef FPA_IO_H_
#define FPA_IO_H_

#include <string>
#include <vector>

#include "fpa/auction.h"
#include "fpa/correlated.h"
#include "json.hpp"

namespace fpa {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings; plain JSON integers are also accepted on
// input.
Rational RationalFromJson(const Json& j);
Json RationalToJson(const Rational& r);
Json RationalsToJson(const std::vector<Rational>& v);

// Instance files. Parsing validates and throws InputError on any problem.
Json InstanceToJson(const AuctionInstance& a);
AuctionInstance InstanceFromJson(const Json& j);
std::string SerializeInstance(const AuctionInstance& a);
AuctionInstance ParseInstance(const std::string& text);

Json ContinuousToJson(const ContinuousAuction& c);
ContinuousAuction ContinuousFromJson(const Json& j);

// True when the document declares kind "cfpa".
bool IsContinuousDocument(const Json& j);

// Profiles: {"mixed": [{value: {bid: prob}}]} or {"pure": [{value: bid}]}.
Json MixedProfileToJson(const AuctionInstance& a, const MixedProfile& p);
Json PureProfileToJson(const AuctionInstance& a, const PureProfile& p);
// Reads either form; pure profiles come back embedded as point masses.
MixedProfile MixedProfileFromJson(const AuctionInstance& a, const Json& j);
// Reads the pure form, or a mixed form whose rows are all point masses.
PureProfile PureProfileFromJson(const AuctionInstance& a, const Json& j);

// Step profiles: {"steps": [[jump, ...], ...]}.
Json StepProfileToJson(const StepProfile& p);
StepProfile StepProfileFromJson(const Json& j);

// Correlated distributions: {"components": [{"weight": w, "marginals":
// [{"bidder": i, "value": v, "bids": {bid: prob}}, ...]}]}, one marginal per
// type-agent player.
Json CorrelatedToJson(const TypeAgentGame& game,
                      const CorrelatedDistribution& dist);
CorrelatedDistribution CorrelatedFromJson(const TypeAgentGame& game,
                                          const Json& j);

Json ParseJsonText(const std::string& text);
Json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace fpa

#endif  // FPA_IO_H_
