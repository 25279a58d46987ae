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

#ifndef FPA_SRC_GADGETS_INTERNAL_H_
#define FPA_SRC_GADGETS_INTERNAL_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fpa/auction.h"

namespace fpa::internal {

// Accumulates bidders and non-default priors; every prior left unset is a
// point mass on value 0.
class InstanceBuilder {
 public:
  int Add(const std::string& name, std::vector<Rational> values);
  void SetPrior(int i, int j, Distribution d);
  // Appends value-0 bidders until there are at least min_bidders.
  AuctionInstance Build(std::vector<Rational> bids, int min_bidders,
                        std::vector<std::string>* names) const;
  const std::vector<Rational>& values(int i) const { return values_[i]; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Rational>> values_;
  std::map<std::pair<int, int>, Distribution> priors_;
};

// Splits netlist text into statements of whitespace-separated tokens. Lines
// and ';' separate statements; '#' starts a comment.
std::vector<std::vector<std::string>> Statements(const std::string& text);

}  // namespace fpa::internal

#endif  // FPA_SRC_GADGETS_INTERNAL_H_
