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

#include "gadgets_internal.h"

#include <sstream>

namespace fpa::internal {

int InstanceBuilder::Add(const std::string& name, std::vector<Rational> values) {
  names_.push_back(name);
  values_.push_back(std::move(values));
  return static_cast<int>(names_.size()) - 1;
}

void InstanceBuilder::SetPrior(int i, int j, Distribution d) {
  priors_[{i, j}] = std::move(d);
}

AuctionInstance InstanceBuilder::Build(std::vector<Rational> bids,
                                       int min_bidders,
                                       std::vector<std::string>* names) const {
  AuctionInstance a;
  a.bids = std::move(bids);
  a.values = values_;
  *names = names_;
  while (static_cast<int>(a.values.size()) < min_bidders) {
    names->push_back("pad#" + std::to_string(a.values.size()));
    a.values.push_back({Rational(0)});
  }
  a.n = static_cast<int>(a.values.size());
  a.priors.assign(a.n, std::vector<Distribution>(a.n));
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      if (i == j) continue;
      auto it = priors_.find({i, j});
      a.priors[i][j] = it != priors_.end()
                           ? it->second
                           : PointMass(a.num_values(j), 0);
    }
  }
  return a;
}

std::vector<std::vector<std::string>> Statements(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream parts(line);
    std::string stmt;
    while (std::getline(parts, stmt, ';')) {
      std::istringstream words(stmt);
      std::vector<std::string> tokens;
      std::string w;
      while (words >> w) tokens.push_back(w);
      if (!tokens.empty()) out.push_back(std::move(tokens));
    }
  }
  return out;
}

}  // namespace fpa::internal
