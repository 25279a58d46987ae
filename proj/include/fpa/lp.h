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

#ifndef FPA_LP_H_
#define FPA_LP_H_

#include <vector>

#include "fpa/rational.h"

namespace fpa {

using Matrix = std::vector<std::vector<Rational>>;

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  std::vector<Rational> x;
  Rational objective;
};

// Maximizes c.x subject to a_le x <= b_le, a_eq x = b_eq, x >= 0, exactly.
// Dense two-phase simplex with Bland's rule, so it always terminates.
LpResult SolveLp(const Matrix& a_le, const std::vector<Rational>& b_le,
                 const Matrix& a_eq, const std::vector<Rational>& b_eq,
                 const std::vector<Rational>& c);

}  // namespace fpa

#endif  // FPA_LP_H_
