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

#ifndef FPA_RATIONAL_H_
#define FPA_RATIONAL_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace fpa {

// Expression templates are off so that `auto` never captures a lazy
// expression referring to a temporary.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

// Malformed input or a violated precondition. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search ran out of budget without an answer. Maps to exit code 3.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational MakeRational(long long num, long long den = 1) {
  return Rational(Integer(num), Integer(den));
}

Integer Numerator(const Rational& r);
Integer Denominator(const Rational& r);

// Accepts "p/q", "p", with optional leading sign. Throws InputError.
Rational ParseRational(std::string_view text);

// Always "p/q" in lowest terms, e.g. "0/1", "3/50", "-1/2".
std::string ToString(const Rational& r);

double ToDouble(const Rational& r);

// Best rational approximation of x with denominator at most max_den.
Rational FromDouble(double x, long long max_den = 1000000000LL);

// Returns g with sqrt(x) <= g <= sqrt(x) * (1 + rel_tol). x must be >= 0.
Rational SqrtUpper(const Rational& x, const Rational& rel_tol);

Rational Sum(const std::vector<Rational>& v);

}  // namespace fpa

#endif  // FPA_RATIONAL_H_
