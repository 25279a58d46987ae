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

#include "fpa/rational.h"

#include <cctype>
#include <cmath>

namespace fpa {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Integer Numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

Integer Denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

Rational ParseRational(std::string_view text) {
  std::string_view s = Trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!IsDigits(num) || !IsDigits(den)) {
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  }
  Integer q{std::string(den)};
  if (q == 0) {
    throw InputError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rational r(Integer{std::string(num)}, q);
  return negative ? Rational(-r) : r;
}

std::string ToString(const Rational& r) {
  return Numerator(r).str() + "/" + Denominator(r).str();
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

Rational FromDouble(double x, long long max_den) {
  if (!std::isfinite(x)) throw InputError("non-finite value");
  bool negative = x < 0;
  double y = std::fabs(x);
  // Continued fraction convergents p/q, stopping before q exceeds max_den.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = y;
  for (int iter = 0; iter < 64; ++iter) {
    double a_d = std::floor(frac);
    if (a_d > 9e15) break;
    long long a = static_cast<long long>(a_d);
    long double q2 = static_cast<long double>(a) * q1 + q0;
    if (q2 > static_cast<long double>(max_den)) break;
    long long p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = static_cast<long long>(q2);
    double rem = frac - a_d;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational r = MakeRational(p1, q1);
  return negative ? Rational(-r) : r;
}

Rational SqrtUpper(const Rational& x, const Rational& rel_tol) {
  if (x < 0) throw InputError("square root of a negative number");
  if (x == 0) return Rational(0);
  Integer p = Numerator(x);
  Integer q = Denominator(x);
  Rational bound = x * (1 + rel_tol) * (1 + rel_tol);
  for (unsigned bits = 32;; bits += 32) {
    Integer scale = Integer(1) << bits;
    // ceil(sqrt(p * scale^2 / q)) / scale is an upper bound on sqrt(x).
    Integer target = (p * scale * scale + q - 1) / q;
    Integer root = boost::multiprecision::sqrt(target);
    if (root * root < target) root += 1;
    Rational g(root, scale);
    if (g * g <= bound) return g;
  }
}

Rational Sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const Rational& x : v) s += x;
  return s;
}

}  // namespace fpa
