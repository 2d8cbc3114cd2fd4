// Copyright 2026 The polarrec authors
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

#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "polar/error.hpp"

namespace polar {

// Arbitrary-precision rational; GMP keeps values in lowest terms with a
// positive denominator once canonicalized.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::InvalidData, "rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Element a + b*sqrt(5) of the real quadratic field Q(sqrt5).
// Structural equality of (a, b) is field equality; no floating point is
// involved anywhere.
struct ScalarQ5 {
  Rational a;  // rational part
  Rational b;  // coefficient of sqrt(5)

  ScalarQ5() : a(0), b(0) {}
  ScalarQ5(long v) : a(v), b(0) {}  // NOLINT: integers embed implicitly
  ScalarQ5(Rational ra) : a(std::move(ra)), b(0) {}
  ScalarQ5(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static ScalarQ5 sqrt5() { return {Rational(0), Rational(1)}; }
  // (1 + sqrt5) / 2
  static ScalarQ5 golden() { return {rational(1, 2), rational(1, 2)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  // sqrt5 -> -sqrt5; x * conj(x) = a^2 - 5 b^2 is rational.
  ScalarQ5 conj() const { return {a, Rational(-b)}; }
  Rational norm() const { return a * a - 5 * b * b; }

  // Exact sign of a + b*sqrt5 as a real number: -1, 0 or +1.
  int sign() const {
    const int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: the winner is whichever square dominates.
    const int c = cmp(a * a, 5 * b * b);
    if (c == 0)
      throw Error(ErrorKind::Internal, "ScalarQ5::sign: a^2 == 5 b^2 with a,b nonzero");
    return c > 0 ? sa : sb;
  }

  std::string str() const {
    if (b == 0) return a.get_str();
    std::string s = (a == 0) ? "" : a.get_str() + (sgn(b) > 0 ? "+" : "");
    return s + b.get_str() + "*s5";
  }
};

inline ScalarQ5 operator+(const ScalarQ5& x, const ScalarQ5& y) {
  return {x.a + y.a, x.b + y.b};
}
inline ScalarQ5 operator-(const ScalarQ5& x, const ScalarQ5& y) {
  return {x.a - y.a, x.b - y.b};
}
inline ScalarQ5 operator-(const ScalarQ5& x) { return {Rational(-x.a), Rational(-x.b)}; }
inline ScalarQ5 operator*(const ScalarQ5& x, const ScalarQ5& y) {
  // (a1 + b1 s)(a2 + b2 s) = a1 a2 + 5 b1 b2 + (a1 b2 + a2 b1) s
  return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
}
inline ScalarQ5 operator/(const ScalarQ5& x, const ScalarQ5& y) {
  if (y.is_zero()) throw Error(ErrorKind::InvalidData, "ScalarQ5: division by zero");
  const Rational n = y.norm();  // nonzero: sqrt5 is irrational
  ScalarQ5 t = x * y.conj();
  return {t.a / n, t.b / n};
}
inline ScalarQ5& operator+=(ScalarQ5& x, const ScalarQ5& y) { return x = x + y; }
inline ScalarQ5& operator-=(ScalarQ5& x, const ScalarQ5& y) { return x = x - y; }
inline ScalarQ5& operator*=(ScalarQ5& x, const ScalarQ5& y) { return x = x * y; }

inline bool operator==(const ScalarQ5& x, const ScalarQ5& y) {
  return x.a == y.a && x.b == y.b;
}
inline bool operator!=(const ScalarQ5& x, const ScalarQ5& y) { return !(x == y); }
inline bool operator<(const ScalarQ5& x, const ScalarQ5& y) {
  return (x - y).sign() < 0;
}
inline bool operator>(const ScalarQ5& x, const ScalarQ5& y) { return y < x; }
inline bool operator<=(const ScalarQ5& x, const ScalarQ5& y) { return !(y < x); }
inline bool operator>=(const ScalarQ5& x, const ScalarQ5& y) { return !(x < y); }

}  // namespace polar
