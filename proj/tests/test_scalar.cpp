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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polar/linalg.hpp"

using namespace polar;

namespace {

ScalarQ5 rnd_scalar(std::mt19937_64& rng) {
  auto small = [&](int lo, int hi) {
    return static_cast<long>(lo + rng() % static_cast<unsigned>(hi - lo + 1));
  };
  return ScalarQ5(rational(small(-6, 6), small(1, 5)),
                  rational(small(-6, 6), small(1, 5)));
}

}  // namespace

TEST_CASE("field arithmetic in Q(sqrt5)") {
  const ScalarQ5 one(1);
  const ScalarQ5 s5 = ScalarQ5::sqrt5();

  CHECK(one * s5 == s5);
  CHECK(s5 * s5 == ScalarQ5(5));

  // 1 / (1 + sqrt5) = -1/4 + (1/4) sqrt5, since (1+sqrt5)(-1+sqrt5) = 4.
  const ScalarQ5 x = one + s5;
  const ScalarQ5 inv = one / x;
  CHECK(inv == ScalarQ5(rational(-1, 4), rational(1, 4)));
  CHECK(inv * x == one);

  CHECK_THROWS_AS(one / ScalarQ5(0), Error);
}

TEST_CASE("rationals are canonical") {
  CHECK(rational(2, 4) == rational(1, 2));
  CHECK(rational(1, -2) == rational(-1, 2));
  CHECK(rational(1, -2).get_den() == 2);  // positive denominator
  CHECK_THROWS_AS(rational(1, 0), Error);
}

TEST_CASE("exact sign and ordering") {
  CHECK(ScalarQ5::golden().sign() == 1);
  CHECK((ScalarQ5(1) - ScalarQ5::sqrt5()).sign() == -1);       // 1 < sqrt5
  CHECK((ScalarQ5(9, 4) - ScalarQ5::sqrt5()).sign() == 1);     // 2.25 > sqrt5
  CHECK((ScalarQ5(-2) + ScalarQ5::sqrt5()).sign() == 1);       // sqrt5 > 2
  CHECK(ScalarQ5(0).sign() == 0);
  CHECK(ScalarQ5(2) < ScalarQ5::sqrt5());
  CHECK(ScalarQ5::sqrt5() < ScalarQ5(rational(5, 2)));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const ScalarQ5 a = rnd_scalar(rng), b = rnd_scalar(rng), c = rnd_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK((b / a) * a == b);
  }
}

TEST_CASE("reflection in a root") {
  const QVector e1{ScalarQ5(1), ScalarQ5(0)};
  const QVector e2{ScalarQ5(0), ScalarQ5(1)};
  CHECK(reflect(e1, e1) == QVector{ScalarQ5(-1), ScalarQ5(0)});
  CHECK(reflect(e2, e1) == e2);
  const QVector v{ScalarQ5(1), ScalarQ5(1)};
  const QVector mirror{ScalarQ5(1), ScalarQ5(-1)};
  CHECK(reflect(v, mirror) == v);  // vector on the mirror is fixed
  CHECK_THROWS_AS(reflect(v, QVector{ScalarQ5(0), ScalarQ5(0)}), Error);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    QVector u(3), r(3);
    for (int j = 0; j < 3; ++j) {
      u[j] = rnd_scalar(rng);
      r[j] = rnd_scalar(rng);
    }
    if (r.is_zero()) continue;
    CHECK(reflect(reflect(u, r), r) == u);
  }
}

TEST_CASE("exact matrix inverse") {
  // Gram matrix of A3 is invertible; M * M^-1 = I exactly.
  QMatrix m(3, 3);
  m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = ScalarQ5(2);
  m.at(0, 1) = m.at(1, 0) = m.at(1, 2) = m.at(2, 1) = ScalarQ5(-1);
  CHECK(m * m.inverse() == QMatrix::identity(3));

  QMatrix sing(2, 2);
  sing.at(0, 0) = ScalarQ5(1);
  sing.at(0, 1) = ScalarQ5(2);
  sing.at(1, 0) = ScalarQ5(2);
  sing.at(1, 1) = ScalarQ5(4);
  CHECK_THROWS_AS(sing.inverse(), Error);
}

TEST_CASE("reflection matrices square to the identity") {
  QMatrix gram(2, 2);
  gram.at(0, 0) = gram.at(1, 1) = ScalarQ5(2);
  const ScalarQ5 mphi(rational(-1, 2), rational(-1, 2));  // -(1+sqrt5)/2
  gram.at(0, 1) = gram.at(1, 0) = mphi;                   // H2 gram

  const QVector root{ScalarQ5(1), ScalarQ5::golden()};
  const QVector v{ScalarQ5(3), ScalarQ5(rational(1, 2))};
  CHECK(reflect_form(reflect_form(v, root, gram), root, gram) == v);
}
