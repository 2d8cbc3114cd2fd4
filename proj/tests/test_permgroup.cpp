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

#include "oracles.hpp"
#include "polar/coxeter.hpp"
#include "polar/permgroup.hpp"

using namespace polar;

namespace {

Permutation cyc(int n, std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<std::vector<int>> cs;
  for (const auto& c : cycles) cs.emplace_back(c);
  return Permutation::from_cycles(n, cs);
}

PermGroup s3() { return PermGroup(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}); }
PermGroup s4() { return PermGroup(4, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})}); }

}  // namespace

TEST_CASE("permutation basics") {
  const Permutation a = cyc(5, {{0, 1}});
  const Permutation b = cyc(5, {{2, 3, 4}});
  CHECK(a.compose(b) == cyc(5, {{0, 1}, {2, 3, 4}}));
  CHECK(a.compose(a).is_identity());
  CHECK(element_order(cyc(5, {{0, 1}, {2, 3, 4}})) == 6);  // lcm(2,3)
  CHECK(element_order(Permutation::identity(4)) == 1);
  // compose applies the right factor first
  const Permutation p = cyc(3, {{0, 1}});
  const Permutation q = cyc(3, {{1, 2}});
  CHECK(p.compose(q)(1) == p(q(1)));
  CHECK(p.compose(q)(1) == p(2));
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), Error);
}

TEST_CASE("order via stabilizer chain with closure oracle") {
  CHECK(PermGroup::trivial(4).order() == 1);
  CHECK(PermGroup(2, {cyc(2, {{0, 1}})}).order() == 2);

  // W(A3) acting on its 12 roots has order 24.
  RootSystem a3 = build_root_system(CoxeterType(CoxeterFamily::A, 3));
  PermGroup w = weyl_as_perm_group(a3);
  CHECK(w.order() == 24);
  CHECK(oracles::naive_elements(w).size() == 24);

  for (const PermGroup& g : {s3(), s4()})
    CHECK(g.order() == oracles::naive_elements(g).size());
}

TEST_CASE("membership") {
  const PermGroup c3(3, {cyc(3, {{0, 1, 2}})});
  CHECK(c3.contains(Permutation::identity(3)));
  CHECK_FALSE(c3.contains(cyc(3, {{0, 1}})));
  CHECK(oracles::naive_elements(c3).size() == 3);

  // random words over the generators are members
  std::mt19937_64 rng(3);
  const PermGroup g = s4();
  for (int i = 0; i < 50; ++i) {
    Permutation w = Permutation::identity(4);
    for (int k = 0; k < 6; ++k)
      w = w.compose(g.generators()[rng() % g.generators().size()]);
    CHECK(g.contains(w));
  }
  CHECK_THROWS_AS(g.contains(Permutation::identity(5)), Error);

  // membership agrees with naive enumeration
  RootSystem b3 = build_root_system(CoxeterType(CoxeterFamily::B, 3));
  PermGroup w = weyl_as_perm_group(b3);
  const auto elems = oracles::naive_elements(w);
  CHECK(elems.size() == 48);
  for (const auto& e : elems) CHECK(w.contains(e));
}

TEST_CASE("normalizer") {
  const PermGroup g3 = s3();
  CHECK(normalizer(g3, g3).same_group_as(g3));

  const PermGroup h(3, {cyc(3, {{0, 1}})});
  const PermGroup n = normalizer(g3, h);
  CHECK(n.order() == 2);
  CHECK(n.same_group_as(h));

  const PermGroup g4 = s4();
  const PermGroup v(4, {cyc(4, {{0, 1}, {2, 3}})});
  CHECK(normalizer(g4, v).order() == 8);

  // exhaustive oracle on several (K, H) pairs
  const std::vector<std::pair<PermGroup, PermGroup>> pairs = {
      {g4, v},
      {g4, PermGroup(4, {cyc(4, {{0, 1, 2}})})},
      {g4, PermGroup(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})})},
      {g3, h},
  };
  for (const auto& [k, hh] : pairs) {
    const auto expect = oracles::naive_normalizer(k, hh);
    const PermGroup got = normalizer(k, hh);
    CHECK(got.order() == expect.size());
    for (const auto& e : expect) CHECK(got.contains(e));
  }

  CHECK_THROWS_AS(normalizer(h, g3), Error);  // H not inside K

  // caps are hard errors, never approximations
  try {
    normalizer(g4, v, 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Limit);
  }
  CHECK_THROWS_AS(g4.elements(10), Error);
  CHECK_THROWS_AS(involutions(g4, 10), Error);
}

TEST_CASE("quotient") {
  const PermGroup g3 = s3();
  const PermGroup a3(3, {cyc(3, {{0, 1, 2}})});
  CHECK(quotient(g3, g3).group.order() == 1);
  CHECK(quotient(g3, a3).group.order() == 2);

  // D4 / center = C2 x C2: order 4, every non-identity element of order 2.
  const PermGroup d4(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
  CHECK(d4.order() == 8);
  const PermGroup center(4, {cyc(4, {{0, 2}, {1, 3}})});
  const Quotient q = quotient(d4, center);
  CHECK(q.group.order() == 4);
  for (const auto& e : q.group.elements(100))
    CHECK(e.order() <= 2);

  // projection is a homomorphism
  for (const auto& x : d4.elements(100))
    for (const auto& y : d4.elements(100))
      CHECK(q.project(x.compose(y)) == q.project(x).compose(q.project(y)));

  // non-normal subgroup is rejected
  CHECK_THROWS_AS(quotient(g3, PermGroup(3, {cyc(3, {{0, 1}})})), Error);

  // order law on a few cases
  CHECK(quotient(s4(), PermGroup(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})}))
            .group.order() == 6);
}

TEST_CASE("core") {
  const PermGroup g3 = s3();
  const PermGroup a3(3, {cyc(3, {{0, 1, 2}})});
  CHECK(core(g3, a3).same_group_as(a3));  // already normal

  // point stabilizer of S4 has trivial core
  const PermGroup stab(4, {cyc(4, {{1, 2}}), cyc(4, {{1, 2, 3}})});
  CHECK(core(s4(), stab).order() == 1);

  // central C2 factor is its own core
  RootSystem a2 = build_root_system(CoxeterType(CoxeterFamily::A, 2));
  const PermGroup prod = direct_product(weyl_as_perm_group(a2), PermGroup(2, {cyc(2, {{0, 1}})}));
  const PermGroup c2(8, {cyc(8, {{6, 7}})});
  CHECK(core(prod, c2).same_group_as(c2));

  // core contains every normal subgroup of G inside K (exhaustive, |G| <= 200)
  const PermGroup g4 = s4();
  const auto g4_elems = oracles::naive_elements(g4);
  for (const auto& sub : oracles::all_subgroups(g4)) {
    std::vector<Permutation> gens(sub.begin(), sub.end());
    const PermGroup k(4, gens);
    const PermGroup c = core(g4, k);
    CHECK(is_normal_in(c, g4));
    CHECK(c.is_subgroup_of(k));
    for (const auto& nsub : oracles::all_subgroups(g4)) {
      // nsub normal in G and inside K => inside core
      bool inside_k = true;
      for (const auto& e : nsub) inside_k = inside_k && sub.count(e);
      if (!inside_k) continue;
      bool normal = true;
      for (const auto& g : g4_elems) {
        for (const auto& e : nsub)
          if (!nsub.count(e.conjugated_by(g))) {
            normal = false;
            break;
          }
        if (!normal) break;
      }
      if (!normal) continue;
      for (const auto& e : nsub) CHECK(c.contains(e));
    }
  }
}

TEST_CASE("involutions") {
  CHECK(involutions(PermGroup(2, {cyc(2, {{0, 1}})})).size() == 1);
  CHECK(involutions(PermGroup(4, {cyc(4, {{0, 1, 2, 3}})})).size() == 1);  // C4
  CHECK(involutions(s3()).size() == 3);

  // equals the fixed points of g -> g^-1 minus the identity
  for (const PermGroup& g : {s4(), PermGroup(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})})}) {
    size_t expect = 0;
    for (const auto& e : oracles::naive_elements(g))
      if (!e.is_identity() && e == e.inverse()) ++expect;
    CHECK(involutions(g).size() == expect);
  }
}

TEST_CASE("generated and direct products") {
  CHECK(generated(5, {}).order() == 1);
  CHECK(generated(3, {cyc(3, {{0, 1}}), cyc(3, {{1, 2}})}).order() == 6);
  CHECK(generated(4, {cyc(4, {{0, 1}}), cyc(4, {{2, 3}})}).order() == 4);

  // closure: pairwise products of generators are members
  const PermGroup g = generated(4, {cyc(4, {{0, 1}}), cyc(4, {{1, 2, 3}})});
  for (const auto& a : g.generators())
    for (const auto& b : g.generators())
      CHECK(g.contains(a.compose(b)));

  const PermGroup c2(2, {cyc(2, {{0, 1}})});
  CHECK(direct_product(s3(), PermGroup::trivial(1)).order() == 6);
  CHECK(direct_product(c2, c2).order() == 4);
  const PermGroup s3c2 = direct_product(s3(), c2);
  CHECK(s3c2.order() == 12);
  CHECK(oracles::naive_elements(s3c2).size() == 12);
}

TEST_CASE("random generator sets: chain agrees with naive closure") {
  std::mt19937_64 rng(2026);
  auto random_perm = [&](int n) {
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(img[static_cast<size_t>(i)], img[rng() % (static_cast<unsigned>(i) + 1)]);
    return Permutation::from_images(std::move(img));
  };
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);  // domains 4..7
    std::vector<Permutation> gens;
    const int k = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < k; ++i) gens.push_back(random_perm(n));
    const PermGroup g(n, gens);
    const auto closure = oracles::naive_closure(n, gens);
    CHECK(g.order() == closure.size());
    // sampled membership agreement
    size_t idx = 0;
    const size_t stride = 1 + closure.size() / 20;
    for (const auto& e : closure) {
      if (idx++ % stride == 0) CHECK(g.contains(e));
    }
    // a permutation outside the closure is rejected
    for (int probe = 0; probe < 20; ++probe) {
      const Permutation p = random_perm(n);
      if (!closure.count(p)) {
        CHECK_FALSE(g.contains(p));
        break;
      }
    }
  }
}

TEST_CASE("random quotients and normalizers against oracles") {
  std::mt19937_64 rng(99);
  auto random_perm = [&](int n) {
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(img[static_cast<size_t>(i)], img[rng() % (static_cast<unsigned>(i) + 1)]);
    return Permutation::from_images(std::move(img));
  };
  int quotients = 0, normalizers = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 5;
    const PermGroup g(n, {random_perm(n), random_perm(n)});
    if (g.order() > 500 || g.order() == 1) continue;
    const auto elems = g.elements(500);
    // N: normal closure of a random element, normal by construction
    const PermGroup nsub = normal_closure(g, PermGroup(n, {elems[rng() % elems.size()]}));
    const Quotient q = quotient(g, nsub);
    CHECK(q.group.order() == g.order() / nsub.order());
    for (int s = 0; s < 10; ++s) {
      const Permutation& x = elems[rng() % elems.size()];
      const Permutation& y = elems[rng() % elems.size()];
      CHECK(q.project(x.compose(y)) == q.project(x).compose(q.project(y)));
    }
    ++quotients;
    // H: random cyclic subgroup; normalizer against the naive oracle
    const PermGroup h(n, {elems[rng() % elems.size()]});
    const auto expect = oracles::naive_normalizer(g, h);
    const PermGroup got = normalizer(g, h);
    CHECK(got.order() == expect.size());
    for (const auto& e : expect) CHECK(got.contains(e));
    ++normalizers;
  }
  CHECK(quotients >= 5);
  CHECK(normalizers >= 5);
}

TEST_CASE("isomorphism testing") {
  // S3 on points vs S3 acting regularly on its 6 elements
  const PermGroup g3 = s3();
  const Quotient reg = quotient(direct_product(g3, s3()),
                                PermGroup(6, {cyc(6, {{3, 4}}), cyc(6, {{3, 4, 5}})}));
  CHECK(reg.group.order() == 6);
  CHECK(isomorphic(g3, reg.group));

  const PermGroup c6(6, {cyc(6, {{0, 1, 2, 3, 4, 5}})});
  CHECK_FALSE(isomorphic(g3, c6));

  const PermGroup v4(4, {cyc(4, {{0, 1}}), cyc(4, {{2, 3}})});
  const PermGroup c4(4, {cyc(4, {{0, 1, 2, 3}})});
  CHECK_FALSE(isomorphic(v4, c4));

  // W(B2) on its 8 roots is dihedral of order 8: isomorphic to D4 on 4
  // points, not to the elementary abelian group of the same order.
  RootSystem b2 = build_root_system(CoxeterType(CoxeterFamily::B, 2));
  const PermGroup wb2 = weyl_as_perm_group(b2);
  const PermGroup d4(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
  CHECK(wb2.order() == 8);
  CHECK(isomorphic(wb2, d4));
  const PermGroup e8ab(6, {cyc(6, {{0, 1}}), cyc(6, {{2, 3}}), cyc(6, {{4, 5}})});
  CHECK(e8ab.order() == 8);
  CHECK_FALSE(isomorphic(wb2, e8ab));
}
