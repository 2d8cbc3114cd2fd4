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

#include "polar/recognition.hpp"

using namespace polar;

namespace {

using F = CoxeterFamily;

Permutation cyc(int n, std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<std::vector<int>> cs;
  for (const auto& c : cycles) cs.emplace_back(c);
  return Permutation::from_cycles(n, cs);
}

const Catalog& catalog() {
  static const Catalog c = Catalog::builtin();
  return c;
}

ValidatedHistory extracted(const std::vector<CoxeterType>& types) {
  return validate(extract_history(product_root_system(types)));
}

}  // namespace

TEST_CASE("atom reflections") {
  // {1 < C2}: the unique involution is the non-identity element
  HistoryLattice chain;
  chain.domain_size = 2;
  chain.nodes.push_back({"H", GroupRef::concrete(PermGroup::trivial(2))});
  chain.nodes.push_back({"G", GroupRef::concrete(PermGroup(2, {cyc(2, {{0, 1}})}))});
  chain.edges = {{"H", "G"}};
  chain.min_id = "H";
  chain.max_id = "G";
  CHECK(atom_reflection(validate(chain), "G") == cyc(2, {{0, 1}}));

  // A2 wall nodes give back the wall reflections
  RootSystem a2 = build_root_system(CoxeterType(F::A, 2));
  const ValidatedHistory va2 = validate(extract_history(a2));
  CHECK(atom_reflection(va2, "K0") == a2.simple_perms[0]);
  CHECK(atom_reflection(va2, "K1") == a2.simple_perms[1]);
  CHECK_THROWS_AS(atom_reflection(va2, "G"), RecognitionError);  // not an atom

  // an S3 atom-quotient has three involutions: rejected
  HistoryLattice bad;
  bad.domain_size = 3;
  bad.nodes.push_back({"H", GroupRef::concrete(PermGroup::trivial(3))});
  bad.nodes.push_back({"G", GroupRef::concrete(PermGroup(
                                3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}))});
  bad.edges = {{"H", "G"}};
  bad.min_id = "H";
  bad.max_id = "G";
  try {
    atom_reflection(validate(bad), "G");
    CHECK(false);
  } catch (const RecognitionError& e) {
    CHECK(e.step() == RecognitionStep::ReflectionUniqueness);
  }
}

TEST_CASE("weyl_from_history") {
  HistoryLattice chain;
  chain.domain_size = 2;
  chain.nodes.push_back({"H", GroupRef::concrete(PermGroup::trivial(2))});
  chain.nodes.push_back({"G", GroupRef::concrete(PermGroup(2, {cyc(2, {{0, 1}})}))});
  chain.edges = {{"H", "G"}};
  chain.min_id = "H";
  chain.max_id = "G";
  const WeylData w1 = weyl_from_history(validate(chain));
  CHECK(w1.model.order() == 2);
  REQUIRE(w1.components.size() == 1);
  CHECK(w1.components[0].type == CoxeterType(F::A, 1));

  const WeylData wb2 = weyl_from_history(extracted({CoxeterType(F::B, 2)}));
  CHECK(wb2.model.order() == 8);
  REQUIRE(wb2.components.size() == 1);
  CHECK(wb2.components[0].type == CoxeterType(F::B, 2));

  const WeylData wprod =
      weyl_from_history(extracted({CoxeterType(F::A, 1), CoxeterType(F::A, 2)}));
  CHECK(wprod.model.order() == 12);
  REQUIRE(wprod.components.size() == 2);
  CHECK(wprod.components[0].type == CoxeterType(F::A, 1));
  CHECK(wprod.components[1].type == CoxeterType(F::A, 2));
}

TEST_CASE("factor_isotropy returns the complement node") {
  // irreducible: W_Sigma_1 is trivial, so the minimum H is the node
  const ValidatedHistory h3 = extracted({CoxeterType(F::H, 3)});
  const WeylData wh3 = weyl_from_history(h3);
  CHECK(factor_isotropy(h3, wh3, 0) == "H");

  // A1 x A1: each component's node is the other atom's
  const ValidatedHistory aa = extracted({CoxeterType(F::A, 1), CoxeterType(F::A, 1)});
  const WeylData waa = weyl_from_history(aa);
  CHECK(factor_isotropy(aa, waa, 0) == "K1");
  CHECK(factor_isotropy(aa, waa, 1) == "K0");

  // rank-3 mixed history [A1, B2]
  const ValidatedHistory mixed = extracted({CoxeterType(F::A, 1), CoxeterType(F::B, 2)});
  const WeylData wm = weyl_from_history(mixed);
  REQUIRE(wm.components.size() == 2);
  CHECK(factor_isotropy(mixed, wm, 0) == "K1,2");
  CHECK(factor_isotropy(mixed, wm, 1) == "K0");
}

TEST_CASE("effectivize") {
  // irreducible reflection representation: trivial kernel
  const ValidatedHistory a2 = extracted({CoxeterType(F::A, 2)});
  const Effectivization e1 = effectivize(a2, "H");
  CHECK(e1.kernel.order() == 1);
  CHECK(e1.effective.group.order() == 6);

  // wall parabolic of W(A3) = S4 is not normal: trivial core
  const ValidatedHistory a3 = extracted({CoxeterType(F::A, 3)});
  const Effectivization e2 = effectivize(a3, "K0");
  CHECK(e2.kernel.order() == 1);
  CHECK(e2.effective.group.order() == 24);

  // complement factor in a product is its own core
  const ValidatedHistory prod = extracted({CoxeterType(F::A, 1), CoxeterType(F::A, 2)});
  const Effectivization e3 = effectivize(prod, "K1,2");
  CHECK(e3.kernel.order() == 6);
  CHECK(e3.effective.group.order() == 2);
}

TEST_CASE("recognize on small histories") {
  HistoryLattice chain;
  chain.domain_size = 2;
  chain.nodes.push_back({"H", GroupRef::concrete(PermGroup::trivial(2))});
  chain.nodes.push_back({"G", GroupRef::concrete(PermGroup(2, {cyc(2, {{0, 1}})}))});
  chain.edges = {{"H", "G"}};
  chain.min_id = "H";
  chain.max_id = "G";

  const PolarRepDescriptor d1 = recognize(chain, 1, catalog());
  REQUIRE(d1.factors.size() == 1);
  CHECK(d1.factors[0].catalog_id == "coxeter/A1/reflection");
  CHECK(d1.factors[0].factor_dim == 1);
  CHECK(d1.trivial_dim == 0);

  const PolarRepDescriptor d4 = recognize(chain, 4, catalog());
  CHECK(d4.trivial_dim == 3);

  try {
    recognize(chain, 0, catalog());
    CHECK(false);
  } catch (const RecognitionError& e) {
    CHECK(e.step() == RecognitionStep::Dimension);
  }

  const PolarRepDescriptor h3 =
      recognize(extract_history(build_root_system(CoxeterType(F::H, 3))), 3, catalog());
  REQUIRE(h3.factors.size() == 1);
  CHECK(h3.factors[0].catalog_id == "coxeter/H3/reflection");
  CHECK(h3.trivial_dim == 0);
}

TEST_CASE("padding invariance") {
  const HistoryLattice l =
      extract_history(product_root_system({CoxeterType(F::B, 2), CoxeterType(F::A, 1)}));
  const PolarRepDescriptor base = recognize(l, 3, catalog());
  for (int k : {1, 2, 7}) {
    const PolarRepDescriptor padded = recognize(l, 3 + k, catalog());
    CHECK(padded.trivial_dim == base.trivial_dim + k);
    REQUIRE(padded.factors.size() == base.factors.size());
    for (size_t i = 0; i < base.factors.size(); ++i) {
      CHECK(padded.factors[i].catalog_id == base.factors[i].catalog_id);
      CHECK(padded.factors[i].isotropy_node == base.factors[i].isotropy_node);
      CHECK(padded.factors[i].factor_dim == base.factors[i].factor_dim);
    }
  }
}

TEST_CASE("conjugation invariance") {
  for (const auto& t : {CoxeterType(F::A, 2), CoxeterType(F::B, 2)}) {
    RootSystem rs = build_root_system(t);
    const HistoryLattice l = extract_history(rs);
    PermGroup w = weyl_as_perm_group(rs);
    const Permutation g = w.generators()[0].compose(w.generators()[1]);
    HistoryLattice conj = l;
    for (auto& n : conj.nodes)
      n.ref = GroupRef::concrete(conjugate_subgroup(n.ref.group, g));
    const PolarRepDescriptor d1 = recognize(l, t.rank, catalog());
    const PolarRepDescriptor d2 = recognize(conj, t.rank, catalog());
    REQUIRE(d1.factors.size() == d2.factors.size());
    for (size_t i = 0; i < d1.factors.size(); ++i) {
      CHECK(d1.factors[i].catalog_id == d2.factors[i].catalog_id);
      CHECK(d1.factors[i].kernel_order == d2.factors[i].kernel_order);
      CHECK(d1.factors[i].factor_dim == d2.factors[i].factor_dim);
    }
    CHECK(d1.trivial_dim == d2.trivial_dim);
  }
}

TEST_CASE("all rank <= 6 pair products round-trip") {
  using F = CoxeterFamily;
  const std::vector<CoxeterType> pool = {
      CoxeterType(F::A, 1), CoxeterType(F::A, 2), CoxeterType(F::A, 3),
      CoxeterType(F::A, 4), CoxeterType(F::B, 2), CoxeterType(F::B, 3),
      CoxeterType(F::B, 4), CoxeterType(F::D, 4), CoxeterType(F::F, 4),
      CoxeterType(F::H, 3), CoxeterType(F::H, 4), CoxeterType(F::I2, 2, 5),
      CoxeterType(F::I2, 2, 6), CoxeterType(F::I2, 2, 7), CoxeterType(F::I2, 2, 8)};
  int cases = 0;
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i; j < pool.size(); ++j) {
      if (pool[i].rank + pool[j].rank > 6) continue;
      const std::vector<CoxeterType> types = {pool[i], pool[j]};
      const HistoryLattice l = extract_history(product_root_system(types));
      const PolarRepDescriptor d =
          recognize(l, pool[i].rank + pool[j].rank, catalog());
      std::multiset<std::string> want, got;
      for (const auto& t : types) want.insert("coxeter/" + t.label() + "/reflection");
      for (const auto& f : d.factors) got.insert(f.catalog_id);
      CHECK(want == got);
      CHECK(d.trivial_dim == 0);
      ++cases;
    }
  CHECK(cases > 50);
}

TEST_CASE("factor_isotropy on a symbolic lattice uses subset coordinates") {
  const CatalogEntry* e = catalog().find("lie/sun-u1/product");
  REQUIRE(e != nullptr);
  const ValidatedHistory vh = validate(catalog().history_template(*e, 3));
  const WeylData w = weyl_from_history(vh);
  REQUIRE(w.components.size() == 2);
  CHECK(factor_isotropy(vh, w, 0) == "K1");
  CHECK(factor_isotropy(vh, w, 1) == "K0");
}

TEST_CASE("recognition is independent of node ids and redundant edges") {
  HistoryLattice l = extract_history(build_root_system(CoxeterType(F::B, 3)));
  const PolarRepDescriptor base = recognize(l, 3, catalog());

  // rename every node and add true-but-redundant transitive edges
  HistoryLattice renamed = l;
  auto rename = [](const std::string& id) { return "node-" + id; };
  for (auto& n : renamed.nodes) n.id = rename(n.id);
  for (auto& [lo, hi] : renamed.edges) {
    lo = rename(lo);
    hi = rename(hi);
  }
  renamed.min_id = rename(renamed.min_id);
  renamed.max_id = rename(renamed.max_id);
  renamed.edges.push_back({renamed.min_id, renamed.max_id});

  const PolarRepDescriptor d = recognize(renamed, 3, catalog());
  REQUIRE(d.factors.size() == base.factors.size());
  CHECK(d.factors[0].catalog_id == base.factors[0].catalog_id);
  CHECK(d.factors[0].factor_dim == base.factors[0].factor_dim);
  CHECK(d.trivial_dim == base.trivial_dim);
}

TEST_CASE("descriptor JSON shape") {
  const PolarRepDescriptor d =
      recognize(extract_history(build_root_system(CoxeterType(F::A, 2))), 5, catalog());
  const std::string j = descriptor_json(d);
  CHECK(j.find("\"total_dim\": 5") != std::string::npos);
  CHECK(j.find("\"trivial_dim\": 3") != std::string::npos);
  CHECK(j.find("\"catalog_id\": \"coxeter/A2/reflection\"") != std::string::npos);
  CHECK(j.find("\"kernel_order\": 1") != std::string::npos);
}
