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

#include <bit>

#include <nlohmann/json.hpp>

#include "polar/recognition.hpp"

using namespace polar;

namespace {
using F = CoxeterFamily;

const Catalog& cat() {
  static const Catalog c = Catalog::builtin();
  return c;
}
}  // namespace

TEST_CASE("expression language") {
  CHECK(eval_int_expr("2*n+2", 3) == 8);
  CHECK(eval_int_expr("12", std::nullopt) == 12);
  CHECK(eval_int_expr("(n-1)*(n+1)", 5) == 24);
  CHECK_THROWS_AS(eval_int_expr("n", std::nullopt), Error);
  CHECK_THROWS_AS(eval_int_expr("2n", 3), Error);
  CHECK_THROWS_AS(eval_int_expr("5/2", std::nullopt), Error);

  CHECK(eval_constraint("n>=2", 2));
  CHECK_FALSE(eval_constraint("n>=2", 1));
  CHECK(eval_constraint("", 0));

  CHECK(instantiate_placeholders("SU({n})xU(1)", 3) == "SU(3)xU(1)");
  CHECK(instantiate_placeholders("SU({n-1})", 3) == "SU(2)");
  CHECK(instantiate_placeholders("dim {2*n+2}", 3) == "dim 8");

  CHECK(solve_label_pattern("SU({n})xU(1)", "SU(3)xU(1)") == 3);
  CHECK(solve_label_pattern("SU({n})xSU({n})", "SU(4)xSU(4)") == 4);
  CHECK_FALSE(solve_label_pattern("SU({n})xSU({n})", "SU(4)xSU(5)").has_value());
  CHECK_FALSE(solve_label_pattern("SU({n})", "SO(4)").has_value());
}

TEST_CASE("builtin catalog shape") {
  const auto& c = cat();
  CHECK(c.find("coxeter/A2/reflection") != nullptr);
  CHECK(c.find("coxeter/E8/reflection") != nullptr);
  CHECK(c.find("coxeter/I2(12)/reflection") != nullptr);
  CHECK(c.find("lie/su3/adjoint") != nullptr);
  CHECK(c.find("lie/sun-u1/twisted") != nullptr);
  CHECK(c.find("lie/sun-u1/product") != nullptr);
  CHECK(c.find("nope") == nullptr);

  // templates: A1 chain; B3 pair-node orders {8,6,4}
  const HistoryLattice a1 = c.history_template(*c.find("coxeter/A1/reflection"));
  CHECK(a1.nodes.size() == 2);
  const ValidatedHistory b3 =
      validate(c.history_template(*c.find("coxeter/B3/reflection")));
  std::multiset<std::uint64_t> pair_orders;
  for (int i = 0; i < b3.node_count(); ++i)
    if (std::popcount(b3.coord_of(i)) == 2) pair_orders.insert(b3.group_at(i).order());
  CHECK(pair_orders == std::multiset<std::uint64_t>{4, 6, 8});

  // parameterized template instantiation
  const CatalogEntry* prod = c.find("lie/sun-u1/product");
  const HistoryLattice t3 = c.history_template(*prod, 3);
  CHECK(t3.find("K0")->ref.label == "SU(2)xU(1)");
  CHECK(t3.find("K1")->ref.label == "SU(3)x1");
  CHECK(t3.find("H")->ref.label == "SU(2)");
  CHECK(c.real_dim(*prod, 3) == 8);
  CHECK_THROWS_AS(c.history_template(*prod), Error);     // needs n
  CHECK_THROWS_AS(c.history_template(*prod, 1), Error);  // constraint n>=2
}

TEST_CASE("symbolic whole-history recognition against the catalog") {
  const auto& c = cat();
  // adjoint su(3): dim 8, Weyl type A2
  const CatalogEntry* su3 = c.find("lie/su3/adjoint");
  const HistoryLattice t = c.history_template(*su3);
  const PolarRepDescriptor d = recognize(t, 8, c);
  REQUIRE(d.factors.size() == 1);
  CHECK(d.factors[0].catalog_id == "lie/su3/adjoint");
  CHECK(d.factors[0].factor_dim == 8);
  CHECK(d.trivial_dim == 0);
  CHECK(d.factors[0].kernel_label == "Z(SU(3))");

  // so(7) vs sp(6): same Weyl type B3 and dimension, distinct group labels
  const PolarRepDescriptor dso =
      recognize(c.history_template(*c.find("lie/so7/adjoint")), 21, c);
  CHECK(dso.factors[0].catalog_id == "lie/so7/adjoint");
  const PolarRepDescriptor dsp =
      recognize(c.history_template(*c.find("lie/sp6/adjoint")), 21, c);
  CHECK(dsp.factors[0].catalog_id == "lie/sp6/adjoint");

  // catalog miss: an unknown symbolic group
  HistoryLattice alien = c.history_template(*su3);
  for (auto& n : alien.nodes)
    if (n.id == "G") n.ref.label = "E7(-25)";
  try {
    recognize(alien, 8, c);
    CHECK(false);
  } catch (const RecognitionError& e) {
    CHECK(e.step() == RecognitionStep::Catalog);
  }
}

TEST_CASE("counterexample pair discriminates by wall labels") {
  const auto& c = cat();
  const CatalogEntry* tw = c.find("lie/sun-u1/twisted");
  const CatalogEntry* pr = c.find("lie/sun-u1/product");
  REQUIRE(tw != nullptr);
  REQUIRE(pr != nullptr);

  for (long n : {2, 3, 5}) {
    const ValidatedHistory vt = validate(c.history_template(*tw, n));
    const ValidatedHistory vp = validate(c.history_template(*pr, n));
    CHECK(vt.ref_at(vt.max_index()).label == vp.ref_at(vp.max_index()).label);
    CHECK(vt.ref_at(vt.min_index()).label == vp.ref_at(vp.min_index()).label);
    CHECK(c.real_dim(*tw, n) == c.real_dim(*pr, n));
    CHECK_FALSE(lattices_isomorphic(vt, vp));

    const int dim = static_cast<int>(2 * n + 2);
    const PolarRepDescriptor dt = recognize(c.history_template(*tw, n), dim, c);
    const PolarRepDescriptor dp = recognize(c.history_template(*pr, n), dim, c);
    CHECK(dt.factors[0].catalog_id == tw->id);
    CHECK(dp.factors[0].catalog_id == pr->id);
    CHECK(dt.trivial_dim == 0);
    CHECK(dp.trivial_dim == 0);
  }
}

TEST_CASE("integrity of the shipped catalog") {
  const auto issues = cat().integrity_check();
  for (const auto& i : issues)
    MESSAGE(i.entry_id, ": ", i.message);
  CHECK(issues.empty());
}

TEST_CASE("deliberate weyl-type mismatch is an integrity error") {
  const std::string json = R"json([{
    "id": "x/mismatch",
    "group_label": "W(A2)",
    "rep_label": "reflection",
    "real_dim": 2,
    "weyl_type": "A2",
    "principal_isotropy": "1",
    "kernel_label": "1",
    "history_template": {"coxeter_type": "B2"}
  }])json";
  const Catalog c = Catalog::from_json(json);
  const auto issues = c.integrity_check();
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].entry_id == "x/mismatch");
  CHECK(issues[0].message.find("differs from declared") != std::string::npos);
}

TEST_CASE("ambiguous entries are an integrity issue and a lookup error") {
  const Catalog dup = Catalog::from_json(R"json([
    {"id": "x/a1-one", "group_label": "W(A1)", "rep_label": "reflection",
     "real_dim": 1, "weyl_type": "A1", "principal_isotropy": "1",
     "kernel_label": "1", "history_template": {"coxeter_type": "A1"}},
    {"id": "x/a1-two", "group_label": "W(A1)", "rep_label": "reflection",
     "real_dim": 1, "weyl_type": "A1", "principal_isotropy": "1",
     "kernel_label": "1", "history_template": {"coxeter_type": "A1"}}
  ])json");
  CHECK_FALSE(dup.integrity_check().empty());

  HistoryLattice chain;
  chain.domain_size = 2;
  chain.nodes.push_back({"H", GroupRef::concrete(PermGroup::trivial(2))});
  chain.nodes.push_back({"G", GroupRef::concrete(PermGroup(
                                  2, {Permutation::from_cycles(2, {{0, 1}})}))});
  chain.edges = {{"H", "G"}};
  chain.min_id = "H";
  chain.max_id = "G";
  try {
    recognize(chain, 1, dup);
    CHECK(false);
  } catch (const RecognitionError& e) {
    CHECK(e.step() == RecognitionStep::Catalog);
    CHECK(std::string(e.what()).find("ambiguous") != std::string::npos);
  }
}

TEST_CASE("empty catalog") {
  const Catalog c = Catalog::from_json("[]");
  CHECK(c.entries().empty());
  CHECK(c.integrity_check().empty());
}

TEST_CASE("catalog JSON round-trip") {
  const auto& c = cat();
  const Catalog back = Catalog::from_json(c.to_json());
  REQUIRE(back.entries().size() == c.entries().size());
  for (size_t i = 0; i < c.entries().size(); ++i) {
    CHECK(back.entries()[i].id == c.entries()[i].id);
    CHECK(back.entries()[i].concrete == c.entries()[i].concrete);
    CHECK(back.entries()[i].dim_expr == c.entries()[i].dim_expr);
    CHECK(product_label(back.entries()[i].types) ==
          product_label(c.entries()[i].types));
  }
  // a symbolic template survives with involutions intact
  const CatalogEntry* tw = back.find("lie/sun-u1/twisted");
  REQUIRE(tw != nullptr);
  const HistoryLattice t = back.history_template(*tw, 4);
  CHECK(t.find("K0")->ref.involution.has_value());
  CHECK(t.weyl_model.has_value());

  // materialized templates parse back as concrete entries
  Catalog tiny = Catalog::from_json(R"json([{
    "id": "coxeter/A2/reflection",
    "group_label": "W(A2)",
    "rep_label": "reflection",
    "real_dim": 2,
    "weyl_type": "A2",
    "principal_isotropy": "1",
    "kernel_label": "1",
    "history_template": {"coxeter_type": "A2"}
  }])json");
  const Catalog tiny2 = Catalog::from_json(tiny.to_json(true));
  REQUIRE(tiny2.entries().size() == 1);
  CHECK(tiny2.entries()[0].concrete);
  CHECK(tiny2.entries()[0].template_inline.has_value());
  const PolarRepDescriptor d =
      recognize(extract_history(build_root_system(CoxeterType(F::A, 2))), 2, tiny2);
  CHECK(d.factors[0].catalog_id == "coxeter/A2/reflection");
}

TEST_CASE("every entry recognizes its own template") {
  const auto& c = cat();
  for (const auto& e : c.entries()) {
    const std::optional<long> n =
        e.param.empty() ? std::optional<long>{} : std::optional<long>{4};
    const PolarRepDescriptor d =
        recognize(c.history_template(e, n), c.real_dim(e, n), c);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].catalog_id == e.id);
    CHECK(d.trivial_dim == 0);
  }
}
