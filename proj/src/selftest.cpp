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

#include "polar/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "polar/reconstruct.hpp"
#include "polar/recognition.hpp"

namespace polar {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<CoxeterType> acceptance_irreducibles() {
  using F = CoxeterFamily;
  std::vector<CoxeterType> v;
  for (int r = 1; r <= 4; ++r) v.push_back(CoxeterType(F::A, r));
  for (int r = 2; r <= 4; ++r) v.push_back(CoxeterType(F::B, r));
  v.push_back(CoxeterType(F::D, 4));
  v.push_back(CoxeterType(F::F, 4));
  v.push_back(CoxeterType(F::H, 3));
  v.push_back(CoxeterType(F::H, 4));
  for (int m = 3; m <= 8; ++m) v.push_back(CoxeterType(F::I2, 2, m));
  return v;
}

std::string reflection_id(const CoxeterType& t) {
  return "coxeter/" + t.label() + "/reflection";
}

// One extract -> recognize round trip; returns an error description or "".
std::string round_trip_case(const std::vector<CoxeterType>& types, int padding,
                            const Catalog& catalog) {
  RootSystem rs = product_root_system(types);
  int total_rank = 0;
  for (const auto& t : types) total_rank += t.rank;
  const HistoryLattice hist = extract_history(rs);
  PolarRepDescriptor desc;
  try {
    desc = recognize(hist, total_rank + padding, catalog);
  } catch (const Error& e) {
    return product_label(types) + ": " + e.what();
  }
  if (desc.trivial_dim != padding)
    return product_label(types) + ": trivial_dim " + std::to_string(desc.trivial_dim) +
           " != padding " + std::to_string(padding);
  std::multiset<std::string> want, got;
  for (const auto& t : types) want.insert(reflection_id(t));
  for (const auto& f : desc.factors) got.insert(f.catalog_id);
  if (want != got) return product_label(types) + ": factor multiset mismatch";
  return "";
}

CriterionResult criterion_round_trip(std::uint64_t seed, const Catalog& catalog) {
  CriterionResult r{1, "round-trip-identity", true, ""};
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0;
  std::string first_error;

  for (const auto& t : acceptance_irreducibles())
    for (int padding : {0, 1, 5}) {
      const std::string err = round_trip_case({t}, padding, catalog);
      ++cases;
      if (!err.empty() && first_error.empty()) first_error = err;
    }

  // 100 seeded random products of total rank <= 6, paddings cycling 0,1,5.
  using F = CoxeterFamily;
  const std::vector<CoxeterType> pool = {
      CoxeterType(F::A, 1), CoxeterType(F::A, 2), CoxeterType(F::A, 3),
      CoxeterType(F::A, 4), CoxeterType(F::B, 2), CoxeterType(F::B, 3),
      CoxeterType(F::B, 4), CoxeterType(F::D, 4), CoxeterType(F::F, 4),
      CoxeterType(F::H, 3), CoxeterType(F::H, 4), CoxeterType(F::I2, 2, 5),
      CoxeterType(F::I2, 2, 6), CoxeterType(F::I2, 2, 7), CoxeterType(F::I2, 2, 8)};
  std::mt19937_64 rng(seed);
  const int paddings[3] = {0, 1, 5};
  for (int i = 0; i < 100; ++i) {
    std::vector<CoxeterType> types;
    int remaining = 6;
    while (remaining >= 1) {
      std::vector<CoxeterType> fits;
      for (const auto& t : pool)
        if (t.rank <= remaining) fits.push_back(t);
      if (fits.empty()) break;
      types.push_back(fits[rng() % fits.size()]);
      remaining -= types.back().rank;
      if (rng() % 4 == 0) break;
    }
    if (types.empty()) types.push_back(pool[0]);
    const std::string err = round_trip_case(types, paddings[i % 3], catalog);
    ++cases;
    if (!err.empty() && first_error.empty()) first_error = err;
  }

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  const bool within_budget = ms < 120000;
  r.pass = first_error.empty() && within_budget;
  r.detail = std::to_string(cases) + " cases, exact factor-multiset equality, " +
             (within_budget ? "within the 2-minute budget" : "OVER the 2-minute budget");
  if (!first_error.empty()) r.detail += "; first failure: " + first_error;
  return r;
}

CriterionResult criterion_weyl_orders() {
  CriterionResult r{2, "weyl-order-oracle", true, ""};
  auto types = acceptance_irreducibles();
  types.push_back(CoxeterType(CoxeterFamily::E, 6));
  int checked = 0, enumerated = 0;
  for (const auto& t : types) {
    RootSystem rs = build_root_system(t);
    PermGroup w = weyl_as_perm_group(rs);
    if (w.order() != t.weyl_order()) {
      r.pass = false;
      r.detail = t.label() + ": chain order " + std::to_string(w.order()) +
                 " != " + std::to_string(t.weyl_order());
      return r;
    }
    ++checked;
    if (t.weyl_order() <= 5000) {
      if (w.elements(5000).size() != t.weyl_order()) {
        r.pass = false;
        r.detail = t.label() + ": naive enumeration disagrees with the chain";
        return r;
      }
      ++enumerated;
    }
  }
  r.detail = std::to_string(checked) + " types exact; " +
             std::to_string(enumerated) + " cross-checked by naive enumeration";
  return r;
}

CriterionResult criterion_reflection_uniqueness() {
  CriterionResult r{3, "reflection-uniqueness", true, ""};
  int atoms_checked = 0;
  for (const auto& t : acceptance_irreducibles()) {
    const ValidatedHistory vh = validate(extract_history(build_root_system(t)));
    for (int atom : vh.atoms()) {
      try {
        (void)atom_reflection(vh, vh.ids()[static_cast<size_t>(atom)]);
        ++atoms_checked;
      } catch (const Error& e) {
        r.pass = false;
        r.detail = t.label() + ": " + e.what();
        return r;
      }
    }
  }
  // A fabricated lattice whose single atom has N_K(H)/H = S3 must be
  // rejected with the reflection-uniqueness diagnostic.
  HistoryLattice bad;
  bad.domain_size = 3;
  bad.nodes.push_back({"H", GroupRef::concrete(PermGroup::trivial(3))});
  bad.nodes.push_back(
      {"G", GroupRef::concrete(PermGroup(
                3, {Permutation::from_cycles(3, {{0, 1}}),
                    Permutation::from_cycles(3, {{0, 1, 2}})}))});
  bad.edges = {{"H", "G"}};
  bad.min_id = "H";
  bad.max_id = "G";
  bool rejected = false;
  try {
    (void)weyl_from_history(validate(bad));
  } catch (const RecognitionError& e) {
    rejected = e.step() == RecognitionStep::ReflectionUniqueness;
  }
  if (!rejected) {
    r.pass = false;
    r.detail = "S3 atom-quotient lattice was not rejected with the "
               "reflection-uniqueness diagnostic";
    return r;
  }
  r.detail = std::to_string(atoms_checked) +
             " atoms have a unique involution; S3 fixture rejected";
  return r;
}

CriterionResult criterion_minimal_node_law() {
  CriterionResult r{4, "minimal-node-law", true, ""};
  int components = 0;
  for (const auto& t : acceptance_irreducibles()) {
    const ValidatedHistory vh = validate(extract_history(build_root_system(t)));
    const WeylData w = weyl_from_history(vh);
    for (size_t ci = 0; ci < w.components.size(); ++ci) {
      std::uint64_t mask = 0;
      for (int a : w.components[ci].nodes) mask |= (std::uint64_t{1} << a);
      const std::uint64_t full = (std::uint64_t{1} << vh.atom_count()) - 1;
      const std::string expect =
          vh.ids()[static_cast<size_t>(vh.node_at_coord(full & ~mask))];
      std::string got;
      try {
        got = factor_isotropy(vh, w, static_cast<int>(ci));
      } catch (const Error& e) {
        r.pass = false;
        r.detail = t.label() + ": " + e.what();
        return r;
      }
      if (got != expect) {
        r.pass = false;
        r.detail = t.label() + ": containment search gave '" + got +
                   "', complement is '" + expect + "'";
        return r;
      }
      ++components;
    }
  }
  r.detail = std::to_string(components) +
             " components: containment search equals the complement node";
  return r;
}

CriterionResult criterion_effectivization(const Catalog& catalog) {
  CriterionResult r{5, "effectivization", true, ""};
  RootSystem a2 = build_root_system(CoxeterType(CoxeterFamily::A, 2));
  PermGroup wa2 = weyl_as_perm_group(a2);
  PermGroup c2(2, {Permutation::from_cycles(2, {{0, 1}})});
  PermGroup g = direct_product(wa2, c2);
  const int dom = g.domain_size();

  auto embed_left = [&](const Permutation& p) {
    std::vector<int> img(static_cast<size_t>(dom));
    for (int i = 0; i < dom; ++i) img[static_cast<size_t>(i)] = i;
    for (int i = 0; i < wa2.domain_size(); ++i) img[static_cast<size_t>(i)] = p(i);
    return Permutation::from_images(std::move(img));
  };
  const Permutation c = Permutation::from_cycles(dom, {{6, 7}});
  const Permutation r0 = embed_left(a2.simple_perms[0]);
  const Permutation r1 = embed_left(a2.simple_perms[1]);

  HistoryLattice l;
  l.domain_size = dom;
  l.nodes.push_back({"H", GroupRef::concrete(PermGroup(dom, {c}))});
  l.nodes.push_back({"K0", GroupRef::concrete(PermGroup(dom, {r0, c}))});
  l.nodes.push_back({"K1", GroupRef::concrete(PermGroup(dom, {r1, c}))});
  l.nodes.push_back({"G", GroupRef::concrete(g)});
  l.edges = {{"H", "K0"}, {"H", "K1"}, {"K0", "G"}, {"K1", "G"}};
  l.min_id = "H";
  l.max_id = "G";

  try {
    const ValidatedHistory vh = validate(l);
    const Effectivization eff = effectivize(vh, "H");
    const PolarRepDescriptor desc = recognize(l, 2, catalog);
    const bool ok = eff.kernel.order() == 2 && eff.effective.group.order() == 6 &&
                    desc.factors.size() == 1 &&
                    desc.factors[0].kernel_order == std::uint64_t{2} &&
                    desc.factors[0].catalog_id == "coxeter/A2/reflection" &&
                    desc.trivial_dim == 0;
    if (!ok) {
      r.pass = false;
      r.detail = "kernel order " + std::to_string(eff.kernel.order()) +
                 ", effective order " + std::to_string(eff.effective.group.order());
      return r;
    }
  } catch (const Error& e) {
    r.pass = false;
    r.detail = e.what();
    return r;
  }
  r.detail = "W(A2)xC2 with trivial C2 action: kernel order 2, effective order 6";
  return r;
}

CriterionResult criterion_counterexample(const Catalog& catalog) {
  CriterionResult r{6, "counterexample-discrimination", true, ""};
  const CatalogEntry* e1 = catalog.find("lie/sun-u1/twisted");
  const CatalogEntry* e2 = catalog.find("lie/sun-u1/product");
  if (!e1 || !e2) {
    r.pass = false;
    r.detail = "counterexample entries missing from the catalog";
    return r;
  }
  try {
    const long n = 3;
    const HistoryLattice h1 = catalog.history_template(*e1, n);
    const HistoryLattice h2 = catalog.history_template(*e2, n);
    const ValidatedHistory v1 = validate(h1);
    const ValidatedHistory v2 = validate(h2);

    const std::string g1 = v1.ref_at(v1.max_index()).label;
    const std::string g2 = v2.ref_at(v2.max_index()).label;
    const std::string i1 = v1.ref_at(v1.min_index()).label;
    const std::string i2 = v2.ref_at(v2.min_index()).label;
    const int d1 = catalog.real_dim(*e1, n);
    const int d2 = catalog.real_dim(*e2, n);

    bool ok = g1 == g2 && i1 == i2 && d1 == 8 && d2 == 8;
    ok = ok && !lattices_isomorphic(v1, v2);
    const PolarRepDescriptor r1 = recognize(h1, 8, catalog);
    const PolarRepDescriptor r2 = recognize(h2, 8, catalog);
    ok = ok && r1.factors.size() == 1 && r1.factors[0].catalog_id == e1->id;
    ok = ok && r2.factors.size() == 1 && r2.factors[0].catalog_id == e2->id;
    if (!ok) {
      r.pass = false;
      r.detail = "labels/dimensions/templates/recognition did not discriminate";
      return r;
    }
  } catch (const Error& e) {
    r.pass = false;
    r.detail = e.what();
    return r;
  }
  r.detail = "equal group/isotropy labels and dim 8 at n=3; non-isomorphic "
             "histories; each recognized as itself";
  return r;
}

CriterionResult criterion_reconstruction() {
  CriterionResult r{7, "quotient-reconstruction", true, ""};
  struct Case {
    CoxeterType t;
    std::vector<int> fibers;
  };
  const std::vector<Case> cases = {
      {CoxeterType(CoxeterFamily::A, 2), {6, 3, 3, 1}},
      {CoxeterType(CoxeterFamily::B, 2), {8, 4, 4, 1}},
  };
  for (const auto& c : cases) {
    RootSystem rs = build_root_system(c.t);
    const ValidatedHistory vh = validate(extract_history(rs));
    const PermGroup& g = vh.group_at(vh.max_index());
    ChamberComplex cc{vh.atom_count(), 1};
    const auto stabs = stabilizers_from_history(vh);
    QuotientModel q;
    try {
      q = build_quotient(g, cc, stabs);
    } catch (const Error& e) {
      r.pass = false;
      r.detail = c.t.label() + ": " + e.what();
      return r;
    }
    for (int f = 0; f < cc.face_count(); ++f)
      if (q.fiber_size(f) != c.fibers[static_cast<size_t>(f)]) {
        r.pass = false;
        r.detail = c.t.label() + ": fiber " + std::to_string(f) + " has size " +
                   std::to_string(q.fiber_size(f)) + ", expected " +
                   std::to_string(c.fibers[static_cast<size_t>(f)]);
        return r;
      }
    const EquivarianceReport rep = verify_equivariance(q, g, cc, stabs);
    if (!rep.all_pass) {
      r.pass = false;
      r.detail = c.t.label() + ": equivariance checks failed";
      return r;
    }
    // Injected fault: an action edge from one face's orbit into another's.
    QuotientModel corrupted = q;
    corrupted.action[0][static_cast<size_t>(corrupted.base_class[1])] =
        corrupted.base_class[2];
    const EquivarianceReport bad = verify_equivariance(corrupted, g, cc, stabs);
    if (bad.lines.size() < 3 || bad.lines[2].pass) {
      r.pass = false;
      r.detail = c.t.label() + ": injected fault not caught by the disjointness check";
      return r;
    }
  }
  r.detail = "W(A2) fibers (6,3,3,1), W(B2) fibers (8,4,4,1); equivariance "
             "verified; injected fault fails the disjointness check";
  return r;
}

std::string run_core_json(std::uint64_t seed) {
  SelftestOptions opt;
  opt.seed = seed;
  opt.core_only = true;
  return run_selftest(opt).to_json();
}

CriterionResult criterion_determinism(const SelftestOptions& opt) {
  CriterionResult r{8, "selftest-determinism", true, ""};
  if (!opt.self_exe.empty()) {
    const std::string base = "/tmp/polarrec-selftest-" + std::to_string(::getpid());
    const std::string f1 = base + "-1.json", f2 = base + "-2.json";
    const std::string cmd = "\"" + opt.self_exe + "\" selftest --core-only --json --seed " +
                            std::to_string(opt.seed);
    const int rc1 = std::system((cmd + " > " + f1 + " 2>/dev/null").c_str());
    const int rc2 = std::system((cmd + " > " + f2 + " 2>/dev/null").c_str());
    std::ifstream in1(f1), in2(f2);
    std::stringstream s1, s2;
    s1 << in1.rdbuf();
    s2 << in2.rdbuf();
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    r.pass = rc1 == 0 && rc2 == 0 && s1.str() == s2.str() && !s1.str().empty();
    r.detail = r.pass ? "two CLI selftest runs are byte-identical"
                      : "CLI selftest runs differ or failed";
  } else {
    const std::string a = run_core_json(opt.seed);
    const std::string b = run_core_json(opt.seed);
    r.pass = a == b;
    r.detail = r.pass ? "two in-process core runs are byte-identical"
                      : "in-process core runs differ";
  }
  return r;
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& opt) {
  const Catalog catalog = Catalog::builtin();
  SelftestReport rep;
  rep.criteria.push_back(criterion_round_trip(opt.seed, catalog));
  rep.criteria.push_back(criterion_weyl_orders());
  rep.criteria.push_back(criterion_reflection_uniqueness());
  rep.criteria.push_back(criterion_minimal_node_law());
  rep.criteria.push_back(criterion_effectivization(catalog));
  rep.criteria.push_back(criterion_counterexample(catalog));
  rep.criteria.push_back(criterion_reconstruction());
  if (!opt.core_only) rep.criteria.push_back(criterion_determinism(opt));
  for (const auto& c : rep.criteria) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

std::string SelftestReport::to_json() const {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const auto& c : criteria) {
    ordered_json jc;
    jc["index"] = c.index;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["detail"] = c.detail;
    arr.push_back(std::move(jc));
  }
  j["criteria"] = std::move(arr);
  j["all_pass"] = all_pass;
  return j.dump(2);
}

std::string SelftestReport::to_text() const {
  std::string out;
  for (const auto& c : criteria) {
    out += "criterion " + std::to_string(c.index) + " [" + c.name + "]: " +
           (c.pass ? "PASS" : "FAIL");
    if (!c.detail.empty()) out += " - " + c.detail;
    out += "\n";
  }
  out += all_pass ? "all criteria passed\n" : "SOME CRITERIA FAILED\n";
  return out;
}

}  // namespace polar
