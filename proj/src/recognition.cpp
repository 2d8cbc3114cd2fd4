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

#include "polar/recognition.hpp"

#include "polar/limits.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace polar {

using ordered_json = nlohmann::ordered_json;

namespace {

std::uint64_t search_cap() { return limits().search_cap; }
std::uint64_t enum_cap() { return limits().enum_cap; }

struct ReflectionContext {
  PermGroup ng;  // N_G(H)
  Quotient q;    // N_G(H)/H
};

ReflectionContext make_context(const ValidatedHistory& l) {
  const PermGroup& G = l.group_at(l.max_index());
  const PermGroup& H = l.group_at(l.min_index());
  ReflectionContext ctx;
  if (H.is_trivial()) {
    ctx.ng = G;
    ctx.q = quotient(G, H);  // identity projection
    return ctx;
  }
  ctx.ng = is_normal_in(H, G) ? G : normalizer(G, H, search_cap());
  ctx.q = quotient(ctx.ng, H);
  return ctx;
}

// Returns the unique involution of N_{K}(H)/H as (element of the N(H)/H
// model, lift into the parent domain).
std::pair<Permutation, Permutation> atom_reflection_in(
    const ValidatedHistory& l, const ReflectionContext& ctx, int atom_idx) {
  const PermGroup& H = l.group_at(l.min_index());
  const PermGroup& K = l.group_at(atom_idx);
  const PermGroup nk = normalizer(K, H, search_cap());
  std::vector<Permutation> image_gens;
  for (const auto& g : nk.generators()) image_gens.push_back(ctx.q.project(g));
  const PermGroup image(ctx.q.group.domain_size(), image_gens);
  const auto invs = involutions(image, enum_cap());
  if (invs.size() != 1)
    throw RecognitionError(
        RecognitionStep::ReflectionUniqueness,
        "no unique involution in N_K(H)/H at atom '" +
            l.ids()[static_cast<size_t>(atom_idx)] + "': found " +
            std::to_string(invs.size()));
  // deterministic lift: first element of N_K(H) projecting onto it
  for (const auto& x : nk.elements(search_cap()))
    if (ctx.q.project(x) == invs[0]) return {invs[0], x};
  throw Error(ErrorKind::Internal, "involution has no preimage in N_K(H)");
}

std::pair<Permutation, Permutation> atom_reflection_symbolic(
    const ValidatedHistory& l, int atom_idx) {
  if (!l.lattice().weyl_model)
    throw RecognitionError(RecognitionStep::ReflectionUniqueness,
                           "symbolic history carries no weyl_model");
  const GroupRef& ref = l.ref_at(atom_idx);
  if (!ref.involution)
    throw RecognitionError(RecognitionStep::ReflectionUniqueness,
                           "symbolic atom '" + l.ids()[static_cast<size_t>(atom_idx)] +
                               "' carries no involution");
  const Permutation& r = *ref.involution;
  if (r.degree() != l.lattice().weyl_model->domain_size() || r.order() != 2 ||
      !l.lattice().weyl_model->contains(r))
    throw RecognitionError(RecognitionStep::ReflectionUniqueness,
                           "attached element at atom '" +
                               l.ids()[static_cast<size_t>(atom_idx)] +
                               "' is not an involution of the weyl_model");
  return {r, r};
}

}  // namespace

Permutation atom_reflection(const ValidatedHistory& l, const std::string& atom_id) {
  const int idx = l.index_of(atom_id);
  const auto& atoms = l.atoms();
  if (std::find(atoms.begin(), atoms.end(), idx) == atoms.end())
    throw RecognitionError(RecognitionStep::ReflectionUniqueness,
                           "node '" + atom_id + "' is not next-to-minimal");
  if (!l.concrete()) return atom_reflection_symbolic(l, idx).first;
  const ReflectionContext ctx = make_context(l);
  return atom_reflection_in(l, ctx, idx).first;
}

WeylData weyl_from_history(const ValidatedHistory& l) {
  WeylData w;
  w.concrete = l.concrete();
  if (w.concrete) {
    ReflectionContext ctx = make_context(l);
    for (int atom : l.atoms()) {
      auto [r, lift] = atom_reflection_in(l, ctx, atom);
      w.atom_reflections.push_back(std::move(r));
      w.atom_lifts.push_back(std::move(lift));
    }
    w.model = PermGroup(ctx.q.group.domain_size(), w.atom_reflections);
    w.ng = std::move(ctx.ng);
    w.nh_quotient = std::move(ctx.q);
  } else {
    for (int atom : l.atoms()) {
      auto [r, lift] = atom_reflection_symbolic(l, atom);
      w.atom_reflections.push_back(std::move(r));
      w.atom_lifts.push_back(std::move(lift));
    }
    w.model = PermGroup(l.lattice().weyl_model->domain_size(), w.atom_reflections);
  }
  try {
    w.diagram = coxeter_matrix(w.atom_reflections);
  } catch (const Error& e) {
    throw RecognitionError(RecognitionStep::Diagram, e.what());
  }
  w.components = classify(w.diagram);
  return w;
}

std::string factor_isotropy(const ValidatedHistory& l, const WeylData& w,
                            int component_index) {
  if (component_index < 0 ||
      component_index >= static_cast<int>(w.components.size()))
    throw Error(ErrorKind::Internal, "component index out of range");
  const auto& comp = w.components[static_cast<size_t>(component_index)];

  std::uint64_t comp_mask = 0;
  for (int a : comp.nodes) comp_mask |= (std::uint64_t{1} << a);
  const std::uint64_t full = (std::uint64_t{1} << l.atom_count()) - 1;
  const std::uint64_t complement = full & ~comp_mask;
  const int complement_node = l.node_at_coord(complement);

  if (!l.concrete())
    return l.ids()[static_cast<size_t>(complement_node)];

  // W_{Sigma_i}.H is the subgroup of N(H) generated by H together with
  // lifts of the off-component reflections; node containment is decided on
  // those generators.
  std::vector<Permutation> preimage_gens =
      l.group_at(l.min_index()).generators();
  for (size_t j = 0; j < w.atom_lifts.size(); ++j)
    if (!((comp_mask >> j) & 1u)) preimage_gens.push_back(w.atom_lifts[j]);

  std::vector<int> satisfying;
  for (int idx = 0; idx < l.node_count(); ++idx) {
    const PermGroup& cand = l.group_at(idx);
    bool contains_all = true;
    for (const auto& g : preimage_gens)
      if (!cand.contains(g)) {
        contains_all = false;
        break;
      }
    if (contains_all) satisfying.push_back(idx);
  }
  if (satisfying.empty())
    throw RecognitionError(RecognitionStep::Containment,
                           "no history node contains W_Sigma_i.H for component " +
                               std::to_string(component_index));
  std::vector<int> minimal;
  for (int x : satisfying) {
    bool is_min = true;
    for (int y : satisfying)
      if (y != x && l.leq(y, x)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(x);
  }
  if (minimal.size() != 1)
    throw RecognitionError(
        RecognitionStep::Containment,
        "minimal node containing W_Sigma_i.H is not unique for component " +
            std::to_string(component_index));
  if (minimal[0] != complement_node)
    throw RecognitionError(
        RecognitionStep::Containment,
        "minimal containing node '" + l.ids()[static_cast<size_t>(minimal[0])] +
            "' differs from the complement-coordinate node '" +
            l.ids()[static_cast<size_t>(complement_node)] + "'");
  return l.ids()[static_cast<size_t>(minimal[0])];
}

Effectivization effectivize(const ValidatedHistory& l, const std::string& node_id) {
  if (!l.concrete())
    throw Error(ErrorKind::Internal, "effectivize needs a concrete lattice");
  const PermGroup& G = l.group_at(l.max_index());
  const PermGroup& K = l.group_at(l.index_of(node_id));
  Effectivization e;
  e.kernel = core(G, K, search_cap());
  e.effective = quotient(G, e.kernel);
  return e;
}

namespace {

PolarRepDescriptor recognize_concrete(const ValidatedHistory& vh, int dim,
                                      const Catalog& catalog, const WeylData& w) {
  PolarRepDescriptor d;
  d.total_dim = dim;
  int used = 0;
  const PermGroup& G = vh.group_at(vh.max_index());
  for (size_t ci = 0; ci < w.components.size(); ++ci) {
    const auto& comp = w.components[ci];
    FactorDescriptor f;
    f.atoms = comp.nodes;
    f.weyl_type = comp.type.label();
    f.isotropy_node = factor_isotropy(vh, w, static_cast<int>(ci));

    Effectivization eff = effectivize(vh, f.isotropy_node);
    f.kernel_order = eff.kernel.order();
    f.effective_group = "permutation group of order " +
                        std::to_string(eff.effective.group.order());

    const GroupSignature eff_sig =
        signature_of_quotient(G, eff.kernel, &eff.effective.group, enum_cap());
    // principal isotropy of the effectivized factor: K_{I_i} / kernel
    const PermGroup& K = vh.group_at(vh.index_of(f.isotropy_node));
    Quotient iso_model = quotient(K, eff.kernel);
    const GroupSignature iso_sig =
        signature_of_quotient(K, eff.kernel, &iso_model.group, enum_cap());

    const CatalogEntry* entry = catalog.lookup_concrete(
        comp.type, eff_sig, eff.effective.group, iso_sig, enum_cap());
    f.catalog_id = entry->id;
    f.factor_dim = catalog.real_dim(*entry);
    used += f.factor_dim;
    d.factors.push_back(std::move(f));
  }
  if (used > dim)
    throw RecognitionError(
        RecognitionStep::Dimension,
        "dimension too small for this history: factors need " +
            std::to_string(used) + ", got " + std::to_string(dim));
  d.trivial_dim = dim - used;
  return d;
}

PolarRepDescriptor recognize_symbolic(const ValidatedHistory& vh, int dim,
                                      const Catalog& catalog, const WeylData& w) {
  std::vector<CoxeterType> type_multiset;
  for (const auto& c : w.components) type_multiset.push_back(c.type);

  const std::string& group_label = vh.ref_at(vh.max_index()).label;
  const std::string& iso_label = vh.ref_at(vh.min_index()).label;
  SymbolicMatch m =
      catalog.lookup_symbolic(group_label, type_multiset, iso_label, vh);

  PolarRepDescriptor d;
  d.total_dim = dim;
  FactorDescriptor f;
  for (int a = 0; a < vh.atom_count(); ++a) f.atoms.push_back(a);
  std::vector<CoxeterType> sorted_types = type_multiset;
  std::sort(sorted_types.begin(), sorted_types.end());
  f.weyl_type = product_label(sorted_types);
  f.catalog_id = m.entry->id;
  f.factor_dim = m.real_dim;
  f.isotropy_node = vh.ids()[static_cast<size_t>(vh.min_index())];
  f.kernel_label = m.kernel_label;
  f.effective_group = m.group_label;
  if (f.factor_dim > dim)
    throw RecognitionError(
        RecognitionStep::Dimension,
        "dimension too small for this history: factors need " +
            std::to_string(f.factor_dim) + ", got " + std::to_string(dim));
  d.trivial_dim = dim - f.factor_dim;
  d.factors.push_back(std::move(f));
  return d;
}

}  // namespace

PolarRepDescriptor recognize(const HistoryLattice& l, int dim, const Catalog& catalog) {
  if (dim < 0)
    throw RecognitionError(RecognitionStep::Dimension, "negative dimension");
  const ValidatedHistory vh = validate(l);
  const WeylData w = weyl_from_history(vh);
  return vh.concrete() ? recognize_concrete(vh, dim, catalog, w)
                       : recognize_symbolic(vh, dim, catalog, w);
}

std::string descriptor_json(const PolarRepDescriptor& d) {
  ordered_json j;
  j["total_dim"] = d.total_dim;
  j["trivial_dim"] = d.trivial_dim;
  ordered_json factors = ordered_json::array();
  for (const auto& f : d.factors) {
    ordered_json jf;
    jf["weyl_type"] = f.weyl_type;
    jf["catalog_id"] = f.catalog_id;
    jf["factor_dim"] = f.factor_dim;
    jf["isotropy_node"] = f.isotropy_node;
    if (f.kernel_order) jf["kernel_order"] = *f.kernel_order;
    if (f.kernel_label) jf["kernel_label"] = *f.kernel_label;
    factors.push_back(std::move(jf));
  }
  j["factors"] = std::move(factors);
  return j.dump(2);
}

}  // namespace polar
