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

#include "polar/history.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace polar {

using ordered_json = nlohmann::ordered_json;

const HistoryNode* HistoryLattice::find(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::string face_node_id(std::uint32_t mask, int rank) {
  if (mask == 0) return "H";
  if (mask == (1u << rank) - 1u) return "G";
  std::string s = "K";
  bool first = true;
  for (int j = 0; j < rank; ++j) {
    if (!((mask >> j) & 1u)) continue;
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Validation

int ValidatedHistory::index_of(const std::string& id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id)
    throw Error(ErrorKind::Internal, "unknown node id " + id);
  return static_cast<int>(it - ids_.begin());
}

const GroupRef& ValidatedHistory::ref_at(int idx) const {
  return lattice_.nodes[static_cast<size_t>(node_of_id_[static_cast<size_t>(idx)])].ref;
}

const PermGroup& ValidatedHistory::group_at(int idx) const {
  const GroupRef& r = ref_at(idx);
  if (r.kind != GroupRef::Kind::Concrete)
    throw Error(ErrorKind::Internal, "group_at on a symbolic node");
  return r.group;
}

int ValidatedHistory::node_at_coord(std::uint64_t mask) const {
  if (mask >= by_coord_.size())
    throw Error(ErrorKind::Internal, "coordinate out of range");
  return by_coord_[static_cast<size_t>(mask)];
}

ValidatedHistory validate(const HistoryLattice& l) {
  auto fail = [](const std::string& msg) -> void {
    throw RecognitionError(RecognitionStep::Lattice, msg);
  };
  if (l.nodes.empty()) fail("empty lattice");

  ValidatedHistory v;
  v.lattice_ = l;
  const size_t n = l.nodes.size();

  for (const auto& node : l.nodes) v.ids_.push_back(node.id);
  std::sort(v.ids_.begin(), v.ids_.end());
  if (std::adjacent_find(v.ids_.begin(), v.ids_.end()) != v.ids_.end())
    fail("duplicate node id");
  v.node_of_id_.resize(n);
  for (size_t k = 0; k < n; ++k) {
    const auto it = std::lower_bound(v.ids_.begin(), v.ids_.end(), l.nodes[k].id);
    v.node_of_id_[static_cast<size_t>(it - v.ids_.begin())] = static_cast<int>(k);
  }

  size_t n_concrete = 0;
  for (const auto& node : l.nodes)
    if (node.ref.kind == GroupRef::Kind::Concrete) ++n_concrete;
  if (n_concrete != 0 && n_concrete != n)
    fail("lattice mixes concrete and symbolic nodes");
  v.concrete_ = n_concrete == n;
  if (v.concrete_ && l.domain_size <= 0)
    fail("concrete lattice needs a positive domain_size");
  if (!v.concrete_ && l.domain_size != 0)
    fail("symbolic lattice must declare domain_size 0");
  if (v.concrete_)
    for (const auto& node : l.nodes)
      if (node.ref.group.domain_size() != l.domain_size)
        fail("node '" + node.id + "' lives outside the parent domain");

  // The order relation: recomputed from the groups for concrete lattices,
  // the reflexive-transitive closure of the declared edges otherwise.
  v.leq_.assign(n * n, 0);
  auto leq = [&](size_t i, size_t j) -> char& { return v.leq_[i * n + j]; };
  if (v.concrete_) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) {
          leq(i, j) = 1;
          continue;
        }
        leq(i, j) = v.group_at(static_cast<int>(i))
                        .is_subgroup_of(v.group_at(static_cast<int>(j)));
      }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (leq(i, j) && leq(j, i))
          fail("nodes '" + v.ids_[i] + "' and '" + v.ids_[j] +
               "' carry the same subgroup");
  } else {
    for (size_t i = 0; i < n; ++i) leq(i, i) = 1;
    for (const auto& [lo, hi] : l.edges) {
      if (!l.find(lo) || !l.find(hi)) fail("edge references unknown node");
      leq(static_cast<size_t>(v.index_of(lo)), static_cast<size_t>(v.index_of(hi))) = 1;
    }
    for (size_t k = 0; k < n; ++k)  // Floyd-Warshall closure
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (leq(i, k) && leq(k, j)) leq(i, j) = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (leq(i, j) && leq(j, i))
          fail("declared order has a cycle through '" + v.ids_[i] + "'");
  }

  // Every declared edge must be a true inclusion.
  for (const auto& [lo, hi] : l.edges) {
    if (!l.find(lo) || !l.find(hi)) fail("edge references unknown node");
    if (!leq(static_cast<size_t>(v.index_of(lo)), static_cast<size_t>(v.index_of(hi))))
      fail("claimed inclusion " + lo + " <= " + hi + " is false");
  }

  // Unique minimum and maximum.
  int min_idx = -1, max_idx = -1;
  for (size_t i = 0; i < n; ++i) {
    bool below_all = true, above_all = true;
    for (size_t j = 0; j < n; ++j) {
      below_all = below_all && leq(i, j);
      above_all = above_all && leq(j, i);
    }
    if (below_all) {
      if (min_idx >= 0) fail("two distinct minima");
      min_idx = static_cast<int>(i);
    }
    if (above_all) {
      if (max_idx >= 0) fail("two distinct maxima");
      max_idx = static_cast<int>(i);
    }
  }
  if (min_idx < 0) fail("no unique minimum (principal isotropy) in the lattice");
  if (max_idx < 0) fail("no unique maximum in the lattice");
  v.min_ = min_idx;
  v.max_ = max_idx;
  if (!l.min_id.empty() && v.ids_[static_cast<size_t>(min_idx)] != l.min_id)
    fail("declared min '" + l.min_id + "' is not the lattice minimum");
  if (!l.max_id.empty() && v.ids_[static_cast<size_t>(max_idx)] != l.max_id)
    fail("declared max '" + l.max_id + "' is not the lattice maximum");

  // Atoms: nodes covering the minimum.
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == min_idx) continue;
    bool covers = true;
    for (size_t k = 0; k < n; ++k) {
      if (k == i || static_cast<int>(k) == min_idx) continue;
      if (leq(k, i)) {
        covers = false;
        break;
      }
    }
    if (covers) v.atoms_.push_back(static_cast<int>(i));
  }
  const size_t n_atoms = v.atoms_.size();
  if (n_atoms >= 30) fail("too many atoms");
  if (n != (size_t{1} << n_atoms))
    fail("not a Boolean lattice: " + std::to_string(n) + " nodes for " +
         std::to_string(n_atoms) + " atoms");

  // Subset coordinates, and the order must match subset order exactly.
  v.coord_.assign(n, 0);
  v.by_coord_.assign(size_t{1} << n_atoms, -1);
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t mask = 0;
    for (size_t a = 0; a < n_atoms; ++a)
      if (leq(static_cast<size_t>(v.atoms_[a]), i)) mask |= (std::uint64_t{1} << a);
    v.coord_[i] = mask;
    if (v.by_coord_[static_cast<size_t>(mask)] >= 0)
      fail("not a Boolean lattice: two nodes share atom set " + std::to_string(mask));
    v.by_coord_[static_cast<size_t>(mask)] = static_cast<int>(i);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const bool subset = (v.coord_[i] & ~v.coord_[j]) == 0;
      if (subset != static_cast<bool>(leq(i, j)))
        fail("inclusion order does not match the Boolean subset order at '" +
             v.ids_[i] + "' vs '" + v.ids_[j] + "'");
    }
  return v;
}

// ---------------------------------------------------------------------------
// Extraction

HistoryLattice extract_history(const RootSystem& rs) {
  HistoryLattice l;
  l.domain_size = rs.domain_size;
  const int rank = rs.rank;
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask) {
    std::vector<Permutation> gens;
    for (int j = 0; j < rank; ++j)
      if ((mask >> j) & 1u) gens.push_back(rs.simple_perms[static_cast<size_t>(j)]);
    l.nodes.push_back(
        {face_node_id(mask, rank), GroupRef::concrete(PermGroup(rs.domain_size, gens))});
  }
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask)
    for (int j = 0; j < rank; ++j)
      if (!((mask >> j) & 1u))
        l.edges.push_back({face_node_id(mask, rank), face_node_id(mask | (1u << j), rank)});
  l.min_id = face_node_id(0, rank);
  l.max_id = face_node_id((1u << rank) - 1u, rank);
  return l;
}

// ---------------------------------------------------------------------------
// Section-wide data -> one chamber

namespace {

// DFS state for selecting a chamber's atoms out of section-wide data.
// `joins` mirrors the Boolean lattice of the current selection: entry s is
// the input-node index of <H u atoms in subset s>, in subset-mask order.
struct SectionSearch {
  const std::vector<PermGroup>& nodes;
  int h_idx;
  int max_idx;
  const std::vector<int>& candidates;

  std::vector<int> best;
  bool found = false;

  int find_node_equal(const PermGroup& g) const {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].order() == g.order() && g.is_subgroup_of(nodes[i]))
        return static_cast<int>(i);
    return -1;
  }

  // Extends the join table by one atom; fails if some join is not an input
  // node or collides with an existing one.
  bool try_extend(std::vector<int>& joins, int cand) const {
    const size_t old_sz = joins.size();
    for (size_t s = 0; s < old_sz; ++s) {
      std::vector<Permutation> gens = nodes[static_cast<size_t>(joins[s])].generators();
      for (const auto& g : nodes[static_cast<size_t>(cand)].generators())
        gens.push_back(g);
      const int found_idx = find_node_equal(PermGroup(nodes[0].domain_size(), gens));
      if (found_idx < 0) return false;
      for (int j : joins)
        if (j == found_idx) return false;
      joins.push_back(found_idx);
    }
    return true;
  }

  void dfs(size_t from, const std::vector<int>& joins, std::vector<int>& cur) {
    if (joins.back() == max_idx && (!found || cur.size() > best.size())) {
      best = cur;
      found = true;
    }
    for (size_t c = from; c < candidates.size(); ++c) {
      std::vector<int> ext = joins;
      if (!try_extend(ext, candidates[c])) continue;
      cur.push_back(candidates[c]);
      dfs(c + 1, ext, cur);
      cur.pop_back();
    }
  }
};

}  // namespace

HistoryLattice from_section_isotropies(int domain_size,
                                       const std::vector<PermGroup>& groups_in) {
  auto fail = [](const std::string& msg) -> void {
    throw RecognitionError(RecognitionStep::Lattice,
                           "no consistent chamber sub-collection: " + msg);
  };
  if (groups_in.empty()) fail("empty input");
  for (const auto& g : groups_in)
    if (g.domain_size() != domain_size)
      throw Error(ErrorKind::InvalidData, "section groups on mismatched domains");

  // Deterministic node list: sort by (order, generator images), dedup.
  std::vector<PermGroup> nodes = groups_in;
  std::sort(nodes.begin(), nodes.end(), [](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.generators() < b.generators();
  });
  {
    std::vector<PermGroup> dedup;
    for (auto& g : nodes) {
      bool dup = false;
      for (const auto& h : dedup)
        if (h.order() == g.order() && g.is_subgroup_of(h)) {
          dup = true;
          break;
        }
      if (!dup) dedup.push_back(std::move(g));
    }
    nodes = std::move(dedup);
  }

  const size_t n = nodes.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      leq[i][j] = (i == j) || nodes[i].is_subgroup_of(nodes[j]);

  // Global maximum must be unique (G is in every chamber's history).
  int max_idx = -1;
  for (size_t i = 0; i < n; ++i) {
    bool above_all = true;
    for (size_t j = 0; j < n; ++j) above_all = above_all && leq[j][i];
    if (above_all) max_idx = static_cast<int>(i);
  }
  if (max_idx < 0) fail("no unique maximal group in the section data");

  // H: the deterministically-first minimal element (all minima are
  // conjugate in valid inputs).
  int h_idx = -1;
  for (size_t i = 0; i < n && h_idx < 0; ++i) {
    bool minimal = true;
    for (size_t j = 0; j < n; ++j)
      if (j != i && leq[j][i]) minimal = false;
    if (minimal) h_idx = static_cast<int>(i);
  }

  // Candidate atoms: minimal proper supersets of H.
  std::vector<int> candidates;
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == h_idx || !leq[static_cast<size_t>(h_idx)][i]) continue;
    bool minimal_over_h = true;
    for (size_t k = 0; k < n; ++k) {
      if (static_cast<int>(k) == h_idx || k == i) continue;
      if (leq[static_cast<size_t>(h_idx)][k] && leq[k][i]) minimal_over_h = false;
    }
    if (minimal_over_h) candidates.push_back(static_cast<int>(i));
  }

  // DFS over candidate subsets, include-first in sorted order; keep the
  // first largest selection whose full join is the maximum.
  SectionSearch search{nodes, h_idx, max_idx, candidates, {}, false};
  std::vector<int> joins{h_idx};
  std::vector<int> cur;
  search.dfs(0, joins, cur);
  if (!search.found) fail("no atom selection joins up to the maximal group");
  const std::vector<int>& best_sel = search.best;

  // Build the chamber lattice from the winning selection.
  const int rank = static_cast<int>(best_sel.size());
  HistoryLattice l;
  l.domain_size = domain_size;
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask) {
    std::vector<Permutation> gens = nodes[static_cast<size_t>(h_idx)].generators();
    for (int j = 0; j < rank; ++j)
      if ((mask >> j) & 1u)
        for (const auto& g : nodes[static_cast<size_t>(best_sel[static_cast<size_t>(j)])]
                                 .generators())
          gens.push_back(g);
    PermGroup join(domain_size, gens);
    // replace by the input node equal to the join (same group, canonical gens)
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].order() == join.order() && join.is_subgroup_of(nodes[i])) {
        join = nodes[i];
        break;
      }
    l.nodes.push_back({face_node_id(mask, rank), GroupRef::concrete(std::move(join))});
  }
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask)
    for (int j = 0; j < rank; ++j)
      if (!((mask >> j) & 1u))
        l.edges.push_back({face_node_id(mask, rank), face_node_id(mask | (1u << j), rank)});
  l.min_id = face_node_id(0, rank);
  l.max_id = face_node_id((1u << rank) - 1u, rank);
  return l;
}

// ---------------------------------------------------------------------------
// Lattice isomorphism

namespace {

bool nodes_match(const ValidatedHistory& a, int ia, const ValidatedHistory& b, int ib) {
  const GroupRef& ra = a.ref_at(ia);
  const GroupRef& rb = b.ref_at(ib);
  if (ra.kind != rb.kind) return false;
  if (ra.kind == GroupRef::Kind::Symbolic) return ra.label == rb.label;
  return ra.group.order() == rb.group.order();
}

}  // namespace

bool lattices_isomorphic(const ValidatedHistory& a, const ValidatedHistory& b,
                         std::uint64_t conj_search_cap) {
  if (a.atom_count() != b.atom_count()) return false;
  const int n = a.atom_count();
  const bool both_concrete = a.concrete() && b.concrete();
  if (a.concrete() != b.concrete()) return false;

  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;

  auto apply_mask = [&](std::uint64_t mask) {
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) out |= (std::uint64_t{1} << perm[static_cast<size_t>(i)]);
    return out;
  };

  do {
    bool ok = true;
    for (std::uint64_t mask = 0; ok && mask < (std::uint64_t{1} << n); ++mask)
      ok = nodes_match(a, a.node_at_coord(mask), b, b.node_at_coord(apply_mask(mask)));
    if (!ok) continue;
    if (!both_concrete) return true;
    if (a.lattice().domain_size != b.lattice().domain_size) return true;

    // Same parent domain: require one ambient conjugation aligning every
    // node, searched over the group generated by both maxima (capped).
    std::vector<Permutation> ambient_gens = a.group_at(a.max_index()).generators();
    for (const auto& g : b.group_at(b.max_index()).generators())
      ambient_gens.push_back(g);
    PermGroup ambient(a.lattice().domain_size, ambient_gens);
    if (ambient.order() > conj_search_cap) return true;  // order-type fallback
    for (const auto& g : ambient.elements(conj_search_cap)) {
      bool all = true;
      for (std::uint64_t mask = 0; all && mask < (std::uint64_t{1} << n); ++mask) {
        const PermGroup conj =
            conjugate_subgroup(a.group_at(a.node_at_coord(mask)), g);
        all = conj.same_group_as(b.group_at(b.node_at_coord(apply_mask(mask))));
      }
      if (all) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

ordered_json perm_to_json(const Permutation& p) {
  ordered_json arr = ordered_json::array();
  for (int v : p.img) arr.push_back(v);
  return arr;
}

Permutation perm_from_json(const nlohmann::json& j, int expect_domain) {
  if (!j.is_array())
    throw Error(ErrorKind::InvalidData, "permutation must be an integer array");
  std::vector<int> img;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw Error(ErrorKind::InvalidData, "permutation entries must be integers");
    img.push_back(v.get<int>());
  }
  if (expect_domain >= 0 && static_cast<int>(img.size()) != expect_domain)
    throw Error(ErrorKind::InvalidData, "permutation has wrong domain size");
  return Permutation::from_images(std::move(img));
}

}  // namespace

std::string serialize_history(const HistoryLattice& l) {
  ordered_json j;
  j["domain_size"] = l.domain_size;
  std::vector<const HistoryNode*> nodes;
  for (const auto& n : l.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(),
            [](const HistoryNode* x, const HistoryNode* y) { return x->id < y->id; });
  ordered_json jnodes = ordered_json::array();
  for (const HistoryNode* n : nodes) {
    ordered_json jn;
    jn["id"] = n->id;
    if (n->ref.kind == GroupRef::Kind::Concrete) {
      jn["kind"] = "concrete";
      ordered_json gens = ordered_json::array();
      for (const auto& g : n->ref.group.generators()) gens.push_back(perm_to_json(g));
      jn["generators"] = gens;
    } else {
      jn["kind"] = "symbolic";
      jn["label"] = n->ref.label;
      if (n->ref.involution) jn["involution"] = perm_to_json(*n->ref.involution);
    }
    jnodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(jnodes);
  auto edges = l.edges;
  std::sort(edges.begin(), edges.end());
  ordered_json jedges = ordered_json::array();
  for (const auto& [lo, hi] : edges) jedges.push_back(ordered_json::array({lo, hi}));
  j["edges"] = std::move(jedges);
  j["min"] = l.min_id;
  j["max"] = l.max_id;
  if (l.weyl_model) {
    ordered_json wm;
    wm["domain_size"] = l.weyl_model->domain_size();
    ordered_json gens = ordered_json::array();
    for (const auto& g : l.weyl_model->generators()) gens.push_back(perm_to_json(g));
    wm["generators"] = gens;
    j["weyl_model"] = std::move(wm);
  }
  return j.dump(2);
}

HistoryLattice parse_history(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidData, std::string("history JSON parse error: ") + e.what());
  }
  try {
    HistoryLattice l;
    if (!j.is_object()) throw Error(ErrorKind::InvalidData, "history: not an object");
    l.domain_size = j.at("domain_size").get<int>();
    if (l.domain_size < 0)
      throw Error(ErrorKind::InvalidData, "history: negative domain_size");
    for (const auto& jn : j.at("nodes")) {
      HistoryNode n;
      n.id = jn.at("id").get<std::string>();
      const std::string kind = jn.at("kind").get<std::string>();
      if (kind == "concrete") {
        std::vector<Permutation> gens;
        for (const auto& jg : jn.at("generators"))
          gens.push_back(perm_from_json(jg, l.domain_size));
        n.ref = GroupRef::concrete(PermGroup(l.domain_size, std::move(gens)));
      } else if (kind == "symbolic") {
        std::optional<Permutation> inv;
        if (jn.contains("involution")) inv = perm_from_json(jn.at("involution"), -1);
        n.ref = GroupRef::symbolic(jn.at("label").get<std::string>(), std::move(inv));
      } else {
        throw Error(ErrorKind::InvalidData, "history: unknown node kind '" + kind + "'");
      }
      l.nodes.push_back(std::move(n));
    }
    for (const auto& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2)
        throw Error(ErrorKind::InvalidData, "history: edge must be [lower, upper]");
      l.edges.push_back({je[0].get<std::string>(), je[1].get<std::string>()});
    }
    l.min_id = j.at("min").get<std::string>();
    l.max_id = j.at("max").get<std::string>();
    if (j.contains("weyl_model")) {
      const auto& wm = j.at("weyl_model");
      const int dom = wm.at("domain_size").get<int>();
      std::vector<Permutation> gens;
      for (const auto& jg : wm.at("generators")) gens.push_back(perm_from_json(jg, dom));
      l.weyl_model = PermGroup(dom, std::move(gens));
    }
    return l;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidData, std::string("history JSON schema error: ") + e.what());
  }
}

}  // namespace polar
