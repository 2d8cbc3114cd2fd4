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

#include "polar/reconstruct.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace polar {

using ordered_json = nlohmann::ordered_json;

int QuotientModel::fiber_size(int sample) const {
  int n = 0;
  for (const auto& c : classes) n += (c.sample == sample);
  return n;
}

std::vector<PermGroup> stabilizers_from_history(const ValidatedHistory& vh) {
  if (!vh.concrete())
    throw Error(ErrorKind::InvalidData,
                "chamber reconstruction needs a concrete history");
  std::vector<PermGroup> stabs;
  stabs.reserve(size_t{1} << vh.atom_count());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vh.atom_count()); ++mask)
    stabs.push_back(vh.group_at(vh.node_at_coord(mask)));
  return stabs;
}

QuotientModel build_quotient(const PermGroup& G, const ChamberComplex& cc,
                             const std::vector<PermGroup>& face_stabilizers,
                             std::uint64_t pair_check_cap) {
  if (static_cast<int>(face_stabilizers.size()) != cc.face_count())
    throw Error(ErrorKind::InvalidData, "one stabilizer per face required");
  for (int f = 0; f < cc.face_count(); ++f) {
    if (!face_stabilizers[static_cast<size_t>(f)].is_subgroup_of(G))
      throw Error(ErrorKind::InvalidData,
                  "face stabilizer " + std::to_string(f) + " is not a subgroup of G");
    for (int g = 0; g < cc.face_count(); ++g)
      if ((f & g) == f && g != f &&
          !face_stabilizers[static_cast<size_t>(f)].is_subgroup_of(
              face_stabilizers[static_cast<size_t>(g)]))
        throw Error(ErrorKind::InvalidData,
                    "stabilizers are not monotone along face inclusion (" +
                        std::to_string(f) + " vs " + std::to_string(g) + ")");
  }

  QuotientModel q;
  // Per face: enumerate the cosets of G_c once; classes of a sample on that
  // face are indexed by coset.
  struct FaceCosets {
    std::shared_ptr<const StabChain> chain;
    std::vector<Permutation> reps;
  };
  std::vector<FaceCosets> cosets(static_cast<size_t>(cc.face_count()));
  for (int f = 0; f < cc.face_count(); ++f) {
    FaceCosets& fc = cosets[static_cast<size_t>(f)];
    const PermGroup& stab = face_stabilizers[static_cast<size_t>(f)];
    fc.chain = std::make_shared<const StabChain>(
        build_stab_chain(G.domain_size(), stab.generators()));
    std::vector<Permutation> reps;
    reps.push_back(canonical_coset_rep(Permutation::identity(G.domain_size()), *fc.chain));
    std::set<Permutation> seen(reps.begin(), reps.end());
    for (size_t i = 0; i < reps.size(); ++i)
      for (const auto& g : G.generators()) {
        Permutation moved = canonical_coset_rep(g.compose(reps[i]), *fc.chain);
        if (seen.insert(moved).second) reps.push_back(std::move(moved));
      }
    fc.reps = std::move(reps);
  }

  std::vector<std::vector<int>> class_of;  // sample -> coset -> class id
  class_of.resize(static_cast<size_t>(cc.sample_count()));
  for (int s = 0; s < cc.sample_count(); ++s) {
    const int f = cc.face_of_sample(s);
    const auto& fc = cosets[static_cast<size_t>(f)];
    class_of[static_cast<size_t>(s)].resize(fc.reps.size());
    for (size_t k = 0; k < fc.reps.size(); ++k) {
      class_of[static_cast<size_t>(s)][k] = static_cast<int>(q.classes.size());
      q.classes.push_back({s, f, static_cast<int>(k)});
    }
  }
  q.base_class.resize(static_cast<size_t>(cc.sample_count()));
  for (int s = 0; s < cc.sample_count(); ++s) {
    const int f = cc.face_of_sample(s);
    const auto& fc = cosets[static_cast<size_t>(f)];
    const Permutation id_rep =
        canonical_coset_rep(Permutation::identity(G.domain_size()), *fc.chain);
    int at = -1;
    for (size_t k = 0; k < fc.reps.size(); ++k)
      if (fc.reps[k] == id_rep) at = static_cast<int>(k);
    q.base_class[static_cast<size_t>(s)] = class_of[static_cast<size_t>(s)][static_cast<size_t>(at)];
  }

  for (const auto& g : G.generators()) {
    std::vector<int> map(q.classes.size());
    for (size_t c = 0; c < q.classes.size(); ++c) {
      const auto& info = q.classes[c];
      const auto& fc = cosets[static_cast<size_t>(info.face)];
      Permutation moved =
          canonical_coset_rep(g.compose(fc.reps[static_cast<size_t>(info.coset)]), *fc.chain);
      int at = -1;
      for (size_t k = 0; k < fc.reps.size(); ++k)
        if (fc.reps[k] == moved) at = static_cast<int>(k);
      map[c] = class_of[static_cast<size_t>(info.sample)][static_cast<size_t>(at)];
    }
    q.action.push_back(std::move(map));
  }

  // Defining-relation spot check: (g,c) ~ (g',c) iff g^-1 g' in G_c.
  if (G.order() <= pair_check_cap) {
    const auto elems = G.elements(pair_check_cap);
    for (int s = 0; s < cc.sample_count(); ++s) {
      const int f = cc.face_of_sample(s);
      const auto& fc = cosets[static_cast<size_t>(f)];
      const PermGroup& stab = face_stabilizers[static_cast<size_t>(f)];
      for (const auto& g1 : elems)
        for (const auto& g2 : elems) {
          const bool same_class =
              canonical_coset_rep(g1, *fc.chain) == canonical_coset_rep(g2, *fc.chain);
          const bool related = stab.contains(g1.inverse().compose(g2));
          if (same_class != related)
            throw Error(ErrorKind::Internal,
                        "quotient relation mismatch on face " + std::to_string(f));
        }
    }
  }
  return q;
}

namespace {

std::vector<int> orbit_of(const QuotientModel& q, int start) {
  std::vector<int> orbit{start};
  std::set<int> seen{start};
  for (size_t i = 0; i < orbit.size(); ++i)
    for (const auto& map : q.action) {
      const int to = map[static_cast<size_t>(orbit[i])];
      if (seen.insert(to).second) orbit.push_back(to);
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

}  // namespace

EquivarianceReport verify_equivariance(const QuotientModel& q, const PermGroup& G,
                                       const ChamberComplex& cc,
                                       const std::vector<PermGroup>& face_stabilizers,
                                       std::uint64_t enum_cap) {
  EquivarianceReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.lines.push_back({name, pass, detail});
    rep.all_pass = rep.all_pass && pass;
  };

  const auto elems = G.elements(enum_cap);
  const auto& gens = G.generators();

  // Per-element action on the class set, built once by BFS over the Cayley
  // graph: the map of g.x is the composite of generator maps along a word.
  std::map<Permutation, std::vector<int>> class_action;
  {
    std::vector<int> id_map(q.classes.size());
    for (size_t c = 0; c < id_map.size(); ++c) id_map[c] = static_cast<int>(c);
    std::vector<Permutation> frontier{Permutation::identity(G.domain_size())};
    class_action[frontier[0]] = std::move(id_map);
    for (size_t at = 0; at < frontier.size(); ++at) {
      for (size_t i = 0; i < gens.size(); ++i) {
        Permutation next = gens[i].compose(frontier[at]);
        if (class_action.count(next)) continue;
        const auto& base = class_action[frontier[at]];
        std::vector<int> composed(base.size());
        for (size_t c = 0; c < base.size(); ++c)
          composed[c] = q.action[i][static_cast<size_t>(base[c])];
        class_action[next] = std::move(composed);
        frontier.push_back(std::move(next));
      }
    }
  }
  auto act = [&](const Permutation& g, int cls) {
    const auto it = class_action.find(g);
    if (it == class_action.end())
      throw Error(ErrorKind::Internal, "element not reached by generators");
    return it->second[static_cast<size_t>(cls)];
  };

  // (a) stabilizer of [(e,c)] equals G_c.
  {
    bool pass = true;
    std::string detail;
    for (int s = 0; s < cc.sample_count() && pass; ++s) {
      const int f = cc.face_of_sample(s);
      const PermGroup& stab = face_stabilizers[static_cast<size_t>(f)];
      std::uint64_t fixed = 0;
      for (const auto& g : elems) {
        const bool fixes = act(g, q.base_class[static_cast<size_t>(s)]) ==
                           q.base_class[static_cast<size_t>(s)];
        const bool in_stab = stab.contains(g);
        if (fixes != in_stab) {
          pass = false;
          detail = "sample " + std::to_string(s) + ": stabilizer differs from G_c";
          break;
        }
        fixed += fixes;
      }
      if (pass && fixed != stab.order()) {
        pass = false;
        detail = "sample " + std::to_string(s) + ": stabilizer order mismatch";
      }
    }
    add("stabilizer-of-base-class-equals-G_c", pass, detail);
  }

  // (b) the orbit of [(e,c)] is the whole fiber over c.
  {
    bool pass = true;
    std::string detail;
    for (int s = 0; s < cc.sample_count() && pass; ++s) {
      std::vector<int> fiber;
      for (size_t c = 0; c < q.classes.size(); ++c)
        if (q.classes[c].sample == s) fiber.push_back(static_cast<int>(c));
      std::sort(fiber.begin(), fiber.end());
      const auto orbit = orbit_of(q, q.base_class[static_cast<size_t>(s)]);
      if (orbit != fiber) {
        pass = false;
        detail = "sample " + std::to_string(s) + ": orbit is not the fiber";
      }
    }
    add("orbit-of-base-class-is-fiber", pass, detail);
  }

  // (c) fibers over distinct faces are disjoint (as orbits).
  {
    bool pass = true;
    std::string detail;
    std::vector<std::vector<int>> orbits;
    for (int s = 0; s < cc.sample_count(); ++s)
      orbits.push_back(orbit_of(q, q.base_class[static_cast<size_t>(s)]));
    for (int s1 = 0; s1 < cc.sample_count() && pass; ++s1)
      for (int s2 = s1 + 1; s2 < cc.sample_count() && pass; ++s2) {
        std::vector<int> meet;
        std::set_intersection(orbits[static_cast<size_t>(s1)].begin(),
                              orbits[static_cast<size_t>(s1)].end(),
                              orbits[static_cast<size_t>(s2)].begin(),
                              orbits[static_cast<size_t>(s2)].end(),
                              std::back_inserter(meet));
        if (!meet.empty()) {
          pass = false;
          detail = "samples " + std::to_string(s1) + " and " + std::to_string(s2) +
                   " share " + std::to_string(meet.size()) + " classes";
        }
      }
    add("fibers-of-distinct-faces-disjoint", pass, detail);
  }
  return rep;
}

std::string EquivarianceReport::text() const {
  std::string out;
  for (const auto& l : lines) {
    out += (l.pass ? "PASS " : "FAIL ") + l.check;
    if (!l.detail.empty()) out += ": " + l.detail;
    out += "\n";
  }
  return out;
}

std::string EquivarianceReport::json() const {
  ordered_json j;
  ordered_json checks = ordered_json::array();
  for (const auto& l : lines) {
    ordered_json jc;
    jc["check"] = l.check;
    jc["pass"] = l.pass;
    if (!l.detail.empty()) jc["detail"] = l.detail;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["all_pass"] = all_pass;
  return j.dump(2);
}

}  // namespace polar
