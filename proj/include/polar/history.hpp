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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polar/coxeter.hpp"
#include "polar/permgroup.hpp"

namespace polar {

// A node of a history lattice: either a concrete subgroup living in the
// lattice's shared parent domain, or an opaque conjugacy-class label with,
// for atoms, the reflection it contributes to N(H)/H as an element of the
// lattice's weyl_model.
struct GroupRef {
  enum class Kind { Concrete, Symbolic };
  Kind kind = Kind::Concrete;
  PermGroup group;                        // Concrete
  std::string label;                      // Symbolic
  std::optional<Permutation> involution;  // Symbolic atoms only

  static GroupRef concrete(PermGroup g) {
    GroupRef r;
    r.kind = Kind::Concrete;
    r.group = std::move(g);
    return r;
  }
  static GroupRef symbolic(std::string label,
                           std::optional<Permutation> inv = std::nullopt) {
    GroupRef r;
    r.kind = Kind::Symbolic;
    r.label = std::move(label);
    r.involution = std::move(inv);
    return r;
  }
};

struct HistoryNode {
  std::string id;
  GroupRef ref;
};

// The lattice of isotropy groups along a chamber, as stored/serialized.
// Inclusion edges are explicit claims; nothing is inferred at parse time.
struct HistoryLattice {
  int domain_size = 0;  // 0 for fully symbolic lattices
  std::vector<HistoryNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // [lower, upper]
  std::string min_id, max_id;
  std::optional<PermGroup> weyl_model;  // symbolic backend

  const HistoryNode* find(const std::string& id) const;
};

// A validated history: unique min/max confirmed, Boolean structure
// established, every node assigned its subset-of-atoms coordinate; for
// concrete lattices the full inclusion order has been recomputed from the
// groups and every declared edge checked.
class ValidatedHistory {
 public:
  const HistoryLattice& lattice() const { return lattice_; }
  bool concrete() const { return concrete_; }
  int node_count() const { return static_cast<int>(ids_.size()); }
  int atom_count() const { return static_cast<int>(atoms_.size()); }

  const std::vector<std::string>& ids() const { return ids_; }  // sorted
  int index_of(const std::string& id) const;
  const GroupRef& ref_at(int idx) const;
  const PermGroup& group_at(int idx) const;  // concrete lattices

  bool leq(int lower, int upper) const {
    return leq_[static_cast<size_t>(lower) * ids_.size() + static_cast<size_t>(upper)];
  }
  int min_index() const { return min_; }
  int max_index() const { return max_; }
  // Node indices of the atoms, ordered by node id; this order fixes atom
  // numbering everywhere downstream.
  const std::vector<int>& atoms() const { return atoms_; }
  std::uint64_t coord_of(int idx) const { return coord_[static_cast<size_t>(idx)]; }
  int node_at_coord(std::uint64_t mask) const;

 private:
  friend ValidatedHistory validate(const HistoryLattice&);
  HistoryLattice lattice_;
  bool concrete_ = true;
  std::vector<std::string> ids_;
  std::vector<int> node_of_id_;  // position in lattice_.nodes per sorted id
  std::vector<char> leq_;
  int min_ = -1, max_ = -1;
  std::vector<int> atoms_;
  std::vector<std::uint64_t> coord_;
  std::vector<int> by_coord_;
};

// Throws RecognitionError(Lattice) on any structural defect: no unique
// min/max, non-Boolean order, claimed inclusions false for concrete groups.
ValidatedHistory validate(const HistoryLattice& l);

// The history of a reflection representation: one node per chamber face S,
// carrying the parabolic stabilizer generated by the walls in S.
HistoryLattice extract_history(const RootSystem& rs);

// Recover one chamber's history from the stabilizers along a whole section.
// Concrete backend only. Deterministic; throws RecognitionError(Lattice) if
// no consistent chamber sub-collection exists.
HistoryLattice from_section_isotropies(int domain_size,
                                       const std::vector<PermGroup>& groups);

// Order isomorphism matching node identities: labels for symbolic lattices;
// group orders plus (same parent domain, within the search cap) a single
// consistent ambient conjugation for concrete ones.
bool lattices_isomorphic(const ValidatedHistory& a, const ValidatedHistory& b,
                         std::uint64_t conj_search_cap = 5000);

// History file format (JSON; permutations are 0-based image arrays).
std::string serialize_history(const HistoryLattice& l);
HistoryLattice parse_history(const std::string& json_text);

// Face-subset node ids used by extract_history: "H", "K<indices>", "G".
std::string face_node_id(std::uint32_t mask, int rank);

}  // namespace polar
