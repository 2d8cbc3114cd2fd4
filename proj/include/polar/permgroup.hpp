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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polar/error.hpp"

namespace polar {

// A permutation of {0,...,n-1}, stored as its image array.
// Composition convention: (p.compose(q))(x) = p(q(x)) -- q acts first.
// This matches matrix products acting on column vectors, so the map
// "reflection matrix -> permutation of the root list" is a homomorphism.
struct Permutation {
  std::vector<int> img;

  Permutation() = default;
  static Permutation identity(int n);
  // Validates that images form a bijection on {0,...,n-1}.
  static Permutation from_images(std::vector<int> images);
  // Test convenience: product of disjoint cycles on a domain of size n.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(img.size()); }
  int operator()(int p) const { return img[static_cast<size_t>(p)]; }
  bool is_identity() const;

  Permutation compose(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& g) const;  // g * this * g^-1

  // Least m >= 1 with p^m = id; the lcm of the cycle lengths.
  std::uint64_t order() const;

  std::string cycle_str() const;
};

bool operator==(const Permutation& a, const Permutation& b);
inline bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
bool operator<(const Permutation& a, const Permutation& b);  // lexicographic on images

std::uint64_t element_order(const Permutation& p);

struct PermHash {
  std::size_t operator()(const Permutation& p) const;
};
std::uint64_t hash_images(const std::vector<int>& img);

// One level of a stabilizer chain: the orbit of `base` under the level's
// generators, with an explicit transversal (transversal[i] maps base to
// orbit[i]).
struct StabChainLevel {
  int base = -1;
  std::vector<int> orbit;
  std::vector<int> orbit_pos;  // point -> index into orbit, or -1
  std::vector<Permutation> transversal;

  bool in_orbit(int p) const { return orbit_pos[static_cast<size_t>(p)] >= 0; }
  const Permutation& rep_to(int p) const {
    return transversal[static_cast<size_t>(orbit_pos[static_cast<size_t>(p)])];
  }
};

// Deterministic Schreier-Sims stabilizer chain. Base points are always the
// smallest moved points available, orbits are BFS-ordered, and strong
// generators are appended in discovery order, so two builds from the same
// generator list agree exactly.
struct StabChain {
  int domain = 0;
  std::vector<Permutation> strong_gens;
  std::vector<int> base;
  std::vector<StabChainLevel> levels;
  std::uint64_t order = 1;

  bool contains(const Permutation& g) const;
  // Strips g through levels starting at `from`; returns the residue and the
  // level index where it stuck (levels.size() if fully stripped).
  std::pair<Permutation, size_t> sift(Permutation g, size_t from) const;
};

StabChain build_stab_chain(int domain, std::vector<Permutation> gens);

// The coset-minimal representative of g*N, canonical with respect to N's
// chain: minimizes the image sequence of N's base points. Two elements lie
// in the same right coset of N exactly when their canonical reps coincide.
Permutation canonical_coset_rep(const Permutation& g, const StabChain& n_chain);

// A finite permutation group on a fixed domain. Immutable after
// construction; the stabilizer chain is built lazily on first use and
// cached (single-writer discipline: trigger the build before sharing a
// group across threads, after which all queries are read-only).
// Generators are deduplicated and sorted so equal generator sets give
// identical objects.
class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(int domain);  // trivial group
  PermGroup(int domain, std::vector<Permutation> gens);
  static PermGroup trivial(int domain) { return PermGroup(domain); }

  int domain_size() const { return domain_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  bool is_trivial() const { return gens_.empty(); }

  std::uint64_t order() const;
  bool contains(const Permutation& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  // Same subgroup of the common symmetric group.
  bool same_group_as(const PermGroup& other) const;

  // All elements in deterministic (sorted) order. Throws ErrorKind::Limit
  // if the order exceeds cap.
  std::vector<Permutation> elements(std::uint64_t cap) const;

  const StabChain& chain() const;

  // Used by quotient(): the order is provable from the construction, so the
  // chain (possibly on a huge coset domain) is never needed just for it.
  void set_known_order(std::uint64_t n) { known_order_ = n; }

 private:
  int domain_ = 0;
  std::vector<Permutation> gens_;
  std::optional<std::uint64_t> known_order_;
  mutable std::shared_ptr<const StabChain> chain_;
};

// Subgroup generated by elems inside the symmetric group on `domain` points.
PermGroup generated(int domain, const std::vector<Permutation>& elems);

// All elements of order exactly 2, sorted. Enumerates the group, so the
// order must not exceed cap.
std::vector<Permutation> involutions(const PermGroup& g, std::uint64_t cap = 5000);

// N_K(H) = {k in K : k H k^-1 = H}. Requires H <= K (checked). DFS over
// K's stabilizer chain with subgroup-accumulation and H-orbit pruning;
// refuses to search groups larger than search_cap.
PermGroup normalizer(const PermGroup& K, const PermGroup& H,
                     std::uint64_t search_cap = 10000);

// Whether N is normal in G; requires N <= G (checked).
bool is_normal_in(const PermGroup& N, const PermGroup& G);

// G/N as the action of G on the right cosets of N, with the projection map.
// For N trivial the quotient model is G itself (projection = identity).
struct Quotient {
  PermGroup group;                   // the quotient model
  bool identity_projection = false;  // N was trivial
  int parent_domain = 0;
  std::vector<Permutation> coset_reps;
  std::shared_ptr<const StabChain> n_chain;

  // Image of a parent-group element in the quotient model.
  Permutation project(const Permutation& g) const;
};

Quotient quotient(const PermGroup& G, const PermGroup& N);

// The largest subgroup of K normal in G (the normal core); requires K <= G.
PermGroup core(const PermGroup& G, const PermGroup& K,
               std::uint64_t search_cap = 10000);

// Intersection of two subgroups of the same symmetric group (helper for
// core); enumerates the smaller side, so it is capped.
PermGroup intersection(const PermGroup& A, const PermGroup& B,
                       std::uint64_t search_cap = 10000);

// External direct product acting on the disjoint union of the two domains.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

// Conjugate subgroup g A g^-1.
PermGroup conjugate_subgroup(const PermGroup& a, const Permutation& g);

// Normal closure of A under conjugation by G (A, G on the same domain).
PermGroup normal_closure(const PermGroup& G, const PermGroup& A);

// Derived subgroup [G, G].
PermGroup derived_subgroup(const PermGroup& G);

// Explicit isomorphism test for groups of order <= bound: invariant
// screening followed by a deterministic backtracking generator-mapping
// search with simultaneous-closure consistency checking. Complete within
// the bound; throws ErrorKind::Limit beyond it or if the work budget is
// exhausted.
bool isomorphic(const PermGroup& A, const PermGroup& B, std::uint64_t bound = 5000);

}  // namespace polar
