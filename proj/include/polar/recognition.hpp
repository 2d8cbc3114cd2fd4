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

#include <optional>
#include <string>
#include <vector>

#include "polar/catalog.hpp"
#include "polar/history.hpp"

namespace polar {

// The Weyl group reconstructed from a validated history, living inside a
// permutation model of N(H)/H. Atom indexing follows the validated
// history's atom order.
struct WeylData {
  bool concrete = true;
  PermGroup model;                             // W = <atom reflections>
  std::vector<Permutation> atom_reflections;   // in the N(H)/H model
  std::vector<Permutation> atom_lifts;         // concrete: lifts into the parent domain
  CoxeterDiagram diagram;
  std::vector<DiagramComponent> components;    // classified, by smallest atom
  Quotient nh_quotient;                        // concrete: N_G(H) -> N_G(H)/H
  PermGroup ng;                                // concrete: N_G(H)
};

// The unique involution of N_{K_j}(H)/H for the given atom (by node id).
// Errors with the reflection-uniqueness diagnostic when the involution
// count differs from one.
Permutation atom_reflection(const ValidatedHistory& l, const std::string& atom_id);

WeylData weyl_from_history(const ValidatedHistory& l);

// Node id of K_{I_i}: the unique minimal history node containing
// W_{Sigma_i}.H, found by exhaustive containment search and cross-checked
// against the complement-coordinate node.
std::string factor_isotropy(const ValidatedHistory& l, const WeylData& w,
                            int component_index);

struct Effectivization {
  PermGroup kernel;    // core(G, K_node)
  Quotient effective;  // G / kernel
};

Effectivization effectivize(const ValidatedHistory& l, const std::string& node_id);

struct FactorDescriptor {
  std::vector<int> atoms;  // atom indices of this component
  std::string weyl_type;   // "A2", or a product label for whole-rep entries
  std::string catalog_id;
  int factor_dim = 0;
  std::string isotropy_node;
  std::optional<std::uint64_t> kernel_order;  // concrete backend
  std::optional<std::string> kernel_label;    // symbolic backend
  std::string effective_group;
};

struct PolarRepDescriptor {
  int total_dim = 0;
  int trivial_dim = 0;
  std::vector<FactorDescriptor> factors;
};

// Recognition: a history plus the total dimension pins down the Coxeter
// polar representation; returns its descriptor.
PolarRepDescriptor recognize(const HistoryLattice& l, int dim, const Catalog& catalog);

std::string descriptor_json(const PolarRepDescriptor& d);

}  // namespace polar
