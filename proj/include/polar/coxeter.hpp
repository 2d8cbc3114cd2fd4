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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polar/linalg.hpp"
#include "polar/permgroup.hpp"

namespace polar {

enum class CoxeterFamily { A, B, D, E, F, H, I2 };

// An irreducible finite Coxeter type. Construction canonicalizes the
// dihedral coincidences: I2(3) -> A2, I2(4) -> B2; I2(6) keeps its own
// label (there is no G family in this alphabet).
struct CoxeterType {
  CoxeterFamily family;
  int rank;
  int m = 0;  // only for I2

  CoxeterType(CoxeterFamily f, int rank, int m = 0);

  std::string label() const;
  std::uint64_t weyl_order() const;
  int root_count() const;
  // Whether an exact matrix realization over Q(sqrt5) is built
  // (everything except I2(m) with m outside {3,4,6}).
  bool has_matrix_model() const;

  bool operator==(const CoxeterType& o) const {
    return family == o.family && rank == o.rank && m == o.m;
  }
  bool operator<(const CoxeterType& o) const {
    if (family != o.family) return family < o.family;
    if (rank != o.rank) return rank < o.rank;
    return m < o.m;
  }
};

// Parse a single irreducible type label ("A3", "I2(7)", ...). "G2" is
// accepted as an input alias for I2(6).
CoxeterType parse_type(const std::string& text);
// Parse a product expression, factors joined by 'x' ("B3", "A2xA1").
std::vector<CoxeterType> parse_type_product(const std::string& text);
std::string product_label(const std::vector<CoxeterType>& types);

// A root system realized either exactly over Q(sqrt5) (coordinates in the
// simple-root basis, inner products through the Gram matrix) or, for the
// dihedral types without a matrix model, combinatorially as 2m abstract
// roots on a circle.
struct RootSystem {
  std::vector<CoxeterType> factors;
  int rank = 0;         // total number of simple roots / walls
  int domain_size = 0;  // number of roots = permutation domain
  std::vector<Permutation> simple_perms;  // indexed by wall

  bool has_matrix_model = false;
  QMatrix gram;                 // rank x rank, when matrix model present
  std::vector<QVector> roots;   // sorted; coordinates in the simple-root basis
  std::vector<int> simple_indices;  // positions of the simple roots

  // Reflection matrix of an arbitrary root (matrix model only).
  QMatrix reflection_matrix(const QVector& root) const;
  // The matrix realizing a given root permutation (matrix model only):
  // columns are the images of the simple roots.
  QMatrix matrix_of(const Permutation& w) const;
};

RootSystem build_root_system(const CoxeterType& t);
RootSystem product_root_system(const std::vector<CoxeterType>& types);

// The faithful action of W on the root list.
PermGroup weyl_as_perm_group(const RootSystem& rs);

// Chamber face data: 2^rank faces indexed by the bitmask of walls the face
// lies on. Exact interior representatives exist for matrix models.
struct Chamber {
  int rank = 0;
  bool has_points = false;
  std::vector<QVector> face_reps;  // indexed by wall bitmask; empty if !has_points
};

Chamber chamber_faces(const RootSystem& rs);

// Labeled graph on the simple reflections: edge {i,j} carries m_ij >= 3,
// absent edge means m_ij = 2.
struct CoxeterDiagram {
  int n = 0;
  std::map<std::pair<int, int>, int> edges;

  int label(int i, int j) const {
    auto it = edges.find(std::minmax(i, j));
    return it == edges.end() ? 2 : it->second;
  }
};

// Diagram from pairwise product orders of the given involutions.
CoxeterDiagram coxeter_matrix(const std::vector<Permutation>& simple_reflections);

struct DiagramComponent {
  std::vector<int> nodes;  // sorted
  CoxeterType type;
};

// Connected components with their finite types, ordered by smallest node
// index. Throws RecognitionError(Diagram) if some component is not of
// finite type.
std::vector<DiagramComponent> classify(const CoxeterDiagram& d);

}  // namespace polar
