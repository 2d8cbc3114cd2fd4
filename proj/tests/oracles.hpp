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

// Independent brute-force oracles for the test suite. Everything here
// enumerates naively and never touches the stabilizer-chain machinery it is
// used to check.

#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "polar/coxeter.hpp"
#include "polar/permgroup.hpp"

namespace oracles {

using polar::PermGroup;
using polar::Permutation;

// Plain BFS closure over the generators.
inline std::set<Permutation> naive_closure(int domain,
                                           const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(domain)};
  std::vector<Permutation> queue(seen.begin(), seen.end());
  for (size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      Permutation next = queue[i].compose(g);
      if (seen.insert(next).second) queue.push_back(next);
    }
  return seen;
}

inline std::set<Permutation> naive_elements(const PermGroup& g) {
  return naive_closure(g.domain_size(), g.generators());
}

// N_K(H) by scanning all of K.
inline std::set<Permutation> naive_normalizer(const PermGroup& K, const PermGroup& H) {
  const auto k_elems = naive_elements(K);
  const auto h_elems = naive_elements(H);
  std::set<Permutation> result;
  for (const auto& k : k_elems) {
    bool ok = true;
    for (const auto& h : h_elems)
      if (!h_elems.count(k.compose(h).compose(k.inverse()))) {
        ok = false;
        break;
      }
    if (ok) result.insert(k);
  }
  return result;
}

// All subgroups of a small group, as element sets: closures of generating
// subsets of size <= 3 (sufficient for the orders used in tests).
inline std::vector<std::set<Permutation>> all_subgroups(const PermGroup& g) {
  const auto elems_set = naive_elements(g);
  const std::vector<Permutation> elems(elems_set.begin(), elems_set.end());
  std::set<std::set<Permutation>> found;
  found.insert(naive_closure(g.domain_size(), {}));
  for (size_t i = 0; i < elems.size(); ++i) {
    found.insert(naive_closure(g.domain_size(), {elems[i]}));
    for (size_t j = i + 1; j < elems.size(); ++j) {
      found.insert(naive_closure(g.domain_size(), {elems[i], elems[j]}));
      for (size_t k = j + 1; k < elems.size(); ++k)
        found.insert(naive_closure(g.domain_size(), {elems[i], elems[j], elems[k]}));
    }
  }
  return {found.begin(), found.end()};
}

// All elements of W as exact matrices, by closing the simple reflection
// matrices under multiplication.
inline std::vector<polar::QMatrix> weyl_matrices(const polar::RootSystem& rs) {
  std::vector<polar::QMatrix> gens;
  for (int i = 0; i < rs.rank; ++i) {
    polar::QVector e(rs.rank);
    e[i] = polar::ScalarQ5(1);
    gens.push_back(rs.reflection_matrix(e));
  }
  std::vector<polar::QMatrix> elems{polar::QMatrix::identity(rs.rank)};
  auto contains = [&](const polar::QMatrix& m) {
    for (const auto& x : elems)
      if (x == m) return true;
    return false;
  };
  for (size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      polar::QMatrix next = elems[i] * g;
      if (!contains(next)) elems.push_back(std::move(next));
    }
  return elems;
}

// W-orbit of a vector under explicit matrices.
inline std::vector<polar::QVector> matrix_orbit(const std::vector<polar::QMatrix>& w,
                                                const polar::QVector& v) {
  std::vector<polar::QVector> orbit;
  for (const auto& m : w) {
    polar::QVector u = m.apply(v);
    bool fresh = true;
    for (const auto& x : orbit)
      if (x == u) {
        fresh = false;
        break;
      }
    if (fresh) orbit.push_back(std::move(u));
  }
  return orbit;
}

// Order of the W-stabilizer of a vector, by explicit matrices.
inline size_t matrix_stabilizer_order(const std::vector<polar::QMatrix>& w,
                                      const polar::QVector& v) {
  size_t n = 0;
  for (const auto& m : w)
    if (m.apply(v) == v) ++n;
  return n;
}

}  // namespace oracles
