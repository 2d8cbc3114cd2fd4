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

#include <string>
#include <vector>

#include "polar/history.hpp"

namespace polar {

// A finite combinatorial model of the chamber: its 2^n faces, each sampled
// by one or more abstract points.
struct ChamberComplex {
  int n_walls = 0;
  int samples_per_face = 1;
  int face_count() const { return 1 << n_walls; }
  int sample_count() const { return face_count() * samples_per_face; }
  int face_of_sample(int s) const { return s / samples_per_face; }
};

// The quotient G x C / ~ with (g,c) ~ (g',c') iff c = c' and g^-1 g' in
// G_c: one class per (sample, coset of G_c). The action arrays are integer
// maps so that fault-injection fixtures can corrupt them.
struct QuotientModel {
  struct ClassInfo {
    int sample = 0;
    int face = 0;   // wall bitmask
    int coset = 0;  // index within the fiber
  };
  std::vector<ClassInfo> classes;
  std::vector<std::vector<int>> action;  // one map per generator of G
  std::vector<int> base_class;           // class of (e, c) per sample

  int fiber_size(int sample) const;
};

// iso: face bitmask -> stabilizer subgroup of G (monotone along inclusion).
// Verifies the defining relation pairwise when |G| is within pair_check_cap.
QuotientModel build_quotient(const PermGroup& G, const ChamberComplex& cc,
                             const std::vector<PermGroup>& face_stabilizers,
                             std::uint64_t pair_check_cap = 200);

// Face stabilizers of a validated concrete history, indexed by wall mask.
std::vector<PermGroup> stabilizers_from_history(const ValidatedHistory& vh);

struct EquivarianceReport {
  struct Line {
    std::string check;
    bool pass = false;
    std::string detail;
  };
  std::vector<Line> lines;
  bool all_pass = true;

  std::string text() const;
  std::string json() const;
};

// (a) the stabilizer of [(e,c)] is exactly G_c, (b) its orbit is the whole
// fiber over c, (c) fibers of distinct faces are disjoint.
EquivarianceReport verify_equivariance(const QuotientModel& q, const PermGroup& G,
                                       const ChamberComplex& cc,
                                       const std::vector<PermGroup>& face_stabilizers,
                                       std::uint64_t enum_cap = 5000);

}  // namespace polar
