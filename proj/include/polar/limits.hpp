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

namespace polar {

// Process-wide caps on the exhaustive searches. Adjust once at startup
// (same single-writer discipline as the lazily built stabilizer chains);
// afterwards reads are safe from any thread.
struct Limits {
  // element enumeration: involutions, isomorphism tests, signature
  // involution counts, lattice conjugator searches
  std::uint64_t enum_cap = 5000;
  // DFS searches: normalizer, core, intersection
  std::uint64_t search_cap = 10000;
};

Limits& limits();

}  // namespace polar
