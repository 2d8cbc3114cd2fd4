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
#include <string>
#include <vector>

namespace polar {

struct SelftestOptions {
  std::uint64_t seed = 20260808;
  // Run criteria 1-7 only; used by the determinism criterion itself.
  bool core_only = false;
  // Path to the CLI binary; when set, criterion 8 spawns it twice and
  // byte-compares the machine-readable output. When empty, the core run is
  // repeated in-process instead.
  std::string self_exe;
};

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = true;

  std::string to_json() const;  // deterministic; no timings
  std::string to_text() const;
};

SelftestReport run_selftest(const SelftestOptions& opt = {});

}  // namespace polar
