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

#include <stdexcept>
#include <string>

namespace polar {

// Error categories map onto CLI exit codes: InvalidData -> 2, everything
// else raised during a recognition run -> 3.
enum class ErrorKind {
  InvalidData,  // malformed files, illegal types, broken preconditions on user data
  Recognition,  // a step of the recognition pipeline failed on semantically valid input
  Limit,        // a configured search/enumeration cap was exceeded
  Internal,     // invariant violation; indicates a bug
};

// The step vocabulary used in recognition diagnostics.
enum class RecognitionStep {
  Lattice,
  ReflectionUniqueness,
  Diagram,
  Containment,
  Catalog,
  Dimension,
};

inline const char* step_name(RecognitionStep s) {
  switch (s) {
    case RecognitionStep::Lattice: return "lattice";
    case RecognitionStep::ReflectionUniqueness: return "reflection-uniqueness";
    case RecognitionStep::Diagram: return "diagram";
    case RecognitionStep::Containment: return "containment";
    case RecognitionStep::Catalog: return "catalog";
    case RecognitionStep::Dimension: return "dimension";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class RecognitionError : public Error {
 public:
  RecognitionError(RecognitionStep step, const std::string& msg)
      : Error(ErrorKind::Recognition,
              std::string("[") + step_name(step) + "] " + msg),
        step_(step) {}
  RecognitionStep step() const { return step_; }

 private:
  RecognitionStep step_;
};

}  // namespace polar
