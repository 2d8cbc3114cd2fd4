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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polar/history.hpp"

namespace polar {

// Matching signature for a finite group presented as a quotient G/N.
// Derived series and abelianization are computed from (G, N) inside G's
// domain, so no chain is ever needed on a large coset model. The involution
// count is only filled in when the quotient order is within the enumeration
// bound; both sides of a comparison apply the same rule, so the field is
// either present on both or absent on both.
struct GroupSignature {
  std::uint64_t order = 1;
  std::vector<std::uint64_t> derived_orders;  // quotient derived series until stable
  std::vector<std::uint64_t> abelian_orders;  // element orders of the abelianization
  std::optional<std::uint64_t> involution_count;

  bool operator==(const GroupSignature& o) const = default;
};

// model: a faithful permutation model of G/N when available (used only for
// involution counting); pass nullptr to skip.
GroupSignature signature_of_quotient(const PermGroup& G, const PermGroup& N,
                                     const PermGroup* model,
                                     std::uint64_t enum_bound = 5000);

struct CatalogEntry {
  std::string id;
  std::string group_label;
  std::string rep_label;
  bool concrete = false;
  std::vector<CoxeterType> types;  // Weyl type as a product, factor order as stored
  std::string dim_expr;            // integer literal, or expression in the parameter
  std::string principal_isotropy;
  std::string kernel_label;
  std::string param;        // "" or a single variable name, conventionally "n"
  std::string constraints;  // e.g. "n>=2"
  std::optional<HistoryLattice> template_inline;  // absent for generated templates
  std::string notes;
};

struct SymbolicMatch {
  const CatalogEntry* entry = nullptr;
  std::optional<long> n;
  int real_dim = 0;
  std::string kernel_label;
  std::string group_label;  // instantiated
};

class Catalog {
 public:
  // The shipped catalog: every finite Coxeter reflection representation at
  // desk scale plus a starter set of symbolic compact-group entries.
  static Catalog builtin();
  static Catalog from_json(const std::string& text);
  static Catalog load_file(const std::string& path);
  std::string to_json(bool materialize_templates = false) const;

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& id) const;

  // The entry's history lattice, ready for validate/recognize;
  // parameterized entries need a parameter value.
  HistoryLattice history_template(const CatalogEntry& e,
                                  std::optional<long> n = std::nullopt) const;
  int real_dim(const CatalogEntry& e, std::optional<long> n = std::nullopt) const;

  // Factor lookup, concrete backend: weyl type + effectivized-group
  // signature + principal-isotropy signature; an isomorphism test backs the
  // signature whenever both orders are within iso_bound. Concrete entries
  // model reflection representations, whose principal isotropy is trivial.
  const CatalogEntry* lookup_concrete(const CoxeterType& type,
                                      const GroupSignature& eff_sig,
                                      const PermGroup& eff_model,
                                      const GroupSignature& iso_sig,
                                      std::uint64_t iso_bound = 5000) const;

  // Whole-history lookup, symbolic backend: group label (parameter solving
  // for parameterized entries), Weyl type multiset, principal isotropy
  // label, then template isomorphism against the input lattice.
  SymbolicMatch lookup_symbolic(const std::string& group_label,
                                std::vector<CoxeterType> type_multiset,
                                const std::string& isotropy_label,
                                const ValidatedHistory& input) const;

  struct IntegrityIssue {
    std::string entry_id;
    std::string message;
  };
  std::vector<IntegrityIssue> integrity_check() const;

 private:
  std::vector<CatalogEntry> entries_;
  struct EntryCache {
    std::optional<PermGroup> model;
    std::optional<GroupSignature> signature;
  };
  mutable std::map<std::string, EntryCache> cache_;

  const PermGroup& entry_model(const CatalogEntry& e) const;
  const GroupSignature& entry_signature(const CatalogEntry& e) const;
};

// {expr} placeholder instantiation and the integer expression language used
// by parameterized entries ("2*n+2", constraint "n>=2").
long eval_int_expr(const std::string& expr, std::optional<long> n);
bool eval_constraint(const std::string& constraint, long n);
std::string instantiate_placeholders(const std::string& text, long n);
// Solve `pattern` (literal text with {n} holes) against `value`.
std::optional<long> solve_label_pattern(const std::string& pattern,
                                        const std::string& value);

}  // namespace polar
