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

#include "polar/catalog.hpp"

#include "polar/limits.hpp"

#include <bit>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polar/recognition.hpp"

namespace polar {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Signatures

GroupSignature signature_of_quotient(const PermGroup& G, const PermGroup& N,
                                     const PermGroup* model,
                                     std::uint64_t enum_bound) {
  GroupSignature sig;
  const std::uint64_t nn = N.is_trivial() ? 1 : N.order();
  sig.order = G.order() / nn;

  auto join_with_n = [&](const PermGroup& F) {
    std::vector<Permutation> gens = F.generators();
    for (const auto& g : N.generators()) gens.push_back(g);
    return PermGroup(G.domain_size(), std::move(gens));
  };

  // Derived series of G/N via F_{k+1} = [F_k, F_k] . N inside G's domain.
  PermGroup f = join_with_n(derived_subgroup(G));
  std::uint64_t q = f.order() / nn;
  sig.derived_orders.push_back(q);
  while (sig.derived_orders.back() != 1) {
    f = join_with_n(derived_subgroup(f));
    q = f.order() / nn;
    if (q == sig.derived_orders.back()) break;
    sig.derived_orders.push_back(q);
  }

  // Abelianization (G/N)/(G/N)' = G / (G'N): a small coset action.
  const std::uint64_t ab_index = sig.order / sig.derived_orders.front();
  if (ab_index <= enum_bound) {
    std::vector<Permutation> gens = derived_subgroup(G).generators();
    for (const auto& g : N.generators()) gens.push_back(g);
    PermGroup gprime_n(G.domain_size(), std::move(gens));
    Quotient ab = quotient(G, gprime_n);
    for (const auto& e : ab.group.elements(enum_bound))
      sig.abelian_orders.push_back(e.order());
    std::sort(sig.abelian_orders.begin(), sig.abelian_orders.end());
  }

  if (sig.order <= enum_bound && model != nullptr) {
    std::uint64_t count = 0;
    for (const auto& e : model->elements(enum_bound))
      if (e.order() == 2) ++count;
    sig.involution_count = count;
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Expression language for parameterized entries

namespace {

struct ExprParser {
  const std::string& s;
  size_t pos = 0;
  std::optional<long> n;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() {
    throw Error(ErrorKind::InvalidData, "cannot parse expression '" + s + "'");
  }

  long parse_expr() {
    long v = parse_term();
    while (true) {
      if (eat('+'))
        v += parse_term();
      else if (eat('-'))
        v -= parse_term();
      else
        return v;
    }
  }
  long parse_term() {
    long v = parse_factor();
    while (true) {
      if (eat('*'))
        v *= parse_factor();
      else if (eat('/')) {
        const long d = parse_factor();
        if (d == 0 || v % d != 0)
          throw Error(ErrorKind::InvalidData, "non-exact division in '" + s + "'");
        v /= d;
      } else
        return v;
    }
  }
  long parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    if (eat('(')) {
      const long v = parse_expr();
      if (!eat(')')) fail();
      return v;
    }
    if (pos < s.size() && s[pos] == 'n') {
      if (!n) throw Error(ErrorKind::InvalidData,
                          "expression '" + s + "' needs a parameter value");
      ++pos;
      return *n;
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      long v = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        v = v * 10 + (s[pos++] - '0');
      return v;
    }
    fail();
  }
};

}  // namespace

long eval_int_expr(const std::string& expr, std::optional<long> n) {
  ExprParser p{expr, 0, n};
  const long v = p.parse_expr();
  p.skip_ws();
  if (p.pos != expr.size()) p.fail();
  return v;
}

bool eval_constraint(const std::string& constraint, long n) {
  if (constraint.empty()) return true;
  static const std::vector<std::string> ops = {">=", "<=", "==", ">", "<"};
  for (const auto& op : ops) {
    const size_t at = constraint.find(op);
    if (at == std::string::npos) continue;
    const long lhs = eval_int_expr(constraint.substr(0, at), n);
    const long rhs = eval_int_expr(constraint.substr(at + op.size()), n);
    if (op == ">=") return lhs >= rhs;
    if (op == "<=") return lhs <= rhs;
    if (op == "==") return lhs == rhs;
    if (op == ">") return lhs > rhs;
    return lhs < rhs;
  }
  throw Error(ErrorKind::InvalidData, "cannot parse constraint '" + constraint + "'");
}

std::string instantiate_placeholders(const std::string& text, long n) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t open = text.find('{', pos);
    if (open == std::string::npos) {
      out += text.substr(pos);
      break;
    }
    const size_t close = text.find('}', open);
    if (close == std::string::npos)
      throw Error(ErrorKind::InvalidData, "unbalanced '{' in '" + text + "'");
    out += text.substr(pos, open - pos);
    out += std::to_string(eval_int_expr(text.substr(open + 1, close - open - 1), n));
    pos = close + 1;
  }
  return out;
}

std::optional<long> solve_label_pattern(const std::string& pattern,
                                        const std::string& value) {
  // Only plain {n} holes are solvable.
  std::vector<std::string> literals;
  std::string cur;
  size_t pos = 0;
  int holes = 0;
  while (pos < pattern.size()) {
    if (pattern.compare(pos, 3, "{n}") == 0) {
      literals.push_back(cur);
      cur.clear();
      ++holes;
      pos += 3;
    } else if (pattern[pos] == '{') {
      return std::nullopt;  // non-trivial placeholder; not invertible
    } else {
      cur += pattern[pos++];
    }
  }
  literals.push_back(cur);
  if (holes == 0) return std::nullopt;

  std::optional<long> n;
  size_t at = 0;
  for (size_t i = 0; i < literals.size(); ++i) {
    const std::string& lit = literals[i];
    if (value.compare(at, lit.size(), lit) != 0) return std::nullopt;
    at += lit.size();
    if (i + 1 == literals.size()) break;
    size_t d = at;
    while (d < value.size() && std::isdigit(static_cast<unsigned char>(value[d]))) ++d;
    if (d == at) return std::nullopt;
    const long got = std::stol(value.substr(at, d - at));
    if (n && *n != got) return std::nullopt;
    n = got;
    at = d;
  }
  if (at != value.size()) return std::nullopt;
  return n;
}

// ---------------------------------------------------------------------------
// Builtin catalog

namespace {

CatalogEntry reflection_entry(const CoxeterType& t) {
  CatalogEntry e;
  e.id = "coxeter/" + t.label() + "/reflection";
  e.group_label = "W(" + t.label() + ")";
  e.rep_label = "reflection";
  e.concrete = true;
  e.types = {t};
  e.dim_expr = std::to_string(t.rank);
  e.principal_isotropy = "1";
  e.kernel_label = "1";
  return e;
}

// Symbolic template of a maximal-torus (adjoint-type) history: Boolean
// 2^rank with wall labels C(a...), carrying the type's Weyl permutation
// model and its simple reflections as atom involutions.
HistoryLattice torus_history(const std::vector<CoxeterType>& types,
                             const std::string& group_label,
                             const std::string& torus_label) {
  RootSystem rs = product_root_system(types);
  HistoryLattice l;
  l.domain_size = 0;
  l.weyl_model = weyl_as_perm_group(rs);
  const int rank = rs.rank;
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask) {
    std::string label;
    if (mask == 0)
      label = torus_label;
    else if (mask == (1u << rank) - 1u)
      label = group_label;
    else {
      label = "C(";
      bool first = true;
      for (int j = 0; j < rank; ++j)
        if ((mask >> j) & 1u) {
          if (!first) label += ",";
          label += "a" + std::to_string(j + 1);
          first = false;
        }
      label += ")";
    }
    std::optional<Permutation> inv;
    if (std::popcount(mask) == 1) {
      int j = 0;
      while (!((mask >> j) & 1u)) ++j;
      inv = rs.simple_perms[static_cast<size_t>(j)];
    }
    l.nodes.push_back({face_node_id(mask, rank),
                       GroupRef::symbolic(std::move(label), std::move(inv))});
  }
  for (std::uint32_t mask = 0; mask < (1u << rank); ++mask)
    for (int j = 0; j < rank; ++j)
      if (!((mask >> j) & 1u))
        l.edges.push_back({face_node_id(mask, rank), face_node_id(mask | (1u << j), rank)});
  l.min_id = face_node_id(0, rank);
  l.max_id = face_node_id((1u << rank) - 1u, rank);
  return l;
}

CatalogEntry adjoint_entry(const std::string& id, const std::string& group_label,
                           const CoxeterType& type, int dim,
                           const std::string& torus_label) {
  CatalogEntry e;
  e.id = id;
  e.group_label = group_label;
  e.rep_label = "adjoint";
  e.concrete = false;
  e.types = {type};
  e.dim_expr = std::to_string(dim);
  e.principal_isotropy = torus_label;
  e.kernel_label = "Z(" + group_label + ")";
  e.template_inline = torus_history({type}, group_label, torus_label);
  e.notes = "adjoint representation; chamber history is the closed Weyl "
            "chamber of the maximal torus with centralizer walls";
  return e;
}

// The two SU(n)xU(1) representations on C^n (+) C that share group and
// principal isotropy but have distinct wall labels in their histories.
CatalogEntry sun_u1_entry(bool twisted) {
  CatalogEntry e;
  e.id = twisted ? "lie/sun-u1/twisted" : "lie/sun-u1/product";
  e.group_label = "SU({n})xU(1)";
  e.rep_label = twisted ? "cover of U(n) standard on C^n times rotation on C"
                        : "factor-wise product on C^n (+) C";
  e.concrete = false;
  e.types = {CoxeterType(CoxeterFamily::A, 1), CoxeterType(CoxeterFamily::A, 1)};
  e.dim_expr = "2*n+2";
  e.principal_isotropy = "SU({n-1})";
  e.kernel_label = "1";
  e.param = "n";
  e.constraints = "n>=2";

  HistoryLattice l;
  l.domain_size = 0;
  // W = A1 x A1 acting on two pairs of abstract roots
  const Permutation r0 = Permutation::from_cycles(4, {{0, 1}});
  const Permutation r1 = Permutation::from_cycles(4, {{2, 3}});
  l.weyl_model = PermGroup(4, {r0, r1});
  const std::string wall0 =
      twisted ? "S(U(1)xU({n-1}))" : "SU({n-1})xU(1)";
  l.nodes.push_back({"H", GroupRef::symbolic("SU({n-1})")});
  l.nodes.push_back({"K0", GroupRef::symbolic(wall0, r0)});
  l.nodes.push_back({"K1", GroupRef::symbolic("SU({n})x1", r1)});
  l.nodes.push_back({"G", GroupRef::symbolic("SU({n})xU(1)")});
  l.edges = {{"H", "K0"}, {"H", "K1"}, {"K0", "G"}, {"K1", "G"}};
  l.min_id = "H";
  l.max_id = "G";
  e.template_inline = std::move(l);
  e.notes = twisted
                ? "stabilizer of a generic section point (t e1, s): z=1 on the C "
                  "summand forces A e1 = e1; on the wall s=0 the circle part is "
                  "absorbed into the U(n-1) block, giving S(U(1)xU(n-1))"
                : "stabilizers factor: wall s=0 gives SU(n-1)xU(1), wall t=0 "
                  "gives SU(n)x1";
  return e;
}

}  // namespace

Catalog Catalog::builtin() {
  Catalog c;
  using F = CoxeterFamily;
  for (int r = 1; r <= 8; ++r) c.entries_.push_back(reflection_entry(CoxeterType(F::A, r)));
  for (int r = 2; r <= 8; ++r) c.entries_.push_back(reflection_entry(CoxeterType(F::B, r)));
  for (int r = 4; r <= 8; ++r) c.entries_.push_back(reflection_entry(CoxeterType(F::D, r)));
  for (int r = 6; r <= 8; ++r) c.entries_.push_back(reflection_entry(CoxeterType(F::E, r)));
  c.entries_.push_back(reflection_entry(CoxeterType(F::F, 4)));
  c.entries_.push_back(reflection_entry(CoxeterType(F::H, 3)));
  c.entries_.push_back(reflection_entry(CoxeterType(F::H, 4)));
  // I2(3) and I2(4) are the A2/B2 aliases and ship under those labels.
  for (int m = 5; m <= 12; ++m)
    c.entries_.push_back(reflection_entry(CoxeterType(F::I2, 2, m)));

  c.entries_.push_back(adjoint_entry("lie/su2/adjoint", "SU(2)",
                                     CoxeterType(F::A, 1), 3, "T^1"));
  c.entries_.push_back(adjoint_entry("lie/su3/adjoint", "SU(3)",
                                     CoxeterType(F::A, 2), 8, "T^2"));
  c.entries_.push_back(adjoint_entry("lie/su4/adjoint", "SU(4)",
                                     CoxeterType(F::A, 3), 15, "T^3"));
  c.entries_.push_back(adjoint_entry("lie/so5/adjoint", "SO(5)",
                                     CoxeterType(F::B, 2), 10, "T^2"));
  c.entries_.push_back(adjoint_entry("lie/so7/adjoint", "SO(7)",
                                     CoxeterType(F::B, 3), 21, "T^3"));
  c.entries_.push_back(adjoint_entry("lie/sp6/adjoint", "Sp(6)",
                                     CoxeterType(F::B, 3), 21, "T^3"));
  c.entries_.push_back(adjoint_entry("lie/so8/adjoint", "SO(8)",
                                     CoxeterType(F::D, 4), 28, "T^4"));
  c.entries_.push_back(adjoint_entry("lie/g2/adjoint", "G2",
                                     CoxeterType(F::I2, 2, 6), 14, "T^2"));

  c.entries_.push_back(sun_u1_entry(true));
  c.entries_.push_back(sun_u1_entry(false));
  return c;
}

// ---------------------------------------------------------------------------
// Templates, dims, models

const CatalogEntry* Catalog::find(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return &e;
  return nullptr;
}

HistoryLattice Catalog::history_template(const CatalogEntry& e,
                                         std::optional<long> n) const {
  if (!e.param.empty()) {
    if (!n)
      throw Error(ErrorKind::InvalidData,
                  "entry '" + e.id + "' is parameterized; a value for '" +
                      e.param + "' is required");
    if (!eval_constraint(e.constraints, *n))
      throw Error(ErrorKind::InvalidData,
                  "parameter " + std::to_string(*n) + " violates constraint '" +
                      e.constraints + "' of entry '" + e.id + "'");
  }
  if (!e.template_inline) return extract_history(product_root_system(e.types));
  HistoryLattice l = *e.template_inline;
  if (!e.param.empty()) {
    for (auto& node : l.nodes)
      if (node.ref.kind == GroupRef::Kind::Symbolic)
        node.ref.label = instantiate_placeholders(node.ref.label, *n);
  }
  return l;
}

int Catalog::real_dim(const CatalogEntry& e, std::optional<long> n) const {
  const long v = eval_int_expr(e.dim_expr, n);
  if (v < 0)
    throw Error(ErrorKind::InvalidData, "entry '" + e.id + "' has negative dimension");
  return static_cast<int>(v);
}

const PermGroup& Catalog::entry_model(const CatalogEntry& e) const {
  EntryCache& cache = cache_[e.id];
  if (!cache.model) {
    if (e.template_inline) {
      const HistoryNode* maxn = e.template_inline->find(e.template_inline->max_id);
      if (!maxn || maxn->ref.kind != GroupRef::Kind::Concrete)
        throw Error(ErrorKind::InvalidData,
                    "entry '" + e.id + "' has no concrete model");
      cache.model = maxn->ref.group;
    } else {
      cache.model = weyl_as_perm_group(product_root_system(e.types));
    }
  }
  return *cache.model;
}

const GroupSignature& Catalog::entry_signature(const CatalogEntry& e) const {
  EntryCache& cache = cache_[e.id];
  if (!cache.signature) {
    const PermGroup& model = entry_model(e);
    cache.signature = signature_of_quotient(
        model, PermGroup::trivial(model.domain_size()), &model, limits().enum_cap);
  }
  return *cache.signature;
}

// ---------------------------------------------------------------------------
// Lookups

namespace {

GroupSignature trivial_signature() {
  GroupSignature s;
  s.order = 1;
  s.derived_orders = {1};
  s.abelian_orders = {1};
  s.involution_count = 0;
  return s;
}

}  // namespace

const CatalogEntry* Catalog::lookup_concrete(const CoxeterType& type,
                                             const GroupSignature& eff_sig,
                                             const PermGroup& eff_model,
                                             const GroupSignature& iso_sig,
                                             std::uint64_t iso_bound) const {
  std::vector<const CatalogEntry*> matches;
  for (const auto& e : entries_) {
    if (!e.concrete || e.types.size() != 1 || !(e.types[0] == type)) continue;
    if (!(entry_signature(e) == eff_sig)) continue;
    if (!(iso_sig == trivial_signature())) continue;  // reflection entries
    if (eff_sig.order <= iso_bound &&
        !isomorphic(eff_model, entry_model(e), iso_bound))
      continue;
    matches.push_back(&e);
  }
  if (matches.empty())
    throw RecognitionError(
        RecognitionStep::Catalog,
        "no catalog entry for factor: weyl type " + type.label() +
            ", effective group of order " + std::to_string(eff_sig.order) +
            ", principal isotropy of order " + std::to_string(iso_sig.order));
  if (matches.size() > 1)
    throw RecognitionError(RecognitionStep::Catalog,
                           "ambiguous catalog entries '" + matches[0]->id +
                               "' and '" + matches[1]->id + "'");
  return matches[0];
}

SymbolicMatch Catalog::lookup_symbolic(const std::string& group_label,
                                       std::vector<CoxeterType> type_multiset,
                                       const std::string& isotropy_label,
                                       const ValidatedHistory& input) const {
  std::sort(type_multiset.begin(), type_multiset.end());
  std::vector<SymbolicMatch> matches;
  for (const auto& e : entries_) {
    if (e.concrete) continue;
    std::vector<CoxeterType> et = e.types;
    std::sort(et.begin(), et.end());
    if (!(et == type_multiset)) continue;

    SymbolicMatch m;
    m.entry = &e;
    if (e.param.empty()) {
      if (e.group_label != group_label) continue;
      if (e.principal_isotropy != isotropy_label) continue;
      m.real_dim = real_dim(e);
      m.kernel_label = e.kernel_label;
      m.group_label = e.group_label;
    } else {
      const auto n = solve_label_pattern(e.group_label, group_label);
      if (!n || !eval_constraint(e.constraints, *n)) continue;
      if (instantiate_placeholders(e.principal_isotropy, *n) != isotropy_label)
        continue;
      m.n = n;
      m.real_dim = real_dim(e, n);
      m.kernel_label = instantiate_placeholders(e.kernel_label, *n);
      m.group_label = group_label;
    }
    ValidatedHistory tmpl;
    try {
      tmpl = validate(history_template(e, m.n));
    } catch (const Error& err) {
      throw RecognitionError(RecognitionStep::Catalog,
                             "entry '" + e.id + "' has an invalid template: " +
                                 err.what());
    }
    if (!lattices_isomorphic(input, tmpl, limits().enum_cap)) continue;
    matches.push_back(std::move(m));
  }
  if (matches.empty())
    throw RecognitionError(RecognitionStep::Catalog,
                           "no catalog entry for symbolic history: group '" +
                               group_label + "', isotropy '" + isotropy_label +
                               "'");
  if (matches.size() > 1)
    throw RecognitionError(RecognitionStep::Catalog,
                           "ambiguous catalog entries '" + matches[0].entry->id +
                               "' and '" + matches[1].entry->id + "'");
  return matches[0];
}

// ---------------------------------------------------------------------------
// Integrity

std::vector<Catalog::IntegrityIssue> Catalog::integrity_check() const {
  std::vector<IntegrityIssue> issues;
  auto issue = [&](const std::string& id, const std::string& msg) {
    issues.push_back({id, msg});
  };

  for (size_t i = 0; i < entries_.size(); ++i)
    for (size_t j = i + 1; j < entries_.size(); ++j)
      if (entries_[i].id == entries_[j].id)
        issue(entries_[i].id, "duplicate entry id");

  for (const auto& e : entries_) {
    std::optional<long> probe;
    if (!e.param.empty()) {
      for (long n = 0; n <= 64 && !probe; ++n)
        try {
          if (eval_constraint(e.constraints, n)) probe = n;
        } catch (const Error& err) {
          issue(e.id, err.what());
          break;
        }
      if (!probe) {
        issue(e.id, "no parameter value satisfies constraint '" + e.constraints + "'");
        continue;
      }
    }
    try {
      (void)real_dim(e, probe);
    } catch (const Error& err) {
      issue(e.id, std::string("dimension expression: ") + err.what());
      continue;
    }
    if (e.concrete && e.principal_isotropy != "1") {
      issue(e.id, "concrete entries must declare trivial principal isotropy");
      continue;
    }
    try {
      const ValidatedHistory vh = validate(history_template(e, probe));
      const WeylData w = weyl_from_history(vh);
      std::vector<CoxeterType> got;
      for (const auto& c : w.components) got.push_back(c.type);
      std::sort(got.begin(), got.end());
      std::vector<CoxeterType> want = e.types;
      std::sort(want.begin(), want.end());
      if (!(got == want))
        issue(e.id, "template weyl type " + product_label(got) +
                        " differs from declared " + product_label(want));
    } catch (const Error& err) {
      issue(e.id, std::string("template: ") + err.what());
    }
  }

  // Lookup-key collisions: same keys and isomorphic templates.
  for (size_t i = 0; i < entries_.size(); ++i) {
    for (size_t j = i + 1; j < entries_.size(); ++j) {
      const CatalogEntry& a = entries_[i];
      const CatalogEntry& b = entries_[j];
      if (a.concrete != b.concrete) continue;
      std::vector<CoxeterType> ta = a.types, tb = b.types;
      std::sort(ta.begin(), ta.end());
      std::sort(tb.begin(), tb.end());
      if (!(ta == tb)) continue;
      if (a.concrete) {
        issue(a.id, "concrete entries '" + a.id + "' and '" + b.id +
                        "' share weyl type " + product_label(ta));
        continue;
      }
      if (a.group_label != b.group_label ||
          a.principal_isotropy != b.principal_isotropy)
        continue;
      try {
        std::optional<long> pa, pb;
        if (!a.param.empty())
          for (long n = 0; n <= 64 && !pa; ++n)
            if (eval_constraint(a.constraints, n)) pa = n;
        if (!b.param.empty())
          for (long n = 0; n <= 64 && !pb; ++n)
            if (eval_constraint(b.constraints, n)) pb = n;
        const ValidatedHistory va = validate(history_template(a, pa));
        const ValidatedHistory vb = validate(history_template(b, pb));
        if (lattices_isomorphic(va, vb))
          issue(a.id, "entries '" + a.id + "' and '" + b.id +
                          "' are indistinguishable duplicates");
      } catch (const Error&) {
        // template issues are reported above
      }
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string types_to_string(const std::vector<CoxeterType>& ts) {
  return product_label(ts);
}

}  // namespace

std::string Catalog::to_json(bool materialize_templates) const {
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries_) {
    ordered_json je;
    je["id"] = e.id;
    je["group_label"] = e.group_label;
    je["rep_label"] = e.rep_label;
    // dimension: plain number when it is one
    bool numeric = !e.dim_expr.empty() &&
                   std::all_of(e.dim_expr.begin(), e.dim_expr.end(),
                               [](unsigned char c) { return std::isdigit(c); });
    if (numeric)
      je["real_dim"] = std::stol(e.dim_expr);
    else
      je["real_dim"] = e.dim_expr;
    if (e.types.size() == 1)
      je["weyl_type"] = e.types[0].label();
    else {
      ordered_json ts = ordered_json::array();
      for (const auto& t : e.types) ts.push_back(t.label());
      je["weyl_type"] = ts;
    }
    je["principal_isotropy"] = e.principal_isotropy;
    je["kernel_label"] = e.kernel_label;
    if (!e.param.empty()) {
      je["param"] = e.param;
      je["constraints"] = e.constraints;
    }
    if (e.template_inline && (!materialize_templates || !e.param.empty())) {
      je["history_template"] =
          ordered_json::parse(serialize_history(*e.template_inline));
    } else if (!e.template_inline && !materialize_templates) {
      ordered_json sh;
      sh["coxeter_type"] = types_to_string(e.types);
      je["history_template"] = sh;
    } else {
      je["history_template"] =
          ordered_json::parse(serialize_history(history_template(e)));
    }
    if (!e.notes.empty()) je["notes"] = e.notes;
    arr.push_back(std::move(je));
  }
  return arr.dump(2);
}

Catalog Catalog::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidData, std::string("catalog JSON parse error: ") + e.what());
  }
  Catalog c;
  try {
    if (!j.is_array())
      throw Error(ErrorKind::InvalidData, "catalog: top level must be an array");
    for (const auto& je : j) {
      CatalogEntry e;
      e.id = je.at("id").get<std::string>();
      e.group_label = je.at("group_label").get<std::string>();
      e.rep_label = je.value("rep_label", std::string());
      const auto& dim = je.at("real_dim");
      e.dim_expr = dim.is_string() ? dim.get<std::string>()
                                   : std::to_string(dim.get<long>());
      const auto& wt = je.at("weyl_type");
      if (wt.is_string())
        e.types = parse_type_product(wt.get<std::string>());
      else
        for (const auto& t : wt) e.types.push_back(parse_type(t.get<std::string>()));
      e.principal_isotropy = je.at("principal_isotropy").get<std::string>();
      e.kernel_label = je.value("kernel_label", std::string("1"));
      e.param = je.value("param", std::string());
      e.constraints = je.value("constraints", std::string());
      e.notes = je.value("notes", std::string());
      const auto& ht = je.at("history_template");
      if (ht.contains("coxeter_type")) {
        // shorthand: generated reflection template
        const auto tmpl_types = parse_type_product(ht.at("coxeter_type").get<std::string>());
        e.concrete = true;
        if (!(tmpl_types == e.types))
          e.template_inline = extract_history(product_root_system(tmpl_types));
      } else {
        HistoryLattice l = parse_history(ht.dump());
        e.concrete = !l.nodes.empty() &&
                     l.nodes.front().ref.kind == GroupRef::Kind::Concrete;
        e.template_inline = std::move(l);
      }
      c.entries_.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidData, std::string("catalog JSON schema error: ") + e.what());
  }
  return c;
}

Catalog Catalog::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::InvalidData, "cannot open catalog file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace polar
