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

#include "polar/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace polar {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

CoxeterType::CoxeterType(CoxeterFamily f, int r, int mm) : family(f), rank(r), m(mm) {
  // Canonicalize the dihedral coincidences first.
  if (family == CoxeterFamily::I2) {
    if (rank != 2 || m < 3)
      throw Error(ErrorKind::InvalidData, "illegal Coxeter type: I2 needs rank 2, m >= 3");
    if (m == 3) {
      family = CoxeterFamily::A;
      rank = 2;
      m = 0;
    } else if (m == 4) {
      family = CoxeterFamily::B;
      rank = 2;
      m = 0;
    }
    return;
  }
  m = 0;
  const bool ok = (family == CoxeterFamily::A && rank >= 1) ||
                  (family == CoxeterFamily::B && rank >= 2) ||
                  (family == CoxeterFamily::D && rank >= 4) ||
                  (family == CoxeterFamily::E && rank >= 6 && rank <= 8) ||
                  (family == CoxeterFamily::F && rank == 4) ||
                  (family == CoxeterFamily::H && (rank == 3 || rank == 4));
  if (!ok)
    throw Error(ErrorKind::InvalidData, "illegal Coxeter type: rank out of range");
}

std::string CoxeterType::label() const {
  switch (family) {
    case CoxeterFamily::A: return "A" + std::to_string(rank);
    case CoxeterFamily::B: return "B" + std::to_string(rank);
    case CoxeterFamily::D: return "D" + std::to_string(rank);
    case CoxeterFamily::E: return "E" + std::to_string(rank);
    case CoxeterFamily::F: return "F" + std::to_string(rank);
    case CoxeterFamily::H: return "H" + std::to_string(rank);
    case CoxeterFamily::I2: return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

std::uint64_t CoxeterType::weyl_order() const {
  switch (family) {
    case CoxeterFamily::A: return factorial(rank + 1);
    case CoxeterFamily::B: return (1ull << rank) * factorial(rank);
    case CoxeterFamily::D: return (1ull << (rank - 1)) * factorial(rank);
    case CoxeterFamily::E:
      return rank == 6 ? 51840ull : rank == 7 ? 2903040ull : 696729600ull;
    case CoxeterFamily::F: return 1152;
    case CoxeterFamily::H: return rank == 3 ? 120 : 14400;
    case CoxeterFamily::I2: return 2ull * static_cast<std::uint64_t>(m);
  }
  return 0;
}

int CoxeterType::root_count() const {
  switch (family) {
    case CoxeterFamily::A: return rank * (rank + 1);
    case CoxeterFamily::B: return 2 * rank * rank;
    case CoxeterFamily::D: return 2 * rank * (rank - 1);
    case CoxeterFamily::E: return rank == 6 ? 72 : rank == 7 ? 126 : 240;
    case CoxeterFamily::F: return 48;
    case CoxeterFamily::H: return rank == 3 ? 30 : 120;
    case CoxeterFamily::I2: return 2 * m;
  }
  return 0;
}

bool CoxeterType::has_matrix_model() const {
  if (family != CoxeterFamily::I2) return true;
  return m == 6;  // I2(3)/I2(4) canonicalize away; G2's Gram is rational
}

CoxeterType parse_type(const std::string& text) {
  if (text == "G2") return CoxeterType(CoxeterFamily::I2, 2, 6);
  if (text.size() >= 5 && text.rfind("I2(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(3, text.size() - 4);
    if (inner.empty() || !std::all_of(inner.begin(), inner.end(),
                                      [](unsigned char c) { return std::isdigit(c); }))
      throw Error(ErrorKind::InvalidData, "cannot parse Coxeter type '" + text + "'");
    return CoxeterType(CoxeterFamily::I2, 2, std::stoi(inner));
  }
  if (text.size() < 2)
    throw Error(ErrorKind::InvalidData, "cannot parse Coxeter type '" + text + "'");
  CoxeterFamily fam;
  switch (text[0]) {
    case 'A': fam = CoxeterFamily::A; break;
    case 'B': fam = CoxeterFamily::B; break;
    case 'D': fam = CoxeterFamily::D; break;
    case 'E': fam = CoxeterFamily::E; break;
    case 'F': fam = CoxeterFamily::F; break;
    case 'H': fam = CoxeterFamily::H; break;
    default:
      throw Error(ErrorKind::InvalidData, "cannot parse Coxeter type '" + text + "'");
  }
  const std::string digits = text.substr(1);
  if (!std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorKind::InvalidData, "cannot parse Coxeter type '" + text + "'");
  return CoxeterType(fam, std::stoi(digits));
}

std::vector<CoxeterType> parse_type_product(const std::string& text) {
  std::vector<CoxeterType> out;
  size_t start = 0;
  while (true) {
    const size_t at = text.find('x', start);
    const std::string part =
        at == std::string::npos ? text.substr(start) : text.substr(start, at - start);
    if (part.empty())
      throw Error(ErrorKind::InvalidData, "cannot parse type product '" + text + "'");
    out.push_back(parse_type(part));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

std::string product_label(const std::vector<CoxeterType>& types) {
  std::string s;
  for (size_t i = 0; i < types.size(); ++i) {
    if (i) s += "x";
    s += types[i].label();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Root systems

namespace {

// Gram matrix of the simple roots in the standard realization of each type.
QMatrix gram_matrix(const CoxeterType& t) {
  const int n = t.rank;
  QMatrix g(n, n);
  auto path_edges = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) {
      g.at(i, i + 1) = ScalarQ5(-1);
      g.at(i + 1, i) = ScalarQ5(-1);
    }
  };
  switch (t.family) {
    case CoxeterFamily::A:
      for (int i = 0; i < n; ++i) g.at(i, i) = ScalarQ5(2);
      path_edges(n);
      break;
    case CoxeterFamily::B:
      // long roots first, one short root at the end
      for (int i = 0; i < n - 1; ++i) g.at(i, i) = ScalarQ5(2);
      g.at(n - 1, n - 1) = ScalarQ5(1);
      path_edges(n);
      break;
    case CoxeterFamily::D:
      for (int i = 0; i < n; ++i) g.at(i, i) = ScalarQ5(2);
      path_edges(n - 1);
      g.at(n - 3, n - 1) = ScalarQ5(-1);
      g.at(n - 1, n - 3) = ScalarQ5(-1);
      break;
    case CoxeterFamily::E:
      for (int i = 0; i < n; ++i) g.at(i, i) = ScalarQ5(2);
      path_edges(n - 1);
      g.at(2, n - 1) = ScalarQ5(-1);
      g.at(n - 1, 2) = ScalarQ5(-1);
      break;
    case CoxeterFamily::F:
      g.at(0, 0) = g.at(1, 1) = ScalarQ5(2);
      g.at(2, 2) = g.at(3, 3) = ScalarQ5(1);
      g.at(0, 1) = g.at(1, 0) = ScalarQ5(-1);
      g.at(1, 2) = g.at(2, 1) = ScalarQ5(-1);
      g.at(2, 3) = g.at(3, 2) = ScalarQ5(rational(-1, 2));
      break;
    case CoxeterFamily::H: {
      for (int i = 0; i < n; ++i) g.at(i, i) = ScalarQ5(2);
      // first edge is the 5; <a0,a1> = -2cos(pi/5) = -(1+sqrt5)/2
      const ScalarQ5 mphi(rational(-1, 2), rational(-1, 2));
      g.at(0, 1) = g.at(1, 0) = mphi;
      for (int i = 1; i + 1 < n; ++i) {
        g.at(i, i + 1) = ScalarQ5(-1);
        g.at(i + 1, i) = ScalarQ5(-1);
      }
      break;
    }
    case CoxeterFamily::I2:
      // only I2(6) reaches here; crystallographic G2 Gram
      g.at(0, 0) = ScalarQ5(2);
      g.at(1, 1) = ScalarQ5(6);
      g.at(0, 1) = g.at(1, 0) = ScalarQ5(-3);
      break;
  }
  return g;
}

RootSystem dihedral_root_system(const CoxeterType& t) {
  // 2m abstract roots on a circle, index k standing for the direction at
  // angle k*pi/m; the reflection orthogonal to root k sends j to 2k+m-j.
  RootSystem rs;
  rs.factors = {t};
  rs.rank = 2;
  rs.domain_size = 2 * t.m;
  const int mm = 2 * t.m;
  auto refl = [&](int k) {
    std::vector<int> img(static_cast<size_t>(mm));
    for (int j = 0; j < mm; ++j)
      img[static_cast<size_t>(j)] = ((2 * k + t.m - j) % mm + mm) % mm;
    return Permutation::from_images(std::move(img));
  };
  rs.simple_perms = {refl(0), refl(1)};
  rs.has_matrix_model = false;
  return rs;
}

}  // namespace

RootSystem build_root_system(const CoxeterType& t) {
  if (!t.has_matrix_model()) return dihedral_root_system(t);

  RootSystem rs;
  rs.factors = {t};
  rs.rank = t.rank;
  rs.has_matrix_model = true;
  rs.gram = gram_matrix(t);

  // Close {±simple roots} under the simple reflections.
  std::set<QVector> closed;
  std::vector<QVector> queue;
  for (int i = 0; i < t.rank; ++i) {
    QVector e(t.rank);
    e[i] = ScalarQ5(1);
    QVector mi(t.rank);
    mi[i] = ScalarQ5(-1);
    for (auto& v : {e, mi})
      if (closed.insert(v).second) queue.push_back(v);
  }
  for (size_t q = 0; q < queue.size(); ++q) {
    for (int i = 0; i < t.rank; ++i) {
      QVector e(t.rank);
      e[i] = ScalarQ5(1);
      QVector r = reflect_form(queue[q], e, rs.gram);
      if (closed.insert(r).second) queue.push_back(r);
    }
  }
  rs.roots.assign(closed.begin(), closed.end());  // std::set iterates sorted
  rs.domain_size = static_cast<int>(rs.roots.size());
  if (rs.domain_size != t.root_count())
    throw Error(ErrorKind::Internal,
                "root closure of " + t.label() + " has unexpected size " +
                    std::to_string(rs.domain_size));

  std::map<QVector, int> pos;
  for (int i = 0; i < rs.domain_size; ++i) pos[rs.roots[static_cast<size_t>(i)]] = i;
  for (int i = 0; i < t.rank; ++i) {
    QVector e(t.rank);
    e[i] = ScalarQ5(1);
    rs.simple_indices.push_back(pos.at(e));
  }
  for (int i = 0; i < t.rank; ++i) {
    QVector e(t.rank);
    e[i] = ScalarQ5(1);
    std::vector<int> img(static_cast<size_t>(rs.domain_size));
    for (int j = 0; j < rs.domain_size; ++j) {
      QVector r = reflect_form(rs.roots[static_cast<size_t>(j)], e, rs.gram);
      img[static_cast<size_t>(j)] = pos.at(r);
    }
    rs.simple_perms.push_back(Permutation::from_images(std::move(img)));
  }
  return rs;
}

RootSystem product_root_system(const std::vector<CoxeterType>& types) {
  if (types.empty())
    throw Error(ErrorKind::InvalidData, "empty type product");
  std::vector<RootSystem> parts;
  parts.reserve(types.size());
  for (const auto& t : types) parts.push_back(build_root_system(t));
  if (parts.size() == 1) return std::move(parts[0]);

  RootSystem rs;
  bool matrix = true;
  for (const auto& p : parts) {
    rs.factors.push_back(p.factors[0]);
    rs.rank += p.rank;
    rs.domain_size += p.domain_size;
    matrix = matrix && p.has_matrix_model;
  }
  rs.has_matrix_model = matrix;

  int dom_off = 0;
  int rank_off = 0;
  for (const auto& p : parts) {
    for (const auto& sp : p.simple_perms) {
      std::vector<int> img(static_cast<size_t>(rs.domain_size));
      for (int i = 0; i < rs.domain_size; ++i) img[static_cast<size_t>(i)] = i;
      for (int i = 0; i < p.domain_size; ++i)
        img[static_cast<size_t>(dom_off + i)] = dom_off + sp(i);
      rs.simple_perms.push_back(Permutation::from_images(std::move(img)));
    }
    dom_off += p.domain_size;
    rank_off += p.rank;
  }

  if (matrix) {
    rs.gram = QMatrix(rs.rank, rs.rank);
    int ro = 0;
    dom_off = 0;
    for (const auto& p : parts) {
      for (int i = 0; i < p.rank; ++i)
        for (int j = 0; j < p.rank; ++j) rs.gram.at(ro + i, ro + j) = p.gram.at(i, j);
      for (const auto& root : p.roots) {
        QVector v(rs.rank);
        for (int i = 0; i < p.rank; ++i) v[ro + i] = root[i];
        rs.roots.push_back(std::move(v));
      }
      for (int idx : p.simple_indices) rs.simple_indices.push_back(dom_off + idx);
      ro += p.rank;
      dom_off += p.domain_size;
    }
  }
  return rs;
}

QMatrix RootSystem::reflection_matrix(const QVector& root) const {
  if (!has_matrix_model)
    throw Error(ErrorKind::InvalidData, "no matrix model for this root system");
  QMatrix s(rank, rank);
  const ScalarQ5 nn = form_value(gram, root, root);
  const QVector gr = gram.apply(root);
  for (int j = 0; j < rank; ++j) {
    const ScalarQ5 coeff = (ScalarQ5(2) * gr[j]) / nn;
    for (int i = 0; i < rank; ++i) {
      s.at(i, j) = (i == j ? ScalarQ5(1) : ScalarQ5(0)) - coeff * root[i];
    }
  }
  return s;
}

QMatrix RootSystem::matrix_of(const Permutation& w) const {
  if (!has_matrix_model)
    throw Error(ErrorKind::InvalidData, "no matrix model for this root system");
  QMatrix mat(rank, rank);
  for (int j = 0; j < rank; ++j) {
    const QVector& image = roots[static_cast<size_t>(w(simple_indices[static_cast<size_t>(j)]))];
    for (int i = 0; i < rank; ++i) mat.at(i, j) = image[i];
  }
  return mat;
}

PermGroup weyl_as_perm_group(const RootSystem& rs) {
  return PermGroup(rs.domain_size, rs.simple_perms);
}

Chamber chamber_faces(const RootSystem& rs) {
  Chamber c;
  c.rank = rs.rank;
  c.has_points = rs.has_matrix_model;
  if (!c.has_points) return c;
  const QMatrix inv = rs.gram.inverse();
  c.face_reps.reserve(1ull << rs.rank);
  for (std::uint32_t mask = 0; mask < (1u << rs.rank); ++mask) {
    // B(x, alpha_j) = 0 exactly on the walls in the mask, 1 elsewhere.
    QVector chi(rs.rank);
    for (int j = 0; j < rs.rank; ++j)
      chi[j] = (mask >> j) & 1u ? ScalarQ5(0) : ScalarQ5(1);
    c.face_reps.push_back(inv.apply(chi));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Diagrams and classification

CoxeterDiagram coxeter_matrix(const std::vector<Permutation>& simple_reflections) {
  CoxeterDiagram d;
  d.n = static_cast<int>(simple_reflections.size());
  for (const auto& r : simple_reflections)
    if (r.order() != 2)
      throw Error(ErrorKind::InvalidData,
                  "coxeter_matrix: input permutation is not an involution");
  for (int i = 0; i < d.n; ++i)
    for (int j = i + 1; j < d.n; ++j) {
      const std::uint64_t m =
          simple_reflections[static_cast<size_t>(i)]
              .compose(simple_reflections[static_cast<size_t>(j)])
              .order();
      if (m == 1)
        throw Error(ErrorKind::InvalidData,
                    "coxeter_matrix: two inputs are the same reflection");
      if (m >= 3) d.edges[{i, j}] = static_cast<int>(m);
    }
  return d;
}

namespace {

[[noreturn]] void not_finite(const std::vector<int>& nodes) {
  std::string s;
  for (int v : nodes) s += (s.empty() ? "" : ",") + std::to_string(v);
  throw RecognitionError(RecognitionStep::Diagram,
                         "diagram component {" + s + "} is not of finite type");
}

CoxeterType classify_component(const std::vector<int>& nodes,
                               const CoxeterDiagram& d) {
  const int k = static_cast<int>(nodes.size());
  if (k == 1) return CoxeterType(CoxeterFamily::A, 1);

  std::map<int, std::vector<int>> adj;
  int edge_count = 0;
  int max_label = 2;
  std::vector<std::pair<std::pair<int, int>, int>> big_edges;  // label > 3
  for (int a : nodes)
    for (int b : nodes) {
      if (a >= b) continue;
      const int m = d.label(a, b);
      if (m > 2) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++edge_count;
        max_label = std::max(max_label, m);
        if (m > 3) big_edges.push_back({{a, b}, m});
      }
    }
  if (edge_count != k - 1) not_finite(nodes);  // cycles are affine or worse

  int branch = -1, branch_count = 0;
  std::vector<int> leaves;
  for (int a : nodes) {
    const int deg = static_cast<int>(adj[a].size());
    if (deg > 3) not_finite(nodes);
    if (deg == 3) {
      branch = a;
      ++branch_count;
    }
    if (deg <= 1) leaves.push_back(a);
  }
  if (branch_count > 1) not_finite(nodes);

  if (k == 2) {
    // single edge, any label m >= 3
    return CoxeterType(CoxeterFamily::I2, 2, max_label);
  }

  if (big_edges.size() > 1) not_finite(nodes);

  if (branch_count == 1) {
    // simply-laced fork: D or E by arm lengths
    if (!big_edges.empty()) not_finite(nodes);
    std::vector<int> arms;
    for (int next : adj[branch]) {
      int len = 1, prev = branch, cur = next;
      while (static_cast<int>(adj[cur].size()) == 2) {
        const auto& nb = adj[cur];
        const int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
        ++len;
      }
      if (static_cast<int>(adj[cur].size()) == 3) not_finite(nodes);
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return CoxeterType(CoxeterFamily::D, k);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
      return CoxeterType(CoxeterFamily::E, k);
    not_finite(nodes);
  }

  // path of length k >= 3
  if (big_edges.empty()) return CoxeterType(CoxeterFamily::A, k);
  const auto [edge, m] = big_edges[0];
  const bool at_end =
      adj[edge.first].size() == 1 || adj[edge.second].size() == 1;
  if (m == 4) {
    if (at_end) return CoxeterType(CoxeterFamily::B, k);
    if (k == 4) return CoxeterType(CoxeterFamily::F, 4);
    not_finite(nodes);
  }
  if (m == 5 && at_end && (k == 3 || k == 4))
    return CoxeterType(CoxeterFamily::H, k);
  not_finite(nodes);
}

}  // namespace

std::vector<DiagramComponent> classify(const CoxeterDiagram& d) {
  std::vector<int> comp(static_cast<size_t>(d.n), -1);
  std::vector<DiagramComponent> out;
  for (int start = 0; start < d.n; ++start) {
    if (comp[static_cast<size_t>(start)] >= 0) continue;
    std::vector<int> nodes{start};
    comp[static_cast<size_t>(start)] = start;
    for (size_t q = 0; q < nodes.size(); ++q)
      for (int b = 0; b < d.n; ++b)
        if (comp[static_cast<size_t>(b)] < 0 && d.label(nodes[q], b) > 2) {
          comp[static_cast<size_t>(b)] = start;
          nodes.push_back(b);
        }
    std::sort(nodes.begin(), nodes.end());
    DiagramComponent dc{nodes, classify_component(nodes, d)};
    out.push_back(std::move(dc));
  }
  // components found in order of smallest node already
  return out;
}

}  // namespace polar
