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

#include "polar/permgroup.hpp"

#include "polar/limits.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace polar {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

}  // namespace

Limits& limits() {
  static Limits instance;
  return instance;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity(int n) {
  Permutation p;
  p.img.resize(static_cast<size_t>(n));
  std::iota(p.img.begin(), p.img.end(), 0);
  return p;
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int v : images) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw Error(ErrorKind::InvalidData, "permutation images are not a bijection");
    seen[static_cast<size_t>(v)] = 1;
  }
  Permutation p;
  p.img = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(int n,
                                     const std::vector<std::vector<int>>& cycles) {
  Permutation p = identity(n);
  for (const auto& cyc : cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      const int from = cyc[i];
      const int to = cyc[(i + 1) % cyc.size()];
      if (from < 0 || from >= n || to < 0 || to >= n)
        throw Error(ErrorKind::InvalidData, "cycle point out of domain");
      p.img[static_cast<size_t>(from)] = to;
    }
  }
  return from_images(std::move(p.img));  // re-validate
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img[static_cast<size_t>(i)] != i) return false;
  return true;
}

Permutation Permutation::compose(const Permutation& rhs) const {
  if (degree() != rhs.degree())
    throw Error(ErrorKind::InvalidData, "permutation domain mismatch");
  Permutation r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i)
    r.img[i] = img[static_cast<size_t>(rhs.img[i])];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i)
    r.img[static_cast<size_t>(img[i])] = static_cast<int>(i);
  return r;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  return g.compose(*this).compose(g.inverse());
}

std::uint64_t Permutation::order() const {
  std::vector<char> seen(img.size(), 0);
  std::uint64_t ord = 1;
  for (size_t i = 0; i < img.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = static_cast<size_t>(img[j]);
      ++len;
    }
    ord = lcm_u64(ord, len);
  }
  return ord;
}

std::string Permutation::cycle_str() const {
  std::vector<char> seen(img.size(), 0);
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < img.size(); ++i) {
    if (seen[i] || img[i] == static_cast<int>(i)) continue;
    any = true;
    os << '(';
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) os << ' ';
      os << j;
      first = false;
      j = static_cast<size_t>(img[j]);
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

bool operator==(const Permutation& a, const Permutation& b) { return a.img == b.img; }
bool operator<(const Permutation& a, const Permutation& b) { return a.img < b.img; }

std::uint64_t element_order(const Permutation& p) { return p.order(); }

std::uint64_t hash_images(const std::vector<int>& img) {
  std::uint64_t h = 1469598103934665603ull;
  for (int v : img) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t PermHash::operator()(const Permutation& p) const {
  return static_cast<std::size_t>(hash_images(p.img));
}

// ---------------------------------------------------------------------------
// Stabilizer chain

namespace {

constexpr std::uint64_t kTransversalMemoryLimit = 64ull * 1000 * 1000;  // ints

int min_moved_point(const Permutation& g) {
  for (int i = 0; i < g.degree(); ++i)
    if (g(i) != i) return i;
  return -1;
}

struct ChainBuilder {
  int domain;
  std::vector<Permutation> strong;
  std::vector<int> base;
  std::vector<StabChainLevel> levels;

  bool fixes_base_prefix(const Permutation& g, size_t upto) const {
    for (size_t j = 0; j < upto; ++j)
      if (g(base[j]) != base[j]) return false;
    return true;
  }

  void ensure_base_covers(const Permutation& g) {
    if (g.is_identity()) return;
    if (!fixes_base_prefix(g, base.size())) return;
    base.push_back(min_moved_point(g));
    levels.emplace_back();
  }

  std::vector<const Permutation*> level_gens(size_t i) const {
    std::vector<const Permutation*> out;
    for (const auto& s : strong)
      if (fixes_base_prefix(s, i)) out.push_back(&s);
    return out;
  }

  void recompute_level(size_t i) {
    StabChainLevel& lv = levels[i];
    lv.base = base[i];
    lv.orbit.clear();
    lv.orbit_pos.assign(static_cast<size_t>(domain), -1);
    lv.transversal.clear();
    lv.orbit.push_back(lv.base);
    lv.orbit_pos[static_cast<size_t>(lv.base)] = 0;
    lv.transversal.push_back(Permutation::identity(domain));
    const auto gens = level_gens(i);
    std::uint64_t mem = 0;
    for (size_t a = 0; a < lv.orbit.size(); ++a) {
      for (const Permutation* s : gens) {
        const int q = (*s)(lv.orbit[a]);
        if (lv.orbit_pos[static_cast<size_t>(q)] >= 0) continue;
        lv.orbit_pos[static_cast<size_t>(q)] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.transversal.push_back(s->compose(lv.transversal[a]));
        mem += static_cast<std::uint64_t>(domain);
        if (mem > kTransversalMemoryLimit)
          throw Error(ErrorKind::Limit,
                      "stabilizer chain transversals exceed the memory limit");
      }
    }
  }

  std::pair<Permutation, size_t> sift(Permutation g, size_t from) const {
    for (size_t l = from; l < levels.size(); ++l) {
      const StabChainLevel& lv = levels[l];
      const int beta = g(lv.base);
      if (!lv.in_orbit(beta)) return {std::move(g), l};
      g = lv.rep_to(beta).inverse().compose(g);
    }
    return {std::move(g), levels.size()};
  }
};

}  // namespace

StabChain build_stab_chain(int domain, std::vector<Permutation> gens) {
  ChainBuilder b;
  b.domain = domain;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (auto& g : gens) {
    if (g.degree() != domain)
      throw Error(ErrorKind::InvalidData, "generator domain mismatch");
    if (!g.is_identity()) b.strong.push_back(std::move(g));
  }
  for (const auto& g : b.strong) b.ensure_base_covers(g);

  for (size_t i = 0; i < b.levels.size(); ++i) b.recompute_level(i);

  // Bottom-up verification sweep; see the invariant note in the header.
  if (!b.levels.empty()) {
    size_t i = b.levels.size() - 1;
    while (true) {
      b.recompute_level(i);
      bool complete = true;
      const auto gens_i = b.level_gens(i);
      const StabChainLevel& lv = b.levels[i];
      for (size_t a = 0; a < lv.orbit.size() && complete; ++a) {
        for (const Permutation* s : gens_i) {
          const int q = (*s)(lv.orbit[a]);
          Permutation schreier =
              lv.rep_to(q).inverse().compose(*s).compose(lv.transversal[a]);
          if (schreier.is_identity()) continue;
          auto [residue, stuck] = b.sift(std::move(schreier), i + 1);
          if (residue.is_identity()) continue;
          b.strong.push_back(residue);
          if (stuck == b.levels.size()) {
            b.base.push_back(min_moved_point(residue));
            b.levels.emplace_back();
          }
          i = stuck;
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      if (i == 0) break;
      --i;
    }
  }

  StabChain chain;
  chain.domain = domain;
  chain.strong_gens = std::move(b.strong);
  chain.base = std::move(b.base);
  chain.levels = std::move(b.levels);
  chain.order = 1;
  for (const auto& lv : chain.levels)
    chain.order *= static_cast<std::uint64_t>(lv.orbit.size());
  return chain;
}

std::pair<Permutation, size_t> StabChain::sift(Permutation g, size_t from) const {
  for (size_t l = from; l < levels.size(); ++l) {
    const StabChainLevel& lv = levels[l];
    const int beta = g(lv.base);
    if (!lv.in_orbit(beta)) return {std::move(g), l};
    g = lv.rep_to(beta).inverse().compose(g);
  }
  return {std::move(g), levels.size()};
}

bool StabChain::contains(const Permutation& g) const {
  if (g.degree() != domain) return false;
  auto [residue, stuck] = sift(g, 0);
  return stuck == levels.size() && residue.is_identity();
}

Permutation canonical_coset_rep(const Permutation& g, const StabChain& n_chain) {
  Permutation h = g;
  for (const StabChainLevel& lv : n_chain.levels) {
    size_t best = 0;
    int best_val = h(lv.orbit[0]);
    for (size_t a = 1; a < lv.orbit.size(); ++a) {
      const int v = h(lv.orbit[a]);
      if (v < best_val) {
        best_val = v;
        best = a;
      }
    }
    h = h.compose(lv.transversal[best]);
  }
  return h;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int domain) : domain_(domain) {}

PermGroup::PermGroup(int domain, std::vector<Permutation> gens) : domain_(domain) {
  for (const auto& g : gens)
    if (g.degree() != domain)
      throw Error(ErrorKind::InvalidData, "generator domain mismatch");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::erase_if(gens, [](const Permutation& g) { return g.is_identity(); });
  gens_ = std::move(gens);
}

const StabChain& PermGroup::chain() const {
  if (!chain_)
    chain_ = std::make_shared<const StabChain>(build_stab_chain(domain_, gens_));
  return *chain_;
}

std::uint64_t PermGroup::order() const {
  if (known_order_) return *known_order_;
  return chain().order;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != domain_)
    throw Error(ErrorKind::InvalidData, "membership test: domain mismatch");
  if (g.is_identity()) return true;
  if (gens_.empty()) return false;
  return chain().contains(g);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (domain_ != other.domain_) return false;
  for (const auto& g : gens_)
    if (!other.contains(g)) return false;
  return true;
}

bool PermGroup::same_group_as(const PermGroup& other) const {
  return domain_ == other.domain_ && order() == other.order() &&
         is_subgroup_of(other);
}

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  std::unordered_set<Permutation, PermHash> seen;
  std::deque<Permutation> queue;
  const Permutation id = Permutation::identity(domain_);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens_) {
      Permutation next = cur.compose(s);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw Error(ErrorKind::Limit,
                      "element enumeration exceeds cap " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Permutation> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

PermGroup generated(int domain, const std::vector<Permutation>& elems) {
  return PermGroup(domain, elems);
}

std::vector<Permutation> involutions(const PermGroup& g, std::uint64_t cap) {
  std::vector<Permutation> out;
  for (const auto& e : g.elements(cap))
    if (e.order() == 2) out.push_back(e);
  return out;  // elements() is sorted already
}

bool is_normal_in(const PermGroup& N, const PermGroup& G) {
  if (!N.is_subgroup_of(G))
    throw Error(ErrorKind::InvalidData, "is_normal_in: N is not a subgroup of G");
  for (const auto& g : G.generators())
    for (const auto& n : N.generators())
      if (!N.contains(n.conjugated_by(g))) return false;
  return true;
}

namespace {

// H-orbit sizes per point, for the normalizer prune.
std::vector<int> orbit_sizes(const PermGroup& H) {
  const int n = H.domain_size();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int ncomp = 0;
  for (int p = 0; p < n; ++p) {
    if (comp[static_cast<size_t>(p)] >= 0) continue;
    std::vector<int> stack{p};
    comp[static_cast<size_t>(p)] = ncomp;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& s : H.generators()) {
        const int y = s(x);
        if (comp[static_cast<size_t>(y)] < 0) {
          comp[static_cast<size_t>(y)] = ncomp;
          stack.push_back(y);
        }
      }
    }
    ++ncomp;
  }
  std::vector<int> count(static_cast<size_t>(ncomp), 0);
  for (int p = 0; p < n; ++p) ++count[static_cast<size_t>(comp[static_cast<size_t>(p)])];
  std::vector<int> sizes(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p)
    sizes[static_cast<size_t>(p)] = count[static_cast<size_t>(comp[static_cast<size_t>(p)])];
  return sizes;
}

bool normalizes(const Permutation& g, const PermGroup& H) {
  for (const auto& h : H.generators())
    if (!H.contains(h.conjugated_by(g))) return false;
  return true;
}

}  // namespace

namespace {

struct NormalizerSearch {
  const StabChain& chain;
  const PermGroup& H;
  const std::vector<int>& hsizes;
  std::vector<Permutation> found;
  PermGroup acc;

  void visit(size_t depth, const Permutation& prefix) {
    if (depth == chain.levels.size()) {
      if (!acc.contains(prefix) && normalizes(prefix, H)) {
        found.push_back(prefix);
        acc = PermGroup(chain.domain, found);
      }
      return;
    }
    const StabChainLevel& lv = chain.levels[depth];
    for (size_t a = 0; a < lv.orbit.size(); ++a) {
      // The image of this level's base point is final from here on; an
      // element normalizing H must preserve H-orbit sizes.
      const int moved_to = prefix(lv.orbit[a]);
      if (hsizes[static_cast<size_t>(lv.base)] !=
          hsizes[static_cast<size_t>(moved_to)])
        continue;
      visit(depth + 1, prefix.compose(lv.transversal[a]));
    }
  }
};

}  // namespace

PermGroup normalizer(const PermGroup& K, const PermGroup& H, std::uint64_t search_cap) {
  if (!H.is_subgroup_of(K))
    throw Error(ErrorKind::InvalidData, "normalizer: H is not a subgroup of K");
  if (H.is_trivial()) return K;
  if (is_normal_in(H, K)) return K;
  if (K.order() > search_cap)
    throw Error(ErrorKind::Limit,
                "normalizer: group of order " + std::to_string(K.order()) +
                    " exceeds the search cap " + std::to_string(search_cap));

  const StabChain& chain = K.chain();
  const std::vector<int> hsizes = orbit_sizes(H);
  NormalizerSearch search{chain, H, hsizes, H.generators(),
                          PermGroup(K.domain_size(), H.generators())};
  search.visit(0, Permutation::identity(K.domain_size()));
  return search.acc;
}

Quotient quotient(const PermGroup& G, const PermGroup& N) {
  if (N.domain_size() != G.domain_size())
    throw Error(ErrorKind::InvalidData, "quotient: domain mismatch");
  if (!N.is_subgroup_of(G))
    throw Error(ErrorKind::InvalidData, "quotient: N is not a subgroup of G");
  if (N.is_trivial()) {
    Quotient q;
    q.group = G;
    q.identity_projection = true;
    q.parent_domain = G.domain_size();
    return q;
  }
  if (!is_normal_in(N, G))
    throw Error(ErrorKind::InvalidData, "quotient: N is not normal in G");

  Quotient q;
  q.parent_domain = G.domain_size();
  q.n_chain = std::make_shared<const StabChain>(build_stab_chain(
      N.domain_size(), N.generators()));

  std::vector<Permutation> reps;
  std::unordered_map<std::uint64_t, std::vector<int>> index;
  auto find_or_insert = [&](Permutation rep) -> std::pair<int, bool> {
    const std::uint64_t h = hash_images(rep.img);
    auto& bucket = index[h];
    for (int i : bucket)
      if (reps[static_cast<size_t>(i)] == rep) return {i, false};
    const int id = static_cast<int>(reps.size());
    bucket.push_back(id);
    reps.push_back(std::move(rep));
    return {id, true};
  };

  // Pass 1: discover all cosets by BFS over generator images.
  find_or_insert(canonical_coset_rep(Permutation::identity(G.domain_size()), *q.n_chain));
  const auto& ggens = G.generators();
  for (size_t i = 0; i < reps.size(); ++i)
    for (const auto& g : ggens)
      find_or_insert(canonical_coset_rep(g.compose(reps[i]), *q.n_chain));

  const std::uint64_t count = reps.size();
  if (count != G.order() / N.order())
    throw Error(ErrorKind::Internal, "quotient: coset count mismatch");

  // Pass 2: the action of each generator on the full coset list.
  std::vector<Permutation> qgens;
  for (const auto& g : ggens) {
    std::vector<int> images(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
      Permutation moved = canonical_coset_rep(g.compose(reps[i]), *q.n_chain);
      images[i] = find_or_insert(std::move(moved)).first;
    }
    qgens.push_back(Permutation::from_images(std::move(images)));
  }
  q.group = PermGroup(static_cast<int>(count), std::move(qgens));
  q.group.set_known_order(count);
  q.coset_reps = std::move(reps);
  return q;
}

Permutation Quotient::project(const Permutation& g) const {
  if (identity_projection) return g;
  std::vector<int> images(coset_reps.size());
  std::unordered_map<std::uint64_t, std::vector<int>> index;
  for (size_t i = 0; i < coset_reps.size(); ++i)
    index[hash_images(coset_reps[i].img)].push_back(static_cast<int>(i));
  for (size_t i = 0; i < coset_reps.size(); ++i) {
    Permutation moved = canonical_coset_rep(g.compose(coset_reps[i]), *n_chain);
    const auto it = index.find(hash_images(moved.img));
    int target = -1;
    if (it != index.end())
      for (int j : it->second)
        if (coset_reps[static_cast<size_t>(j)] == moved) {
          target = j;
          break;
        }
    if (target < 0)
      throw Error(ErrorKind::InvalidData,
                  "Quotient::project: element does not preserve the coset space");
    images[i] = target;
  }
  return Permutation::from_images(std::move(images));
}

PermGroup intersection(const PermGroup& A, const PermGroup& B,
                       std::uint64_t search_cap) {
  if (A.domain_size() != B.domain_size())
    throw Error(ErrorKind::InvalidData, "intersection: domain mismatch");
  const PermGroup& small = A.order() <= B.order() ? A : B;
  const PermGroup& big = A.order() <= B.order() ? B : A;
  if (small.order() > search_cap)
    throw Error(ErrorKind::Limit, "intersection: groups too large for search");
  std::vector<Permutation> gens;
  PermGroup acc(A.domain_size());
  for (const auto& e : small.elements(search_cap)) {
    if (acc.contains(e)) continue;
    if (big.contains(e)) {
      gens.push_back(e);
      acc = PermGroup(A.domain_size(), gens);
    }
  }
  return acc;
}

PermGroup core(const PermGroup& G, const PermGroup& K, std::uint64_t search_cap) {
  if (!K.is_subgroup_of(G))
    throw Error(ErrorKind::InvalidData, "core: K is not a subgroup of G");
  PermGroup c = K;
  while (true) {
    if (c.is_trivial() || is_normal_in(c, G)) return c;
    bool changed = false;
    for (const auto& g : G.generators()) {
      PermGroup cg = conjugate_subgroup(c, g);
      if (c.is_subgroup_of(cg)) continue;  // equal orders => same group
      PermGroup meet = intersection(c, cg, search_cap);
      if (meet.order() < c.order()) {
        c = std::move(meet);
        changed = true;
      }
    }
    if (!changed) return c;
  }
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  const int n = a.domain_size() + b.domain_size();
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < a.domain_size(); ++i) img[static_cast<size_t>(i)] = g(i);
    for (int i = a.domain_size(); i < n; ++i) img[static_cast<size_t>(i)] = i;
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  for (const auto& g : b.generators()) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < a.domain_size(); ++i) img[static_cast<size_t>(i)] = i;
    for (int i = 0; i < b.domain_size(); ++i)
      img[static_cast<size_t>(a.domain_size() + i)] = a.domain_size() + g(i);
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup conjugate_subgroup(const PermGroup& a, const Permutation& g) {
  std::vector<Permutation> gens;
  for (const auto& s : a.generators()) gens.push_back(s.conjugated_by(g));
  return PermGroup(a.domain_size(), std::move(gens));
}

PermGroup normal_closure(const PermGroup& G, const PermGroup& A) {
  std::vector<Permutation> gens = A.generators();
  PermGroup c(A.domain_size(), gens);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Permutation> snapshot = c.generators();
    for (const auto& g : G.generators()) {
      for (const auto& a : snapshot) {
        Permutation x = a.conjugated_by(g);
        if (!c.contains(x)) {
          gens.push_back(std::move(x));
          c = PermGroup(A.domain_size(), gens);
          changed = true;
        }
      }
    }
  }
  return c;
}

PermGroup derived_subgroup(const PermGroup& G) {
  std::vector<Permutation> comms;
  const auto& gens = G.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      const Permutation& a = gens[i];
      const Permutation& b = gens[j];
      comms.push_back(
          a.inverse().compose(b.inverse()).compose(a).compose(b));
    }
  PermGroup d(G.domain_size(), std::move(comms));
  return normal_closure(G, d);
}

// ---------------------------------------------------------------------------
// Isomorphism testing

namespace {

struct ElementTable {
  std::vector<Permutation> elems;  // sorted
  std::unordered_map<std::uint64_t, std::vector<int>> index;
  std::vector<std::uint64_t> orders;
  std::vector<int> class_size;

  int find(const Permutation& p) const {
    const auto it = index.find(hash_images(p.img));
    if (it == index.end()) return -1;
    for (int i : it->second)
      if (elems[static_cast<size_t>(i)] == p) return i;
    return -1;
  }
};

ElementTable element_table(const PermGroup& G, std::uint64_t cap) {
  ElementTable t;
  t.elems = G.elements(cap);
  for (size_t i = 0; i < t.elems.size(); ++i)
    t.index[hash_images(t.elems[i].img)].push_back(static_cast<int>(i));
  t.orders.resize(t.elems.size());
  for (size_t i = 0; i < t.elems.size(); ++i) t.orders[i] = t.elems[i].order();
  // conjugacy classes by BFS under generator conjugation
  t.class_size.assign(t.elems.size(), 0);
  std::vector<int> cls(t.elems.size(), -1);
  for (size_t i = 0; i < t.elems.size(); ++i) {
    if (cls[i] >= 0) continue;
    std::vector<int> members{static_cast<int>(i)};
    cls[i] = static_cast<int>(i);
    for (size_t k = 0; k < members.size(); ++k) {
      for (const auto& g : G.generators()) {
        Permutation c = t.elems[static_cast<size_t>(members[k])].conjugated_by(g);
        const int j = t.find(c);
        if (cls[static_cast<size_t>(j)] < 0) {
          cls[static_cast<size_t>(j)] = static_cast<int>(i);
          members.push_back(j);
        }
      }
    }
    for (int m : members)
      t.class_size[static_cast<size_t>(m)] = static_cast<int>(members.size());
  }
  return t;
}

// Reduced generating sequence: drop generators already generated by the
// earlier ones.
std::vector<int> reduced_generators(const PermGroup& G, const ElementTable& t) {
  std::vector<int> kept;
  std::unordered_set<std::uint64_t> closure_hash;
  std::vector<Permutation> closure{Permutation::identity(G.domain_size())};
  closure_hash.insert(hash_images(closure[0].img));
  auto in_closure = [&](const Permutation& p) {
    if (!closure_hash.count(hash_images(p.img))) return false;
    for (const auto& c : closure)
      if (c == p) return true;
    return false;
  };
  auto extend = [&](const Permutation& g) {
    std::vector<Permutation> frontier = closure;
    std::vector<Permutation> gens;
    for (int k : kept) gens.push_back(t.elems[static_cast<size_t>(k)]);
    gens.push_back(g);
    for (size_t i = 0; i < frontier.size(); ++i) {
      for (const auto& s : gens) {
        Permutation n = frontier[i].compose(s);
        if (!in_closure(n)) {
          closure.push_back(n);
          closure_hash.insert(hash_images(n.img));
          frontier.push_back(std::move(n));
        }
      }
    }
  };
  for (const auto& g : G.generators()) {
    if (in_closure(g)) continue;
    kept.push_back(t.find(g));
    extend(g);
  }
  return kept;
}

struct IsoSearcher {
  const ElementTable& ta;
  const ElementTable& tb;
  std::vector<int> gens_a;  // indices into ta
  std::uint64_t budget = 50'000'000;

  bool consistent_closure(const std::vector<std::pair<int, int>>& gen_pairs) {
    std::unordered_map<int, int> fwd, bwd;
    std::vector<std::pair<int, int>> work;
    auto add = [&](int x, int y) -> int {  // 1 new, 0 known, -1 clash
      auto itf = fwd.find(x);
      if (itf != fwd.end()) return itf->second == y ? 0 : -1;
      auto itb = bwd.find(y);
      if (itb != bwd.end()) return -1;
      fwd[x] = y;
      bwd[y] = x;
      work.emplace_back(x, y);
      return 1;
    };
    const int ida = ta.find(Permutation::identity(ta.elems[0].degree()));
    const int idb = tb.find(Permutation::identity(tb.elems[0].degree()));
    if (add(ida, idb) < 0) return false;
    for (auto [x, y] : gen_pairs)
      if (add(x, y) < 0) return false;
    for (size_t i = 0; i < work.size(); ++i) {
      const auto [x, y] = work[i];
      for (auto [ga, gb] : gen_pairs) {
        if (budget-- == 0)
          throw Error(ErrorKind::Limit, "isomorphism search budget exhausted");
        Permutation xa = ta.elems[static_cast<size_t>(x)].compose(
            ta.elems[static_cast<size_t>(ga)]);
        Permutation yb = tb.elems[static_cast<size_t>(y)].compose(
            tb.elems[static_cast<size_t>(gb)]);
        const int xi = ta.find(xa);
        const int yi = tb.find(yb);
        if (add(xi, yi) < 0) return false;
      }
    }
    return true;
  }

  bool search(size_t i, std::vector<std::pair<int, int>>& chosen) {
    if (i == gens_a.size()) {
      // the full consistent closure over a generating set of A reaches all
      // of A; injectivity is enforced, and |A| = |B| gives bijectivity.
      return consistent_closure(chosen);
    }
    const int ga = gens_a[i];
    for (size_t b = 0; b < tb.elems.size(); ++b) {
      if (tb.orders[b] != ta.orders[static_cast<size_t>(ga)]) continue;
      if (tb.class_size[b] != ta.class_size[static_cast<size_t>(ga)]) continue;
      chosen.emplace_back(ga, static_cast<int>(b));
      if (consistent_closure(chosen) && search(i + 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const PermGroup& A, const PermGroup& B, std::uint64_t bound) {
  const std::uint64_t oa = A.order(), ob = B.order();
  if (oa != ob) return false;
  if (oa > bound)
    throw Error(ErrorKind::Limit, "isomorphism test: order exceeds bound");
  if (oa == 1) return true;

  ElementTable ta = element_table(A, bound);
  ElementTable tb = element_table(B, bound);

  auto profile = [](const ElementTable& t) {
    std::vector<std::pair<std::uint64_t, int>> fp;
    fp.reserve(t.elems.size());
    for (size_t i = 0; i < t.elems.size(); ++i)
      fp.emplace_back(t.orders[i], t.class_size[i]);
    std::sort(fp.begin(), fp.end());
    return fp;
  };
  if (profile(ta) != profile(tb)) return false;

  IsoSearcher s{ta, tb, reduced_generators(A, ta)};
  std::vector<std::pair<int, int>> chosen;
  return s.search(0, chosen);
}

}  // namespace polar
