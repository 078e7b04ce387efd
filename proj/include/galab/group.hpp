#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "galab/errors.hpp"

namespace galab {

inline constexpr int kDefaultOrderBound = 48;

/// A finite group on elements 0..order-1 with a validated Cayley table.
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<int> table;  // flattened, table[x*order + y] = x*y
  int identity = 0;
  std::vector<int> inverse;
  bool commutative = true;

  int mul(int x, int y) const { return table[x * order + y]; }
  int inv(int x) const { return inverse[x]; }
};

/// Validates a raw Cayley table and derives identity and inverses.
/// Checks run in the order: Latin square, identity, inverses, associativity.
inline FiniteGroup build_group(std::string name, const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ParseError("empty table");
  for (int x = 0; x < n; ++x)
    if (static_cast<int>(table[x].size()) != n)
      throw ParseError("table is not square: row " + std::to_string(x) + " has " +
                       std::to_string(table[x].size()) + " entries, expected " + std::to_string(n));

  for (int x = 0; x < n; ++x) {
    std::vector<bool> row(n, false), col(n, false);
    for (int y = 0; y < n; ++y) {
      const int r = table[x][y], c = table[y][x];
      if (r < 0 || r >= n)
        throw ParseError("entry out of range at (" + std::to_string(x) + "," + std::to_string(y) +
                         "): " + std::to_string(r));
      if (c < 0 || c >= n)
        throw ParseError("entry out of range at (" + std::to_string(y) + "," + std::to_string(x) +
                         "): " + std::to_string(c));
      if (row[r])
        throw NotLatinSquare("row " + std::to_string(x) + " repeats entry " + std::to_string(r) +
                             " at column " + std::to_string(y));
      if (col[c])
        throw NotLatinSquare("column " + std::to_string(x) + " repeats entry " +
                             std::to_string(c) + " at row " + std::to_string(y));
      row[r] = true;
      col[c] = true;
    }
  }

  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NoIdentity("no two-sided identity element");

  std::vector<int> inverse(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (table[x][y] == identity && table[y][x] == identity) {
        inverse[x] = y;
        break;
      }
    if (inverse[x] < 0)
      throw NoInverse("element " + std::to_string(x) + " has no two-sided inverse");
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (table[table[x][y]][z] != table[x][table[y][z]])
          throw NonAssociative("associativity fails at (" + std::to_string(x) + "," +
                               std::to_string(y) + "," + std::to_string(z) + ")");

  FiniteGroup g;
  g.name = std::move(name);
  g.order = n;
  g.table.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) g.table[x * n + y] = table[x][y];
  g.identity = identity;
  g.inverse = std::move(inverse);
  g.commutative = true;
  for (int x = 0; x < n && g.commutative; ++x)
    for (int y = x + 1; y < n; ++y)
      if (g.mul(x, y) != g.mul(y, x)) {
        g.commutative = false;
        break;
      }
  return g;
}

inline int element_order(const FiniteGroup& g, int x) {
  int k = 1, p = x;
  while (p != g.identity) {
    p = g.mul(p, x);
    ++k;
  }
  return k;
}

/// Exponent of the group: lcm of all element orders.
inline int exponent(const FiniteGroup& g) {
  long long l = 1;
  for (int x = 0; x < g.order; ++x) l = std::lcm(l, static_cast<long long>(element_order(g, x)));
  return static_cast<int>(l);
}

namespace detail {

/// Closure of a seed set under table products (a subgroup, since G is finite).
inline std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> seed) {
  std::vector<bool> in(g.order, false);
  std::vector<int> members;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  add(g.identity);
  for (int x : seed) add(x);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      add(g.mul(members[i], members[j]));
      add(g.mul(members[j], members[i]));
    }
  std::sort(members.begin(), members.end());
  return members;
}

/// Greedy generating chain: repeatedly adjoin the least element outside the
/// generated subgroup.
inline std::vector<int> generating_chain(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> span = subgroup_closure(g, {});
  while (static_cast<int>(span.size()) < g.order) {
    int next = -1;
    std::vector<bool> in(g.order, false);
    for (int x : span) in[x] = true;
    for (int x = 0; x < g.order; ++x)
      if (!in[x]) {
        next = x;
        break;
      }
    gens.push_back(next);
    std::vector<int> seed = gens;
    span = subgroup_closure(g, seed);
  }
  return gens;
}

/// Backtracking search for all maps G -> target monoid determined by images of
/// a generating chain, extended multiplicatively. `combine` is the target
/// product, `target_id` the image of the identity. If `injective`, images must
/// be pairwise distinct (target elements indexed 0..target_size-1).
/// `candidates[i]` lists allowed images of gens[i]. Emits completed image
/// arrays; a final full homomorphism check guards the propagation.
template <typename Combine, typename Emit>
void homomorphism_search(const FiniteGroup& g, const std::vector<int>& gens,
                         const std::vector<std::vector<int>>& candidates, int target_id,
                         int target_size, bool injective, Combine combine, Emit emit) {
  const int n = g.order;
  std::vector<int> img(n, -1);
  std::vector<bool> used(static_cast<std::size_t>(std::max(target_size, 1)), false);
  std::vector<int> known;

  // Assign img[x] = u, then close under products with all known elements.
  // Returns false on conflict; trail records assignments for undo.
  auto assign = [&](int x0, int u0, std::vector<int>& trail) -> bool {
    std::vector<std::pair<int, int>> work{{x0, u0}};
    while (!work.empty()) {
      auto [x, u] = work.back();
      work.pop_back();
      if (img[x] >= 0) {
        if (img[x] != u) return false;
        continue;
      }
      if (injective) {
        if (used[u]) return false;
        used[u] = true;
      }
      img[x] = u;
      trail.push_back(x);
      known.push_back(x);
      for (std::size_t i = 0; i < known.size(); ++i) {
        const int y = known[i];
        work.emplace_back(g.mul(x, y), combine(u, img[y]));
        work.emplace_back(g.mul(y, x), combine(img[y], u));
      }
    }
    return true;
  };

  auto undo = [&](const std::vector<int>& trail) {
    for (int x : trail) {
      if (injective) used[img[x]] = false;
      img[x] = -1;
    }
    known.resize(known.size() - trail.size());
  };

  {
    std::vector<int> trail;
    assign(g.identity, target_id, trail);  // cannot conflict on a fresh state
  }

  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == gens.size()) {
      if (static_cast<int>(known.size()) != n) return;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (img[g.mul(x, y)] != combine(img[x], img[y])) return;
      emit(img);
      return;
    }
    const int gen = gens[gi];
    if (img[gen] >= 0) {  // already forced by closure
      self(self, gi + 1);
      return;
    }
    for (int u : candidates[gi]) {
      std::vector<int> trail;
      if (assign(gen, u, trail)) self(self, gi + 1);
      undo(trail);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

enum class MapKind { Automorphism, Antiautomorphism };

/// A group automorphism or antiautomorphism, stored as a permutation of
/// element indices.
struct GroupMap {
  MapKind kind = MapKind::Automorphism;
  std::vector<int> perm;

  int operator()(int x) const { return perm[x]; }
};

/// All automorphisms of G, sorted lexicographically by permutation.
inline std::vector<GroupMap> enumerate_automorphisms(const FiniteGroup& g,
                                                     int bound = kDefaultOrderBound) {
  if (g.order > bound)
    throw OrderBoundExceeded("order " + std::to_string(g.order) + " exceeds bound " +
                             std::to_string(bound));
  const std::vector<int> gens = detail::generating_chain(g);
  std::vector<int> orders(g.order);
  for (int x = 0; x < g.order; ++x) orders[x] = element_order(g, x);
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int u = 0; u < g.order; ++u)
      if (orders[u] == orders[gens[i]]) candidates[i].push_back(u);

  std::vector<GroupMap> out;
  detail::homomorphism_search(
      g, gens, candidates, g.identity, g.order, /*injective=*/true,
      [&](int u, int v) { return g.mul(u, v); },
      [&](const std::vector<int>& img) { out.push_back({MapKind::Automorphism, img}); });
  std::sort(out.begin(), out.end(),
            [](const GroupMap& a, const GroupMap& b) { return a.perm < b.perm; });
  return out;
}

/// All antiautomorphisms: exactly the maps (automorphism) o (x -> x^-1).
inline std::vector<GroupMap> enumerate_antiautomorphisms(const FiniteGroup& g,
                                                         int bound = kDefaultOrderBound) {
  std::vector<GroupMap> out;
  for (const GroupMap& a : enumerate_automorphisms(g, bound)) {
    GroupMap m{MapKind::Antiautomorphism, std::vector<int>(g.order)};
    for (int x = 0; x < g.order; ++x) m.perm[x] = a.perm[g.inv(x)];
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const GroupMap& a, const GroupMap& b) { return a.perm < b.perm; });
  return out;
}

/// A multiplicative character G -> unit circle, stored exactly as integer
/// angle numerators: value(x) = exp(2*pi*i*angles[x]/modulus).
struct Character {
  int modulus = 1;
  std::vector<int> angles;

  std::complex<double> value(int x) const {
    const double t = 6.283185307179586476925286766559 * angles[x] / modulus;
    return {std::cos(t), std::sin(t)};
  }
  std::vector<std::complex<double>> values() const {
    std::vector<std::complex<double>> v(angles.size());
    for (std::size_t x = 0; x < angles.size(); ++x) v[x] = value(static_cast<int>(x));
    return v;
  }
  bool trivial() const {
    return std::all_of(angles.begin(), angles.end(), [](int a) { return a == 0; });
  }
};

/// All characters, sorted lexicographically by angle vector. The count equals
/// the order of the abelianization.
inline std::vector<Character> enumerate_characters(const FiniteGroup& g,
                                                   int bound = kDefaultOrderBound) {
  if (g.order > bound)
    throw OrderBoundExceeded("order " + std::to_string(g.order) + " exceeds bound " +
                             std::to_string(bound));
  const int L = exponent(g);
  const std::vector<int> gens = detail::generating_chain(g);
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int m = element_order(g, gens[i]);
    for (int j = 0; j < m; ++j) candidates[i].push_back(j * (L / m));
  }
  std::vector<Character> out;
  detail::homomorphism_search(
      g, gens, candidates, 0, L, /*injective=*/false,
      [&](int u, int v) { return (u + v) % L; },
      [&](const std::vector<int>& img) { out.push_back({L, img}); });
  std::sort(out.begin(), out.end(),
            [](const Character& a, const Character& b) { return a.angles < b.angles; });
  return out;
}

/// Order of the commutator subgroup [G, G].
inline int commutator_subgroup_order(const FiniteGroup& g) {
  std::vector<int> comms;
  for (int x = 0; x < g.order; ++x)
    for (int y = 0; y < g.order; ++y)
      comms.push_back(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
  return static_cast<int>(detail::subgroup_closure(g, comms).size());
}

inline int abelianization_order(const FiniteGroup& g) {
  return g.order / commutator_subgroup_order(g);
}

// ---------------------------------------------------------------------------
// Built-in groups.

inline FiniteGroup trivial_group() { return build_group("1", {{0}}); }

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw ParseError("cyclic group needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return build_group("Z" + std::to_string(n), t);
}

/// Dihedral group of order 2n: element j*n+i is r^i s^j with s r s = r^-1.
inline FiniteGroup dihedral_group(int n) {
  if (n < 2) throw ParseError("dihedral group needs n >= 2");
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int j1 = 0; j1 < 2; ++j1)
    for (int i1 = 0; i1 < n; ++i1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int i2 = 0; i2 < n; ++i2) {
          const int i = j1 == 0 ? (i1 + i2) % n : (i1 - i2 + n) % n;
          const int j = j1 ^ j2;
          t[j1 * n + i1][j2 * n + i2] = j * n + i;
        }
  return build_group("D" + std::to_string(n), t);
}

namespace detail {

inline std::vector<std::vector<int>> permutations(int n, bool even_only) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    if (even_only) {
      int invs = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (p[i] > p[j]) ++invs;
      if (invs % 2) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline FiniteGroup permutation_group(std::string name, const std::vector<std::vector<int>>& perms) {
  const int m = static_cast<int>(perms.size());
  const int n = static_cast<int>(perms[0].size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[perms[i]] = i;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<int> c(n);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      for (int i = 0; i < n; ++i) c[i] = perms[x][perms[y][i]];
      t[x][y] = index.at(c);
    }
  return build_group(std::move(name), t);
}

}  // namespace detail

inline FiniteGroup symmetric_group(int n) {
  if (n < 2 || n > 5) throw ParseError("symmetric group supported for 2 <= n <= 5");
  return detail::permutation_group("S" + std::to_string(n), detail::permutations(n, false));
}

inline FiniteGroup alternating_group(int n) {
  if (n < 3 || n > 5) throw ParseError("alternating group supported for 3 <= n <= 5");
  return detail::permutation_group("A" + std::to_string(n), detail::permutations(n, true));
}

/// Quaternion group, elements 1,-1,i,-i,j,-j,k,-k in that order.
inline FiniteGroup quaternion_group() {
  // index = 2*axis + sign, axis in {0:1, 1:i, 2:j, 3:k}
  auto mul = [](int a, int b) {
    const int ax1 = a / 2, s1 = a % 2, ax2 = b / 2, s2 = b % 2;
    int ax, s = s1 ^ s2;
    if (ax1 == 0)
      ax = ax2;
    else if (ax2 == 0)
      ax = ax1;
    else if (ax1 == ax2) {
      ax = 0;
      s ^= 1;
    } else {
      ax = 6 - ax1 - ax2;
      const bool cyclic = ax2 == ax1 % 3 + 1;
      if (!cyclic) s ^= 1;
    }
    return 2 * ax + s;
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) t[x][y] = mul(x, y);
  return build_group("Q8", t);
}

/// Componentwise product on pairs (a, b) with index a*|H| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int n = g.order * h.order;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a1 = 0; a1 < g.order; ++a1)
    for (int b1 = 0; b1 < h.order; ++b1)
      for (int a2 = 0; a2 < g.order; ++a2)
        for (int b2 = 0; b2 < h.order; ++b2)
          t[a1 * h.order + b1][a2 * h.order + b2] = g.mul(a1, a2) * h.order + h.mul(b1, b2);
  return build_group(g.name + "x" + h.name, t);
}

/// Resolves names like "Z6", "D4", "S3", "A4", "Q8", "1", and products
/// joined with 'x' such as "Z2xS3".
inline FiniteGroup group_by_name(const std::string& name) {
  auto parse_atom = [](const std::string& s) -> FiniteGroup {
    if (s == "1") return trivial_group();
    if (s == "Q8") return quaternion_group();
    if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'D' || s[0] == 'S' || s[0] == 'A')) {
      int n = 0;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("unknown group name: " + s);
        n = n * 10 + (s[i] - '0');
      }
      if (n > 64) throw ParseError("group parameter too large: " + s);
      switch (s[0]) {
        case 'Z':
          return cyclic_group(n);
        case 'D':
          return dihedral_group(n);
        case 'S':
          return symmetric_group(n);
        case 'A':
          return alternating_group(n);
      }
    }
    throw ParseError("unknown group name: " + s);
  };

  std::vector<std::string> atoms;
  std::string cur;
  for (char c : name) {
    if (c == 'x') {
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  atoms.push_back(cur);
  if (atoms.empty() || atoms[0].empty()) throw ParseError("unknown group name: " + name);

  FiniteGroup g = parse_atom(atoms[0]);
  for (std::size_t i = 1; i < atoms.size(); ++i) g = direct_product(g, parse_atom(atoms[i]));
  return g;
}

}  // namespace galab
