#pragma once

#include <string>
#include <vector>

#include "galab/conv.hpp"
#include "galab/group.hpp"
#include "galab/linalg.hpp"
#include "galab/repr.hpp"
#include "galab/rng.hpp"

namespace galab {

/// f -> weight * (f o motion): the weighted-composition family. Isometric for
/// every p-norm; an algebra automorphism exactly when motion is one.
struct WeightedComposition {
  Character weight;
  GroupMap motion;
};

inline AlgebraElement apply_weighted_composition(const WeightedComposition& w,
                                                 const AlgebraElement& f) {
  const int n = static_cast<int>(w.motion.perm.size());
  if (f.size() != n)
    throw SizeMismatch("function has " + std::to_string(f.size()) + " values, map expects " +
                       std::to_string(n));
  AlgebraElement r(n);
  for (int x = 0; x < n; ++x) r(x) = w.weight.value(x) * f(w.motion(x));
  return r;
}

/// All isometric algebra automorphisms of the p != 2 group algebra: every
/// (character, automorphism) pair. Ordered character-major, both factors in
/// their enumeration order.
inline std::vector<WeightedComposition> enumerate_isometric_automorphisms_lp(
    const FiniteGroup& g, int bound = kDefaultOrderBound) {
  const auto chars = enumerate_characters(g, bound);
  const auto autos = enumerate_automorphisms(g, bound);
  std::vector<WeightedComposition> out;
  out.reserve(chars.size() * autos.size());
  for (const Character& c : chars)
    for (const GroupMap& a : autos) out.push_back({c, a});
  return out;
}

/// Block-unitary Jordan map: result block sigma is
/// U[a] * T(A[a]) * U[a]^adj with a = block_perm[sigma], where T transposes
/// when transpose_flags[a] is set. Unitaries and flags are indexed by the
/// source block a.
struct BlockMap {
  std::vector<int> block_perm;
  std::vector<Mat> unitaries;
  std::vector<bool> transpose_flags;
};

inline void require_valid_on(const BlockMap& b, const BlockTuple& a) {
  const std::size_t k = a.blocks.size();
  if (b.block_perm.size() != k || b.unitaries.size() != k || b.transpose_flags.size() != k)
    throw ShapeMismatch("block map arity does not match tuple");
  for (std::size_t s = 0; s < k; ++s) {
    const int src = b.block_perm[s];
    if (src < 0 || src >= static_cast<int>(k)) throw ShapeMismatch("block permutation out of range");
    if (a.blocks[src].rows() != a.blocks[s].rows())
      throw ShapeMismatch("block permutation does not preserve dimensions");
    if (b.unitaries[src].rows() != a.blocks[src].rows() ||
        b.unitaries[src].cols() != a.blocks[src].cols())
      throw ShapeMismatch("unitary shape mismatch in block " + std::to_string(src));
  }
}

inline BlockTuple apply_block_map(const BlockMap& b, const BlockTuple& a) {
  require_valid_on(b, a);
  BlockTuple r;
  for (std::size_t s = 0; s < a.blocks.size(); ++s) {
    const int src = b.block_perm[s];
    const Mat& u = b.unitaries[src];
    const Mat core =
        b.transpose_flags[src] ? Mat(a.blocks[src].transpose()) : a.blocks[src];
    r.blocks.push_back(u * core * u.adjoint());
  }
  return r;
}

inline BlockMap identity_block_map(const DualObject& dual) {
  BlockMap b;
  for (int s = 0; s < dual.size(); ++s) {
    b.block_perm.push_back(s);
    b.unitaries.push_back(Mat::Identity(dual.dim(s), dual.dim(s)));
    b.transpose_flags.push_back(false);
  }
  return b;
}

/// Identity map except that block sigma0 is transposed.
inline BlockMap transpose_block_map(const DualObject& dual, int sigma0) {
  if (sigma0 < 0 || sigma0 >= dual.size())
    throw IndexOutOfRange("block index " + std::to_string(sigma0) + " out of range [0, " +
                          std::to_string(dual.size()) + ")");
  BlockMap b = identity_block_map(dual);
  b.transpose_flags[sigma0] = true;
  return b;
}

/// outer o inner as a single BlockMap.
inline BlockMap compose_block_maps(const BlockMap& outer, const BlockMap& inner) {
  const std::size_t k = outer.block_perm.size();
  if (inner.block_perm.size() != k) throw ShapeMismatch("block map arities differ");
  BlockMap c;
  c.block_perm.resize(k);
  c.unitaries.resize(k);
  c.transpose_flags.resize(k);
  for (std::size_t s = 0; s < k; ++s) {
    const int mid = outer.block_perm[s];
    const int src = inner.block_perm[mid];
    c.block_perm[s] = src;
    const bool outer_t = outer.transpose_flags[mid];
    c.transpose_flags[src] = inner.transpose_flags[src] != outer_t;
    const Mat& ui = inner.unitaries[src];
    c.unitaries[src] = outer.unitaries[mid] * (outer_t ? ui.conjugate().eval() : ui);
  }
  return c;
}

enum class MapClass { Automorphism, Antiautomorphism, ProperJordan };

inline const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::Automorphism:
      return "automorphism";
    case MapClass::Antiautomorphism:
      return "antiautomorphism";
    default:
      return "proper_jordan";
  }
}

/// Structural rule: automorphism iff no transpose flag on any block of
/// dimension >= 2, antiautomorphism iff flags on all of them, proper Jordan
/// otherwise. Flags on one-dimensional blocks are unobservable. The verdict is
/// cross-checked numerically on 50 seeded random pairs.
inline MapClass classify_block_map(const BlockMap& b, const DualObject& dual) {
  if (static_cast<int>(b.block_perm.size()) != dual.size())
    throw ShapeMismatch("block map arity does not match dual");
  int big = 0, flagged = 0;
  for (int s = 0; s < dual.size(); ++s)
    if (dual.dim(s) >= 2) {
      ++big;
      if (b.transpose_flags[s]) ++flagged;
    }
  const MapClass cls = flagged == 0          ? MapClass::Automorphism
                       : flagged == big      ? MapClass::Antiautomorphism
                                             : MapClass::ProperJordan;

  CounterRng rng(0x9a0, detail::hash_tag("classify"));
  for (int trial = 0; trial < 50; ++trial) {
    const BlockTuple x = random_tuple(dual, rng);
    const BlockTuple y = random_tuple(dual, rng);
    double resid = 0;
    if (cls == MapClass::Automorphism)
      resid = c2_distance(apply_block_map(b, tuple_product(x, y)),
                          tuple_product(apply_block_map(b, x), apply_block_map(b, y)));
    else if (cls == MapClass::Antiautomorphism)
      resid = c2_distance(apply_block_map(b, tuple_product(x, y)),
                          tuple_product(apply_block_map(b, y), apply_block_map(b, x)));
    else
      resid = c2_distance(
          apply_block_map(b, tuple_add(tuple_product(x, y), tuple_product(y, x))),
          tuple_add(tuple_product(apply_block_map(b, x), apply_block_map(b, y)),
                    tuple_product(apply_block_map(b, y), apply_block_map(b, x))));
    const double scale = std::max(1.0, x.c2_norm() * y.c2_norm());
    if (resid > 1e-9 * scale)
      throw Error("block map fails the numeric identity of its structural class");
  }
  return cls;
}

/// Lift through the Fourier transform: functions -> tuples -> functions.
inline AlgebraElement apply_block_map_to_function(const BlockMap& b, const DualObject& dual,
                                                  const AlgebraElement& f) {
  return inverse_fourier(apply_block_map(b, fourier(f, dual)), dual);
}

struct IsometryReport {
  double max_rel_deviation = 0;
  int trials = 0;
  bool pass = false;
};

namespace detail {

template <typename Apply>
IsometryReport isometry_probe(Apply&& apply, double p, const FiniteGroup& g, int trials,
                              std::uint64_t seed) {
  if (!(p >= 1.0) && !(std::isinf(p) && p > 0)) throw InvalidP("p must satisfy 1 <= p <= inf");
  IsometryReport rep;
  rep.trials = trials;
  CounterRng rng(seed, hash_tag("isometry"));
  for (int t = 0; t < trials; ++t) {
    const AlgebraElement f = gaussian_vector(rng, g.order);
    const double nf = p_norm(f, p, g);
    if (nf == 0) continue;
    const double dev = std::abs(p_norm(apply(f), p, g) / nf - 1.0);
    rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
  }
  rep.pass = rep.max_rel_deviation <= 1e-9;
  return rep;
}

}  // namespace detail

/// Max relative deviation of ||map(f)||_p / ||f||_p from 1 over random f.
inline IsometryReport is_isometry(const WeightedComposition& w, double p, const FiniteGroup& g,
                                  int trials, std::uint64_t seed) {
  return detail::isometry_probe(
      [&](const AlgebraElement& f) { return apply_weighted_composition(w, f); }, p, g, trials,
      seed);
}

inline IsometryReport is_isometry(const BlockMap& b, double p, const DualObject& dual, int trials,
                                  std::uint64_t seed) {
  return detail::isometry_probe(
      [&](const AlgebraElement& f) { return apply_block_map_to_function(b, dual, f); }, p,
      dual.group, trials, seed);
}

/// Realizes a weighted composition as a BlockMap on the Fourier side.
/// For motion an automorphism no block is transposed; for an antiautomorphism
/// every block is. The per-block unitary is the polar factor of a
/// Schur-averaged intertwiner.
inline BlockMap block_map_of_weighted_composition(const WeightedComposition& w,
                                                  const DualObject& dual,
                                                  std::uint64_t seed = 0xB10C) {
  const FiniteGroup& g = dual.group;
  const int n = g.order;
  if (static_cast<int>(w.motion.perm.size()) != n)
    throw SizeMismatch("map and dual refer to groups of different order");
  const bool anti = w.motion.kind == MapKind::Antiautomorphism;

  std::vector<int> motion_inv(n);
  for (int x = 0; x < n; ++x) motion_inv[w.motion(x)] = x;

  CounterRng rng(seed, detail::hash_tag("wc-blockmap"));
  const int k = dual.size();
  BlockMap b;
  b.block_perm.assign(k, -1);
  b.unitaries.resize(k);
  b.transpose_flags.assign(k, anti);

  for (int s = 0; s < k; ++s) {
    const Irrep& ir = dual.irreps[s];
    // twisted[y] = tau(phi^-1(y)) sigma(phi^-1(y)); a representation when phi
    // is an automorphism, an antirepresentation otherwise (then transpose).
    std::vector<Mat> twisted(n);
    for (int y = 0; y < n; ++y) {
      const int z = motion_inv[y];
      twisted[y] = w.weight.value(z) * ir.matrices[z];
      if (anti) twisted[y] = twisted[y].transpose().eval();
    }
    std::vector<cplx> row = detail::trace_row(twisted);

    int target = -1;
    for (int r = 0; r < k; ++r)
      if (dual.dim(r) == ir.dim && detail::row_distance(row, dual.irreps[r].character_row) <= 1e-6) {
        target = r;
        break;
      }
    if (target < 0) throw Error("internal: twisted representation matches no dual class");

    Mat m;
    double scale = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const Mat z = gaussian_matrix(rng, ir.dim, ir.dim);
      m = Mat::Zero(ir.dim, ir.dim);
      for (int y = 0; y < n; ++y)
        m += twisted[y] * z * dual.irreps[target].matrices[y].adjoint();
      m /= n;
      scale = m.norm();
      if (scale > 1e-6) break;
    }
    if (scale <= 1e-6) throw Error("internal: intertwiner averaging degenerated");
    const Mat ww = polar_unitary(m);
    b.block_perm[s] = target;
    b.unitaries[target] = anti ? ww.conjugate().eval() : ww;
  }
  return b;
}

}  // namespace galab
