#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galab/autolab.hpp"
#include "galab/conv.hpp"
#include "galab/group.hpp"
#include "galab/linalg.hpp"
#include "galab/repr.hpp"
#include "galab/rng.hpp"

namespace galab {

/// Verdict of a unitary-equivalence test. The trace family is the decision
/// authority; the witness, when present, is a constructive certificate with
/// ||W A W* - B|| = witness_residual.
struct EquivDecision {
  bool equivalent = false;
  std::string mismatch_word;  // over letters M and M*, empty when equivalent
  cplx trace_a{0, 0};
  cplx trace_b{0, 0};
  std::optional<Mat> witness;
  double witness_residual = 0;
};

/// The d x d matrix with subdiagonal entries 1, 2, ..., d-1.
inline Mat counterexample_matrix(int d) {
  if (d < 2) throw InvalidDimension("counterexample matrix needs d >= 2");
  Mat m = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) m(i, i - 1) = static_cast<double>(i);
  return m;
}

namespace detail {

using Word = std::vector<int>;  // 0 = M, 1 = M*

inline std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i] ? "M*" : "M";
  }
  return s;
}

inline cplx word_trace(const Word& w, const Mat& m, const Mat& mstar) {
  Mat p = w[0] ? mstar : m;
  for (std::size_t i = 1; i < w.size(); ++i) p *= w[i] ? mstar : m;
  return p.trace();
}

/// Keeps one representative per cyclic class: the lexicographically least
/// rotation (traces are invariant under cyclic rotation).
inline bool is_least_rotation(const Word& w) {
  const std::size_t len = w.size();
  for (std::size_t r = 1; r < len; ++r)
    for (std::size_t i = 0; i < len; ++i) {
      const int a = w[(i + r) % len], b = w[i];
      if (a != b) {
        if (a < b) return false;
        break;
      }
    }
  return true;
}

/// Word length that makes bounded trace families decisive for n x n pairs.
inline int word_length_cap(int n) {
  const double bound =
      n * std::sqrt(2.0 * n * n / (n - 1) + 0.25) + n / 2.0 - 2.0;
  return std::min(2 * n * n, static_cast<int>(std::ceil(bound)));
}

inline std::vector<Word> fixed_trace_family(int n) {
  if (n == 1) return {{0}};
  if (n == 2) return {{0}, {0, 0}, {1, 0}};
  // x, x^2, x^3, xy, x^2 y, x^2 y^2, x^2 y^2 x y with x = M, y = M*
  return {{0}, {0, 0}, {0, 0, 0}, {0, 1}, {0, 0, 1}, {0, 0, 1, 1}, {0, 0, 1, 1, 0, 1}};
}

}  // namespace detail

/// Decides unitary equivalence by trace invariants: published complete
/// families for n <= 3, bounded-length word enumeration for n >= 4 (cap
/// defaults to the decisive length, configurable via max_word_len). On a
/// positive decision a constructive witness is attempted: first the polar
/// factor of a generic element of the intertwiner nullspace, then an
/// alternating polar iteration; failure to find one never overrides the trace
/// decision.
inline EquivDecision unitary_equivalent(const Mat& a, const Mat& b, double tol = 1e-8,
                                        int max_word_len = 0) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw SizeMismatch("matrices must be square and of equal size");
  const int n = static_cast<int>(a.rows());
  const Mat astar = a.adjoint();
  const Mat bstar = b.adjoint();

  EquivDecision dec;
  auto mismatch = [&](const detail::Word& w) {
    const cplx ta = detail::word_trace(w, a, astar);
    const cplx tb = detail::word_trace(w, b, bstar);
    const double scale = std::max({1.0, std::abs(ta), std::abs(tb)});
    if (std::abs(ta - tb) > 10 * tol * scale) {
      dec.equivalent = false;
      dec.mismatch_word = detail::word_to_string(w);
      dec.trace_a = ta;
      dec.trace_b = tb;
      return true;
    }
    return false;
  };

  if (n <= 3) {
    for (const auto& w : detail::fixed_trace_family(n))
      if (mismatch(w)) return dec;
  } else {
    const int cap = max_word_len > 0 ? max_word_len : detail::word_length_cap(n);
    for (int len = 1; len <= cap; ++len)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
        detail::Word w(len);
        for (int i = 0; i < len; ++i) w[i] = static_cast<int>((mask >> i) & 1);
        if (!detail::is_least_rotation(w)) continue;
        if (mismatch(w)) return dec;
      }
  }
  dec.equivalent = true;

  const double scale = std::max(1.0, a.norm());
  if ((a - b).norm() <= 1e-12 * scale) {
    dec.witness = Mat::Identity(n, n);
    dec.witness_residual = (a - b).norm();
    return dec;
  }

  CounterRng rng(0x5eed, detail::hash_tag("witness"));
  auto accept = [&](const Mat& w) {
    const double resid = (w * a * w.adjoint() - b).norm();
    if (resid <= 1e-8 && unitarity_defect(w) <= 1e-10) {
      dec.witness = w;
      dec.witness_residual = resid;
      return true;
    }
    return false;
  };

  // Intertwiner nullspace: X A = B X and X A* = B* X. With X(r,c) vectorized
  // column-major as col = c*n + r and the (p, i) entry of each equation as
  // row = i*n + p, the coefficient of X(r,c) in (XA - BX)(p,i) is
  // [r == p] A(c,i) - [c == i] B(p,r).
  {
    Mat k(2 * n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p)
        for (int c = 0; c < n; ++c)
          for (int r = 0; r < n; ++r) {
            const int row = i * n + p;
            const int col = c * n + r;
            k(row, col) = (r == p ? a(c, i) : cplx(0)) - (c == i ? b(p, r) : cplx(0));
            k(n * n + row, col) =
                (r == p ? astar(c, i) : cplx(0)) - (c == i ? bstar(p, r) : cplx(0));
          }
    const Mat null_basis = nullspace(k);
    for (int attempt = 0; attempt < 3 && null_basis.cols() > 0; ++attempt) {
      const Vec coeff = gaussian_vector(rng, null_basis.cols());
      const Vec xv = null_basis * coeff;
      Mat x(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = xv(j * n + i);
      if (accept(polar_unitary(x))) return dec;
    }
  }

  for (int restart = 0; restart < 20; ++restart) {
    Mat u = haar_unitary(rng, n);
    for (int it = 0; it < 500; ++it) {
      u = polar_unitary(b * u * astar + bstar * u * a);
      if ((u * a * u.adjoint() - b).norm() <= 1e-8) break;
    }
    if (accept(u)) return dec;
  }
  return dec;
}

/// A point sample schedule for locality verdicts: structured points first,
/// then seeded random ones.
struct SamplingPlan {
  std::uint64_t seed = 1;
  int n_random = 100;
  bool with_unit = true;
  bool with_ideal_units = true;
  bool with_idempotents = true;
  bool with_counterexamples = true;
  bool with_separating = true;
};

using BlockwiseMap = std::function<BlockTuple(const BlockTuple&)>;

struct PointDecision {
  bool local = false;
  std::vector<int> matching;  // psi(f) block s is equivalent to f block matching[s]
  int obstruction_dim = 0;
  std::string obstruction_word;
};

/// True iff a dimension-preserving bijection alpha exists with
/// psi(f)_sigma unitarily equivalent to f_alpha(sigma) for every sigma.
/// Perfect matchings are searched per dimension class with augmenting paths in
/// least-index order, so the returned matching is deterministic.
inline PointDecision local_at_point_l2(const BlockwiseMap& psi, const BlockTuple& f,
                                       const DualObject& dual, double tol = 1e-8) {
  require_aligned(f, dual);
  const BlockTuple g = psi(f);
  require_aligned(g, dual);

  PointDecision out;
  out.matching.assign(dual.size(), -1);
  std::map<int, std::vector<int>> classes;
  for (int s = 0; s < dual.size(); ++s) classes[dual.dim(s)].push_back(s);

  for (const auto& [d, idx] : classes) {
    const int k = static_cast<int>(idx.size());
    std::vector<std::vector<EquivDecision>> dec(k);
    for (int i = 0; i < k; ++i) {
      dec[i].reserve(k);
      for (int j = 0; j < k; ++j)
        dec[i].push_back(unitary_equivalent(g.blocks[idx[i]], f.blocks[idx[j]], tol));
    }

    std::vector<int> match_right(k, -1);
    std::vector<char> visited(k);
    auto augment = [&](auto&& self, int i) -> bool {
      for (int j = 0; j < k; ++j)
        if (dec[i][j].equivalent && !visited[j]) {
          visited[j] = 1;
          if (match_right[j] < 0 || self(self, match_right[j])) {
            match_right[j] = i;
            return true;
          }
        }
      return false;
    };
    for (int i = 0; i < k; ++i) {
      std::fill(visited.begin(), visited.end(), 0);
      if (!augment(augment, i)) {
        out.local = false;
        out.obstruction_dim = d;
        for (int j = 0; j < k; ++j)
          if (!dec[i][j].equivalent) {
            out.obstruction_word = dec[i][j].mismatch_word;
            break;
          }
        return out;
      }
    }
    for (int j = 0; j < k; ++j) out.matching[idx[match_right[j]]] = idx[j];
  }
  out.local = true;
  return out;
}

/// Random idempotent tuple: blockwise S diag(1..1, 0..0) S^-1 with a
/// well-conditioned random S and random rank.
inline BlockTuple sample_idempotent_tuple(const DualObject& dual, CounterRng& rng) {
  BlockTuple t;
  for (int s = 0; s < dual.size(); ++s) {
    const int d = dual.dim(s);
    const int rank = static_cast<int>(rng.below(static_cast<std::uint64_t>(d) + 1));
    Mat basis;
    for (;;) {
      basis = gaussian_matrix(rng, d, d);
      Eigen::JacobiSVD<Mat> svd(basis);
      if (svd.singularValues()(d - 1) > 1e-3 * svd.singularValues()(0)) break;
    }
    Mat diag = Mat::Zero(d, d);
    for (int i = 0; i < rank; ++i) diag(i, i) = 1.0;
    t.blocks.push_back(basis * diag * basis.inverse());
  }
  return t;
}

struct L2Verdict {
  bool refuted = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::optional<BlockTuple> witness;
  int obstruction_dim = 0;
  std::string obstruction_word;
};

inline AlgebraElement separating_function(const FiniteGroup& g) {
  AlgebraElement f(g.order);
  for (int x = 0; x < g.order; ++x) f(x) = static_cast<double>(x + 1);
  return f;
}

/// LOCAL(sampled) is evidence over the plan's samples; REFUTED carries the
/// least-index witness point and is conclusive.
inline L2Verdict is_local_automorphism_l2(const BlockwiseMap& psi, const DualObject& dual,
                                          const SamplingPlan& plan) {
  L2Verdict verdict;
  verdict.seed = plan.seed;
  CounterRng rng(plan.seed, detail::hash_tag("l2-sampling"));

  auto check = [&](const BlockTuple& f) {
    ++verdict.samples;
    const PointDecision pd = local_at_point_l2(psi, f, dual);
    if (!pd.local) {
      verdict.refuted = true;
      verdict.witness = f;
      verdict.obstruction_dim = pd.obstruction_dim;
      verdict.obstruction_word = pd.obstruction_word;
      return false;
    }
    return true;
  };

  if (plan.with_unit && !check(identity_tuple(dual))) return verdict;
  if (plan.with_ideal_units)
    for (int s = 0; s < dual.size(); ++s)
      if (!check(indicator_tuple(dual, s))) return verdict;
  if (plan.with_idempotents)
    for (int t = 0; t < 3; ++t)
      if (!check(sample_idempotent_tuple(dual, rng))) return verdict;
  if (plan.with_counterexamples)
    for (int s = 0; s < dual.size(); ++s)
      if (dual.dim(s) >= 2) {
        BlockTuple f;
        for (int r = 0; r < dual.size(); ++r)
          f.blocks.push_back(r == s ? counterexample_matrix(dual.dim(s))
                                    : Mat(Mat::Zero(dual.dim(r), dual.dim(r))));
        if (!check(f)) return verdict;
      }
  if (plan.with_separating && !check(fourier(separating_function(dual.group), dual)))
    return verdict;
  for (int t = 0; t < plan.n_random; ++t)
    if (!check(random_tuple(dual, rng))) return verdict;
  return verdict;
}

/// For a block of dimension >= 3, a tuple at which the blockwise transpose on
/// sigma0 fails to be locally realizable: the counterexample matrix sits in
/// sigma0 and every other block of that dimension is pinned by a distinct
/// positive diagonal. Returns nothing for dimensions <= 2.
inline std::optional<BlockTuple> refute_blockwise_transpose(const DualObject& dual, int sigma0) {
  if (sigma0 < 0 || sigma0 >= dual.size())
    throw IndexOutOfRange("block index " + std::to_string(sigma0) + " out of range [0, " +
                          std::to_string(dual.size()) + ")");
  const int d0 = dual.dim(sigma0);
  if (d0 <= 2) return std::nullopt;

  BlockTuple f;
  int filler = 0;
  for (int s = 0; s < dual.size(); ++s) {
    const int d = dual.dim(s);
    if (s == sigma0) {
      f.blocks.push_back(counterexample_matrix(d0));
    } else if (d == d0) {
      ++filler;
      Mat m = Mat::Zero(d, d);
      for (int i = 0; i < d; ++i) m(i, i) = static_cast<double>(10 * filler + i + 1);
      f.blocks.push_back(m);
    } else {
      f.blocks.push_back(Mat::Zero(d, d));
    }
  }
  return f;
}

struct LpVerdict {
  bool refuted = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::optional<AlgebraElement> witness;
};

/// Tests pointwise agreement with some enumerated (character, automorphism)
/// pair at every sampled function; the separating function is always sampled
/// first. A weighted composition whose motion is a proper antiautomorphism of
/// a noncommutative group is refuted there.
inline LpVerdict local_check_lp(const WeightedComposition& psi, const FiniteGroup& g,
                                const SamplingPlan& plan) {
  const auto candidates = enumerate_isometric_automorphisms_lp(g);
  LpVerdict verdict;
  verdict.seed = plan.seed;
  CounterRng rng(plan.seed, detail::hash_tag("lp-sampling"));

  auto agrees = [&](const AlgebraElement& lhs, const WeightedComposition& c,
                    const AlgebraElement& f) {
    for (int x = 0; x < g.order; ++x)
      if (std::abs(lhs(x) - c.weight.value(x) * f(c.motion(x))) > 1e-9) return false;
    return true;
  };
  auto check = [&](const AlgebraElement& f) {
    ++verdict.samples;
    const AlgebraElement lhs = apply_weighted_composition(psi, f);
    for (const auto& c : candidates)
      if (agrees(lhs, c, f)) return true;
    verdict.refuted = true;
    verdict.witness = f;
    return false;
  };

  if (!check(separating_function(g))) return verdict;
  if (plan.with_unit && !check(convolution_unit(g))) return verdict;
  for (int t = 0; t < plan.n_random; ++t)
    if (!check(gaussian_vector(rng, g.order))) return verdict;
  return verdict;
}

}  // namespace galab
