#pragma once

#include <cmath>
#include <vector>

#include "galab/group.hpp"
#include "galab/linalg.hpp"
#include "galab/repr.hpp"

namespace galab {

/// A complex-valued function on the group, indexed by element.
using AlgebraElement = Vec;

/// Fourier-side element: one d_sigma x d_sigma block per irrep class.
struct BlockTuple {
  std::vector<Mat> blocks;

  /// (sum_sigma d_sigma ||A_sigma||_F^2)^(1/2).
  double c2_norm() const {
    double s = 0;
    for (const Mat& b : blocks) s += static_cast<double>(b.rows()) * b.squaredNorm();
    return std::sqrt(s);
  }
};

inline void require_same_size(const AlgebraElement& f, const FiniteGroup& g) {
  if (f.size() != g.order)
    throw SizeMismatch("function has " + std::to_string(f.size()) + " values, group has order " +
                       std::to_string(g.order));
}

inline void require_aligned(const BlockTuple& a, const DualObject& dual) {
  if (static_cast<int>(a.blocks.size()) != dual.size())
    throw ShapeMismatch("tuple has " + std::to_string(a.blocks.size()) + " blocks, dual has " +
                        std::to_string(dual.size()));
  for (int s = 0; s < dual.size(); ++s)
    if (a.blocks[s].rows() != dual.dim(s) || a.blocks[s].cols() != dual.dim(s))
      throw ShapeMismatch("block " + std::to_string(s) + " is " +
                          std::to_string(a.blocks[s].rows()) + "x" +
                          std::to_string(a.blocks[s].cols()) + ", expected " +
                          std::to_string(dual.dim(s)) + "x" + std::to_string(dual.dim(s)));
}

/// Convolution with normalized Haar measure: (f*g)(x) = (1/|G|) sum_y f(y) g(y^-1 x).
inline AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g,
                               const FiniteGroup& grp) {
  require_same_size(f, grp);
  require_same_size(g, grp);
  const int n = grp.order;
  AlgebraElement r = AlgebraElement::Zero(n);
  for (int y = 0; y < n; ++y) {
    const int yi = grp.inv(y);
    for (int x = 0; x < n; ++x) r(x) += f(y) * g(grp.mul(yi, x));
  }
  return r / static_cast<double>(n);
}

/// The unit of the convolution algebra, |G| * delta_e.
inline AlgebraElement convolution_unit(const FiniteGroup& g) {
  AlgebraElement u = AlgebraElement::Zero(g.order);
  u(g.identity) = static_cast<double>(g.order);
  return u;
}

/// ((1/|G|) sum_x |f(x)|^p)^(1/p); max |f(x)| for p = infinity.
inline double p_norm(const AlgebraElement& f, double p, const FiniteGroup& g) {
  require_same_size(f, g);
  if (std::isinf(p) && p > 0) return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidP("p must satisfy 1 <= p <= inf");
  double s = 0;
  for (int x = 0; x < g.order; ++x) s += std::pow(std::abs(f(x)), p);
  return std::pow(s / g.order, 1.0 / p);
}

/// Fourier transform: fhat(sigma) = (1/|G|) sum_x f(x) sigma(x). Multiplicative
/// for the convolution above: hat(f*g) = fhat ghat.
inline BlockTuple fourier(const AlgebraElement& f, const DualObject& dual) {
  require_same_size(f, dual.group);
  const int n = dual.group.order;
  BlockTuple out;
  for (int s = 0; s < dual.size(); ++s) {
    const Irrep& ir = dual.irreps[s];
    Mat acc = Mat::Zero(ir.dim, ir.dim);
    for (int x = 0; x < n; ++x) acc += f(x) * ir.matrices[x];
    out.blocks.push_back(acc / static_cast<double>(n));
  }
  return out;
}

/// Inversion: f(x) = sum_sigma d_sigma tr(A_sigma sigma(x^-1)).
inline AlgebraElement inverse_fourier(const BlockTuple& a, const DualObject& dual) {
  require_aligned(a, dual);
  const int n = dual.group.order;
  AlgebraElement f = AlgebraElement::Zero(n);
  for (int x = 0; x < n; ++x) {
    const int xi = dual.group.inv(x);
    cplx v = 0;
    for (int s = 0; s < dual.size(); ++s)
      v += static_cast<double>(dual.dim(s)) * (a.blocks[s] * dual.irreps[s].matrices[xi]).trace();
    f(x) = v;
  }
  return f;
}

/// Identity matrix in every block; the Fourier transform of the unit.
inline BlockTuple identity_tuple(const DualObject& dual) {
  BlockTuple t;
  for (int s = 0; s < dual.size(); ++s) t.blocks.push_back(Mat::Identity(dual.dim(s), dual.dim(s)));
  return t;
}

/// Identity in block sigma, zero elsewhere.
inline BlockTuple indicator_tuple(const DualObject& dual, int sigma) {
  if (sigma < 0 || sigma >= dual.size())
    throw IndexOutOfRange("block index " + std::to_string(sigma) + " out of range [0, " +
                          std::to_string(dual.size()) + ")");
  BlockTuple t;
  for (int s = 0; s < dual.size(); ++s)
    t.blocks.push_back(s == sigma ? Mat(Mat::Identity(dual.dim(s), dual.dim(s)))
                                  : Mat(Mat::Zero(dual.dim(s), dual.dim(s))));
  return t;
}

/// The unit of the minimal ideal attached to block sigma: the element whose
/// transform is the indicator tuple. Idempotent and central.
inline AlgebraElement minimal_ideal_unit(const DualObject& dual, int sigma) {
  return inverse_fourier(indicator_tuple(dual, sigma), dual);
}

inline BlockTuple random_tuple(const DualObject& dual, CounterRng& rng) {
  BlockTuple t;
  for (int s = 0; s < dual.size(); ++s) t.blocks.push_back(gaussian_matrix(rng, dual.dim(s), dual.dim(s)));
  return t;
}

inline void require_same_shape(const BlockTuple& a, const BlockTuple& b) {
  if (a.blocks.size() != b.blocks.size())
    throw ShapeMismatch("tuples have different block counts");
  for (std::size_t s = 0; s < a.blocks.size(); ++s)
    if (a.blocks[s].rows() != b.blocks[s].rows() || a.blocks[s].cols() != b.blocks[s].cols())
      throw ShapeMismatch("tuples disagree in block " + std::to_string(s));
}

/// Blockwise matrix product: the algebra product on the Fourier side.
inline BlockTuple tuple_product(const BlockTuple& a, const BlockTuple& b) {
  require_same_shape(a, b);
  BlockTuple r;
  for (std::size_t s = 0; s < a.blocks.size(); ++s) r.blocks.push_back(a.blocks[s] * b.blocks[s]);
  return r;
}

inline BlockTuple tuple_add(const BlockTuple& a, const BlockTuple& b) {
  require_same_shape(a, b);
  BlockTuple r;
  for (std::size_t s = 0; s < a.blocks.size(); ++s) r.blocks.push_back(a.blocks[s] + b.blocks[s]);
  return r;
}

inline BlockTuple tuple_sub(const BlockTuple& a, const BlockTuple& b) {
  require_same_shape(a, b);
  BlockTuple r;
  for (std::size_t s = 0; s < a.blocks.size(); ++s) r.blocks.push_back(a.blocks[s] - b.blocks[s]);
  return r;
}

inline BlockTuple tuple_scale(const BlockTuple& a, cplx c) {
  BlockTuple r;
  for (const Mat& m : a.blocks) r.blocks.push_back(c * m);
  return r;
}

inline double c2_distance(const BlockTuple& a, const BlockTuple& b) {
  return tuple_sub(a, b).c2_norm();
}

}  // namespace galab
