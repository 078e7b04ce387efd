#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <complex>

#include "galab/rng.hpp"

namespace galab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// ||U U* - I||_F.
inline double unitarity_defect(const Mat& u) {
  return (u * u.adjoint() - Mat::Identity(u.rows(), u.cols())).norm();
}

/// Unitary polar factor via SVD; defined (as U V*) even for singular input.
inline Mat polar_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Entries with independent standard normal real and imaginary parts.
inline Mat gaussian_matrix(CounterRng& rng, Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal_complex();
  return m;
}

inline Vec gaussian_vector(CounterRng& rng, Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal_complex();
  return v;
}

inline Mat gaussian_hermitian(CounterRng& rng, Eigen::Index n) {
  Mat m = gaussian_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint()).eval();
}

/// Haar-distributed unitary: polar factor of a Ginibre matrix.
inline Mat haar_unitary(CounterRng& rng, Eigen::Index n) {
  return polar_unitary(gaussian_matrix(rng, n, n));
}

/// Orthonormal basis of the nullspace, spanned by right singular vectors with
/// singular value <= rel_tol * sigma_max. May have zero columns.
inline Mat nullspace(const Mat& m, double rel_tol = 1e-10) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() ? sv(0) : 0.0) * rel_tol;
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= cut) ++k;
  return svd.matrixV().rightCols(k);
}

}  // namespace galab
