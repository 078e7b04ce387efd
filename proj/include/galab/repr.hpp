#pragma once

#include <Eigen/Eigenvalues>
#include <limits>
#include <vector>

#include "galab/group.hpp"
#include "galab/linalg.hpp"
#include "galab/rng.hpp"

namespace galab {

/// One unitary irreducible representation: a matrix per group element.
struct Irrep {
  int dim = 0;
  std::vector<Mat> matrices;
  std::vector<cplx> character_row;  // traces, indexed by element
};

/// The dual object: one representative per equivalence class of irreducibles.
struct DualObject {
  FiniteGroup group;
  std::vector<Irrep> irreps;

  int size() const { return static_cast<int>(irreps.size()); }
  int dim(int s) const { return irreps[s].dim; }
};

namespace detail {

inline std::vector<cplx> trace_row(const std::vector<Mat>& mats) {
  std::vector<cplx> row(mats.size());
  for (std::size_t x = 0; x < mats.size(); ++x) row[x] = mats[x].trace();
  return row;
}

inline double row_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0;
  for (std::size_t x = 0; x < a.size(); ++x) d = std::max(d, std::abs(a[x] - b[x]));
  return d;
}

/// Tolerance-lexicographic order on character rows, descending so the trivial
/// representation (all-ones row) sorts first within its dimension class.
/// Entries within 1e-6 compare equal so the order is independent of numerical
/// noise.
inline bool row_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (std::abs(a[x].real() - b[x].real()) > 1e-6) return a[x].real() > b[x].real();
    if (std::abs(a[x].imag() - b[x].imag()) > 1e-6) return a[x].imag() > b[x].imag();
  }
  return false;
}

}  // namespace detail

/// Splits the left regular representation into irreducibles.
///
/// At each node a random Hermitian matrix is averaged over the restricted
/// representation; the average lies in the commutant, so its eigenspaces are
/// invariant subspaces. A flat spectrum certifies irreducibility (commutant is
/// scalars). Eigenvalues are clustered by relative gap; a gap inside the
/// ambiguity band (tol, 10*tol) raises DegenerateSplit so the caller can retry
/// with a fresh seed. Equivalence classes are keyed by character rows, and the
/// returned representatives are sorted by (dimension, character row), which
/// makes the dual, up to numerical noise in the matrices, seed-independent.
inline DualObject decompose_regular(const FiniteGroup& g, std::uint64_t seed, double tol = 1e-8,
                                    int bound = kDefaultOrderBound) {
  if (g.order > bound)
    throw OrderBoundExceeded("order " + std::to_string(g.order) + " exceeds bound " +
                             std::to_string(bound));
  if (!(tol > 0.0) || tol > 1e-4) throw Error("tol must lie in (0, 1e-4]");
  const int n = g.order;

  std::vector<Mat> regular(n, Mat::Zero(n, n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) regular[x](g.mul(x, y), y) = 1.0;

  CounterRng rng(seed, detail::hash_tag("decompose-regular"));
  std::vector<std::vector<Mat>> pieces;

  auto split = [&](auto&& self, const std::vector<Mat>& r) -> void {
    const Eigen::Index m = r[0].rows();
    if (m == 1) {
      pieces.push_back(r);
      return;
    }
    const Mat h = gaussian_hermitian(rng, m);
    Mat t = Mat::Zero(m, m);
    for (int x = 0; x < n; ++x) t += r[x] * h * r[x].adjoint();
    t /= n;

    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (t + t.adjoint()));
    const Eigen::VectorXd ev = es.eigenvalues();
    const double diam = ev(m - 1) - ev(0);
    const double scale = std::max({1.0, std::abs(ev(0)), std::abs(ev(m - 1))});
    if (diam <= 1e-9 * scale) {
      pieces.push_back(r);
      return;
    }

    std::vector<Eigen::Index> breaks;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      const double gap = ev(i + 1) - ev(i);
      if (gap > tol * diam) {
        if (gap < 10 * tol * diam)
          throw DegenerateSplit("eigenvalue gap " + std::to_string(gap) +
                                " inside the ambiguity band; retry with another seed");
        breaks.push_back(i + 1);
      }
    }
    if (breaks.empty())
      throw DegenerateSplit("spectrum spread without a usable gap; retry with another seed");
    breaks.push_back(m);

    Eigen::Index lo = 0;
    for (Eigen::Index hi : breaks) {
      const Mat w = es.eigenvectors().middleCols(lo, hi - lo);
      std::vector<Mat> sub(n);
      for (int x = 0; x < n; ++x) sub[x] = w.adjoint() * r[x] * w;
      self(self, sub);
      lo = hi;
    }
  };
  split(split, regular);

  struct Class {
    std::vector<cplx> row;
    int multiplicity = 0;
    std::vector<Mat> mats;
  };
  std::vector<Class> classes;
  for (auto& p : pieces) {
    auto row = detail::trace_row(p);
    bool found = false;
    for (auto& c : classes)
      if (detail::row_distance(c.row, row) <= 1e-6) {
        ++c.multiplicity;
        found = true;
        break;
      }
    if (!found) classes.push_back({std::move(row), 1, std::move(p)});
  }

  long long dim_sq = 0;
  for (const auto& c : classes) {
    const int d = static_cast<int>(c.mats[0].rows());
    if (c.multiplicity != d)
      throw Error("internal: class of dimension " + std::to_string(d) + " has multiplicity " +
                  std::to_string(c.multiplicity));
    dim_sq += static_cast<long long>(d) * d;
  }
  if (dim_sq != n) throw Error("internal: dimension identity violated");

  std::stable_sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) {
    const auto da = a.mats[0].rows(), db = b.mats[0].rows();
    if (da != db) return da < db;
    return detail::row_less(a.row, b.row);
  });

  DualObject dual;
  dual.group = g;
  for (auto& c : classes) {
    Irrep ir;
    ir.dim = static_cast<int>(c.mats[0].rows());
    ir.matrices = std::move(c.mats);
    ir.character_row = c.row;
    dual.irreps.push_back(std::move(ir));
  }
  return dual;
}

/// Diagnostics for a DualObject; `pass` requires every residual within the
/// stated tolerance and the dimension identity to hold exactly.
struct DualReport {
  static constexpr double kUnitarityTol = 1e-9;
  static constexpr double kHomomorphismTol = 1e-8;
  static constexpr double kSchurTol = 1e-8;
  static constexpr double kCharOrthTol = 1e-8;
  static constexpr double kCharGapMin = 1e-6;

  double unitarity = 0;
  double homomorphism = 0;
  double schur = 0;
  double char_orthogonality = 0;
  double commutant_spread = 0;
  double min_char_gap = std::numeric_limits<double>::infinity();
  int dim_square_sum = 0;
  bool dims_exact = false;
  bool pass = false;
};

inline DualReport check_dual(const DualObject& dual) {
  const FiniteGroup& g = dual.group;
  const int n = g.order;
  DualReport rep;

  long long dim_sq = 0;
  for (const Irrep& ir : dual.irreps) dim_sq += static_cast<long long>(ir.dim) * ir.dim;
  rep.dim_square_sum = static_cast<int>(dim_sq);
  rep.dims_exact = dim_sq == n;

  for (const Irrep& ir : dual.irreps) {
    for (int x = 0; x < n; ++x)
      rep.unitarity = std::max(rep.unitarity, unitarity_defect(ir.matrices[x]));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        rep.homomorphism =
            std::max(rep.homomorphism,
                     (ir.matrices[g.mul(x, y)] - ir.matrices[x] * ir.matrices[y]).norm());
  }

  CounterRng rng(0xC0FFEE, detail::hash_tag("check-dual"));
  for (const Irrep& ir : dual.irreps) {
    const Mat h = gaussian_hermitian(rng, ir.dim);
    Mat t = Mat::Zero(ir.dim, ir.dim);
    for (int x = 0; x < n; ++x) t += ir.matrices[x] * h * ir.matrices[x].adjoint();
    t /= n;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (t + t.adjoint()));
    rep.commutant_spread =
        std::max(rep.commutant_spread, es.eigenvalues()(ir.dim - 1) - es.eigenvalues()(0));
  }

  const int k = dual.size();
  for (int s = 0; s < k; ++s)
    for (int r2 = 0; r2 < k; ++r2) {
      const Irrep& a = dual.irreps[s];
      const Irrep& b = dual.irreps[r2];
      Mat acc = Mat::Zero(a.dim * b.dim, a.dim * b.dim);
      for (int x = 0; x < n; ++x) {
        const Mat& ma = a.matrices[x];
        const Mat& mb = b.matrices[x];
        for (int i = 0; i < a.dim; ++i)
          for (int j = 0; j < a.dim; ++j)
            for (int p = 0; p < b.dim; ++p)
              for (int q = 0; q < b.dim; ++q)
                acc(i * b.dim + p, j * b.dim + q) += ma(i, j) * std::conj(mb(p, q));
      }
      acc /= n;
      if (s == r2)
        for (int i = 0; i < a.dim; ++i)
          for (int j = 0; j < a.dim; ++j) acc(i * b.dim + i, j * b.dim + j) -= 1.0 / a.dim;
      rep.schur = std::max(rep.schur, acc.cwiseAbs().maxCoeff());

      cplx ip = 0;
      for (int x = 0; x < n; ++x) ip += a.character_row[x] * std::conj(b.character_row[x]);
      ip /= static_cast<double>(n);
      rep.char_orthogonality =
          std::max(rep.char_orthogonality, std::abs(ip - (s == r2 ? 1.0 : 0.0)));
      if (s != r2)
        rep.min_char_gap =
            std::min(rep.min_char_gap, detail::row_distance(a.character_row, b.character_row));
    }

  rep.pass = rep.dims_exact && rep.unitarity <= DualReport::kUnitarityTol &&
             rep.homomorphism <= DualReport::kHomomorphismTol &&
             rep.schur <= DualReport::kSchurTol &&
             rep.char_orthogonality <= DualReport::kCharOrthTol &&
             rep.min_char_gap > DualReport::kCharGapMin;
  return rep;
}

}  // namespace galab
