#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "affrig/errors.hpp"

namespace affrig {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Default relative singular-value cutoff for numerical kernels.
inline constexpr double kDefaultRelTol = 1e-9;

/// Orthonormal basis of a numerical kernel.
template <typename Scalar>
struct KernelBasis {
  int dimension = 0;
  MatrixX<Scalar> basis;           // cols x dimension, orthonormal columns
  Scalar threshold_used = 0;       // relative cutoff applied to sigma_max
  Scalar absolute_cutoff = 0;      // threshold_used * sigma_max
  VectorX<Scalar> singular_values; // descending, min(rows, cols) of them

  /// Smallest singular value kept out of the kernel divided by sigma_max, or 0.
  Scalar gap_above() const {
    const Eigen::Index rank = basis.rows() - dimension;
    if (rank <= 0 || singular_values(0) == 0) return 0;
    return singular_values(rank - 1) / singular_values(0);
  }

  /// Largest singular value inside the kernel divided by sigma_max, or 0.
  Scalar largest_inside() const {
    const Eigen::Index rank = basis.rows() - dimension;
    if (rank >= singular_values.size() || singular_values(0) == 0) return 0;
    return singular_values(rank) / singular_values(0);
  }
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Right singular directions with singular value <= rel_tol * sigma_max.
///
/// A zero matrix (or one with no rows) has the whole space as kernel.
template <typename Derived>
KernelBasis<typename Derived::Scalar> numerical_kernel(const Eigen::MatrixBase<Derived>& m,
                                                       typename Derived::Scalar rel_tol) {
  using Scalar = typename Derived::Scalar;
  if (!(rel_tol > 0 && rel_tol < 1)) throw InvalidInput("rel_tol must lie in (0, 1)");
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");

  KernelBasis<Scalar> out;
  out.threshold_used = rel_tol;
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0 || cols == 0 || m.isZero(0)) {
    out.dimension = static_cast<int>(cols);
    out.basis = MatrixX<Scalar>::Identity(cols, cols);
    out.singular_values = VectorX<Scalar>::Zero(std::min(m.rows(), cols));
    return out;
  }

  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m.eval(), Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const Scalar sigma_max = out.singular_values(0);
  out.absolute_cutoff = rel_tol * sigma_max;
  Eigen::Index rank = 0;
  while (rank < out.singular_values.size() && out.singular_values(rank) > out.absolute_cutoff)
    ++rank;
  out.dimension = static_cast<int>(cols - rank);
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

/// Numerical rank at the same cutoff as numerical_kernel.
template <typename Derived>
int numerical_rank(const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar rel_tol) {
  return static_cast<int>(m.cols()) - numerical_kernel(m, rel_tol).dimension;
}

/// Minimal-norm minimizer of ||A x - b||.
template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> least_squares(const Eigen::MatrixBase<DerivedA>& a,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.rows() != b.rows()) throw InvalidInput("least_squares: row count mismatch");
  if (!a.allFinite() || !b.allFinite()) throw InvalidInput("least_squares: non-finite input");
  if (a.rows() == 0 || a.isZero(0)) return VectorX<Scalar>::Zero(a.cols());
  Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>> cod(a.eval());
  return cod.solve(b.eval());
}

/// Outcome of psd_cholesky: a lower-triangular factor, or nothing when the input
/// is indefinite beyond tolerance.
template <typename Scalar>
struct PsdFactor {
  std::optional<MatrixX<Scalar>> lower;
  Scalar min_eigenvalue = 0;
  Scalar norm = 0;  // spectral norm of the input
  bool clipped = false;
};

inline constexpr double kDefaultPsdTol = 1e-7;

/// Cholesky-type factor of a symmetric matrix that may be slightly indefinite.
///
/// Eigenvalues in [-tol*||G||, 0) are clipped to zero; L L^T reproduces the
/// clipped matrix. Zero pivots are handled so semidefinite input factors too.
template <typename Derived>
PsdFactor<typename Derived::Scalar> psd_cholesky(const Eigen::MatrixBase<Derived>& g,
                                                 typename Derived::Scalar tol = kDefaultPsdTol) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  if (g.rows() != g.cols()) throw InvalidInput("psd_cholesky: matrix is not square");
  if (!g.allFinite()) throw InvalidInput("psd_cholesky: non-finite input");
  const Scalar scale = g.cwiseAbs().maxCoeff();
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-10) * std::max(scale, Scalar(1)))
    throw InvalidInput("psd_cholesky: matrix is not symmetric");

  PsdFactor<Scalar> out;
  const Eigen::Index n = g.rows();
  if (n == 0) {
    out.lower = MatrixX<Scalar>(0, 0);
    return out;
  }
  const MatrixX<Scalar> sym = (g + g.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(sym);
  const VectorX<Scalar>& lambda = eig.eigenvalues();
  out.min_eigenvalue = lambda.minCoeff();
  out.norm = lambda.cwiseAbs().maxCoeff();
  if (out.min_eigenvalue < -tol * out.norm) return out;

  MatrixX<Scalar> clipped = sym;
  if (out.min_eigenvalue < 0) {
    out.clipped = true;
    clipped = eig.eigenvectors() * lambda.cwiseMax(Scalar(0)).asDiagonal() *
              eig.eigenvectors().transpose();
  }

  // Outer-product Cholesky; a pivot below the noise floor zeroes its column.
  const Scalar floor = std::numeric_limits<Scalar>::epsilon() * Scalar(n) * std::max(out.norm, Scalar(1e-300));
  MatrixX<Scalar> work = clipped;
  MatrixX<Scalar> l = MatrixX<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Scalar pivot = work(j, j);
    if (pivot <= floor) continue;
    const Scalar root = sqrt(pivot);
    l.col(j).tail(n - j) = work.col(j).tail(n - j) / root;
    work.bottomRightCorner(n - j, n - j).noalias() -=
        l.col(j).tail(n - j) * l.col(j).tail(n - j).transpose();
  }
  out.lower = std::move(l);
  return out;
}

}  // namespace affrig
