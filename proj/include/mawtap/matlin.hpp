// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrix and subspace toolkit.
//
// All rank decisions use a relative singular-value cutoff: sigma_i is treated
// as zero when sigma_i <= tol * max(sigma_max, scale). The default tolerance is
// 1e-9; `scale` defaults to 0 (purely relative) and lets callers pass the norm
// of the operator a matrix was derived from, so images that vanish up to
// round-off are recognized as zero.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "mawtap/error.hpp"

namespace mawtap {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kRankTol = 1e-9;
inline constexpr double kOrthoTol = 1e-10;

inline bool all_finite(const CMatrix& m) {
  return m.size() == 0 || m.allFinite();
}

inline void require_finite(const CMatrix& m, const char* what) {
  if (!all_finite(m)) throw Error(Errc::invalid_matrix, std::string(what) + " has non-finite entries");
}

namespace detail {

template <typename Values>
Eigen::Index count_above(const Values& s, double tol, double scale) {
  if (s.size() == 0) return 0;
  const double cut = tol * std::max(s(0), scale);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

}  // namespace detail

/// Numerical rank with the cutoff described above.
inline int numerical_rank(const CMatrix& m, double tol = kRankTol, double scale = 0.0) {
  if (m.size() == 0) return 0;
  require_finite(m, "rank argument");
  Eigen::JacobiSVD<CMatrix> svd(m);
  return static_cast<int>(detail::count_above(svd.singularValues(), tol, scale));
}

/// A subspace of C^ambient held as an orthonormal column basis (ambient x dim).
class Subspace {
 public:
  explicit Subspace(Eigen::Index ambient = 0) : basis_(ambient, 0) {}

  /// Wraps a basis that is already orthonormal; checked at 1e-10.
  static Subspace from_orthonormal(CMatrix basis) {
    require_finite(basis, "subspace basis");
    if (basis.cols() > basis.rows())
      throw Error(Errc::dimension_mismatch, "subspace dimension exceeds ambient dimension");
    if (basis.cols() > 0) {
      const CMatrix gram = basis.adjoint() * basis;
      const double err = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
      if (err > kOrthoTol) throw Error(Errc::invalid_matrix, "basis columns are not orthonormal");
    }
    Subspace s;
    s.basis_ = std::move(basis);
    return s;
  }

  Eigen::Index ambient() const noexcept { return basis_.rows(); }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const CMatrix& basis() const noexcept { return basis_; }

  CMatrix projector() const { return basis_ * basis_.adjoint(); }

  /// Largest distance of a column of `m` from this subspace, relative to the column norm.
  double containment_residual(const CMatrix& m) const {
    if (m.rows() != ambient()) throw Error(Errc::dimension_mismatch, "containment check ambient mismatch");
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const CVector col = m.col(j);
      const double nrm = col.norm();
      if (nrm == 0.0) continue;
      const CVector rest = col - basis_ * (basis_.adjoint() * col);
      worst = std::max(worst, rest.norm() / nrm);
    }
    return worst;
  }

 private:
  CMatrix basis_;
};

/// Orthonormal basis of the column space of `m`. A matrix with zero columns
/// yields the zero subspace of C^rows.
inline Subspace orthonormal_basis(const CMatrix& m, double tol = kRankTol, double scale = 0.0) {
  require_finite(m, "orthonormal_basis argument");
  if (m.rows() == 0) throw Error(Errc::invalid_matrix, "orthonormal_basis of a matrix with no rows");
  if (m.cols() == 0) return Subspace(m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const Eigen::Index r = detail::count_above(svd.singularValues(), tol, scale);
  return Subspace::from_orthonormal(svd.matrixU().leftCols(r));
}

/// Orthonormal basis of { x : m x = 0 } inside C^cols.
inline Subspace nullspace(const CMatrix& m, double tol = kRankTol) {
  require_finite(m, "nullspace argument");
  if (m.cols() == 0) throw Error(Errc::invalid_matrix, "nullspace of a matrix with no columns");
  if (m.rows() == 0) return Subspace::from_orthonormal(CMatrix::Identity(m.cols(), m.cols()));
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = detail::count_above(svd.singularValues(), tol, 0.0);
  return Subspace::from_orthonormal(svd.matrixV().rightCols(m.cols() - r));
}

/// Intersection of two subspaces via the nullspace of [B1 | -B2].
inline Subspace intersect(const Subspace& s1, const Subspace& s2, double tol = kRankTol) {
  if (s1.ambient() != s2.ambient())
    throw Error(Errc::dimension_mismatch, "intersect: ambient dimensions differ");
  if (s1.dim() == 0 || s2.dim() == 0) return Subspace(s1.ambient());
  CMatrix stacked(s1.ambient(), s1.dim() + s2.dim());
  stacked << s1.basis(), -s2.basis();
  const Subspace coeffs = nullspace(stacked, tol);
  if (coeffs.dim() == 0) return Subspace(s1.ambient());
  const CMatrix vectors = s1.basis() * coeffs.basis().topRows(s1.dim());
  return orthonormal_basis(vectors, tol);
}

/// Orthogonal complement of `s` inside its ambient space.
inline Subspace complement(const Subspace& s) {
  const Eigen::Index n = s.ambient();
  if (s.dim() == 0) return Subspace::from_orthonormal(CMatrix::Identity(n, n));
  if (s.dim() == n) return Subspace(n);
  Eigen::HouseholderQR<CMatrix> qr(s.basis());
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  return Subspace::from_orthonormal(q.rightCols(n - s.dim()));
}

/// Minimum-norm least-squares solution of a X = b; throws InconsistentSystem
/// when the relative residual exceeds `tol`.
inline CMatrix solve_consistent(const CMatrix& a, const CMatrix& b, double tol = kRankTol) {
  require_finite(a, "solve_consistent lhs");
  require_finite(b, "solve_consistent rhs");
  if (a.rows() != b.rows()) throw Error(Errc::dimension_mismatch, "solve_consistent: row counts differ");
  if (b.cols() == 0) return CMatrix(a.cols(), 0);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const Eigen::Index r = detail::count_above(s, kRankTol, 0.0);
  CMatrix x = CMatrix::Zero(a.cols(), b.cols());
  if (r > 0) {
    const CMatrix ub = svd.matrixU().leftCols(r).adjoint() * b;
    x = svd.matrixV().leftCols(r) * (s.head(r).cwiseInverse().asDiagonal() * ub);
  }
  const double bn = b.norm();
  if (bn > 0.0) {
    const double rel = (a * x - b).norm() / bn;
    if (rel > tol)
      throw Error(Errc::inconsistent_system, "relative residual " + std::to_string(rel) + " exceeds tolerance");
  }
  return x;
}

/// log det of a Hermitian positive-definite matrix (natural log), via Cholesky.
inline double logdet_hpd(const CMatrix& m) {
  require_finite(m, "logdet_hpd argument");
  if (m.rows() != m.cols()) throw Error(Errc::not_positive_definite, "matrix is not square");
  if (m.rows() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(Errc::not_positive_definite, "matrix is not Hermitian");
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw Error(Errc::not_positive_definite, "Cholesky factorization failed");
  double acc = 0.0;
  const CMatrix& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) throw Error(Errc::not_positive_definite, "non-positive pivot");
    acc += std::log(d);
  }
  return 2.0 * acc;
}

/// Block-diagonal lifting I_T (x) h: the channel seen over T uses of a constant link.
inline CMatrix lift(const CMatrix& h, int extension) {
  CMatrix out = CMatrix::Zero(h.rows() * extension, h.cols() * extension);
  for (int t = 0; t < extension; ++t) out.block(t * h.rows(), t * h.cols(), h.rows(), h.cols()) = h;
  return out;
}

/// Block-diagonal stack of possibly different blocks.
template <typename Range>
CMatrix block_diagonal(const Range& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const CMatrix& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const CMatrix& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

/// Horizontal concatenation [a | b].
inline CMatrix hcat(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::dimension_mismatch, "hcat: row counts differ");
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

/// Scales every nonzero column to unit Euclidean norm.
inline void normalize_columns(CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double n = m.col(j).norm();
    if (n > 0.0) m.col(j) /= n;
  }
}

}  // namespace mawtap
