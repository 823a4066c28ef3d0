// SPDX-License-Identifier: Apache-2.0
//
// Cooperative-jamming precoder synthesis (random, aligned, nullspace), the
// legitimate precoders, and the receiver zero-forcing matrix, all over the
// block-diagonal extension H~ = I_T (x) H of a constant legitimate channel.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mawtap/error.hpp"
#include "mawtap/matlin.hpp"
#include "mawtap/random.hpp"
#include "mawtap/regions.hpp"

namespace mawtap {

inline constexpr double kGeometryTol = 1e-8;

struct JammingPrecoders {
  CMatrix v1j;  // (T*m1) x jam1
  CMatrix v2j;  // (T*m2) x jam2
};

struct PrecoderSet {
  JammingPlan plan;
  CMatrix v1l, v2l;  // legitimate, (T*m_i) x d_i
  CMatrix v1j, v2j;  // jamming, (T*m_i) x jam_i
  CMatrix u;         // receiver zero-forcing, (T*N - j_s) x (T*N)

  int extension() const noexcept { return plan.extension; }
};

namespace detail {

/// Spectral-norm scale of the pair of lifted channels.
inline double operator_scale(const CMatrix& a, const CMatrix& b) {
  auto spectral = [](const CMatrix& m) {
    return m.size() == 0 ? 0.0 : Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
  };
  return std::max(spectral(a), spectral(b));
}

inline CMatrix random_columns_in(const Subspace& s, int count, Engine& rng) {
  if (count == 0) return CMatrix(s.ambient(), 0);
  const CMatrix coeffs = complex_gaussian(s.dim(), count, rng);
  return orthonormal_basis(s.basis() * coeffs).basis();
}

}  // namespace detail

/// Jamming precoders for `plan` on the per-use channels h1 (N x M1), h2 (N x M2).
/// Per transmitter the columns are [nullspace | aligned | random], each
/// column scaled to unit norm.
inline JammingPrecoders build_jamming(const JammingPlan& plan, const CMatrix& h1, const CMatrix& h2,
                                      std::uint64_t seed) {
  require_finite(h1, "h1");
  require_finite(h2, "h2");
  if (h1.rows() != h2.rows()) throw Error(Errc::dimension_mismatch, "h1 and h2 have different receiver dimensions");
  const int t = plan.extension;
  const CMatrix ht1 = lift(h1, t), ht2 = lift(h2, t);
  Engine rng(seed);

  auto nullspace_part = [&](const CMatrix& ht, int dims) {
    if (dims == 0) return CMatrix(ht.cols(), 0);
    const Subspace null = nullspace(ht);
    if (null.dim() < dims)
      throw Error(Errc::plan_mismatch, "nullspace of dimension " + std::to_string(null.dim()) + " cannot host " +
                                           std::to_string(dims) + " jamming columns");
    return detail::random_columns_in(null, dims, rng);
  };
  CMatrix n1 = nullspace_part(ht1, plan.method_dims(1, JamMethod::nullspace));
  CMatrix n2 = nullspace_part(ht2, plan.method_dims(2, JamMethod::nullspace));

  const int aligned = plan.method_dims(1, JamMethod::aligned);
  if (aligned != plan.method_dims(2, JamMethod::aligned))
    throw Error(Errc::plan_mismatch, "aligned budgets differ between transmitters");
  CMatrix a1(ht1.cols(), 0), a2(ht2.cols(), 0);
  if (aligned > 0) {
    const Subspace common = intersect(orthonormal_basis(ht1), orthonormal_basis(ht2));
    if (common.dim() < aligned)
      throw Error(Errc::alignment_infeasible, "intersection dimension " + std::to_string(common.dim()) +
                                                  " is smaller than aligned budget " + std::to_string(aligned));
    const CMatrix target = detail::random_columns_in(common, aligned, rng);
    a1 = solve_consistent(ht1, target);
    a2 = solve_consistent(ht2, target);
  }

  auto random_part = [&](Eigen::Index rows, int dims) {
    if (dims == 0) return CMatrix(rows, 0);
    return orthonormal_basis(complex_gaussian(rows, dims, rng)).basis();
  };
  CMatrix r1 = random_part(ht1.cols(), plan.method_dims(1, JamMethod::random));
  CMatrix r2 = random_part(ht2.cols(), plan.method_dims(2, JamMethod::random));

  JammingPrecoders out{hcat(hcat(n1, a1), r1), hcat(hcat(n2, a2), r2)};
  normalize_columns(out.v1j);
  normalize_columns(out.v2j);
  return out;
}

/// Rows form an orthonormal basis of the complement of the receiver jamming
/// space span(H~1 v1j) + span(H~2 v2j).
inline CMatrix build_zero_forcing(const CMatrix& h1, const CMatrix& h2, const CMatrix& v1j, const CMatrix& v2j,
                                  int expected_js) {
  const int t = static_cast<int>(v1j.rows() / std::max<Eigen::Index>(h1.cols(), 1));
  if (t < 1 || v1j.rows() != t * h1.cols() || v2j.rows() != t * h2.cols())
    throw Error(Errc::dimension_mismatch, "jamming precoders do not match the channel shapes");
  const CMatrix ht1 = lift(h1, t), ht2 = lift(h2, t);
  const CMatrix image = hcat(ht1 * v1j, ht2 * v2j);
  const Subspace jam_space = orthonormal_basis(image, kRankTol, detail::operator_scale(ht1, ht2));
  if (jam_space.dim() != expected_js)
    throw Error(Errc::plan_mismatch, "receiver jamming space has dimension " + std::to_string(jam_space.dim()) +
                                         ", plan expects " + std::to_string(expected_js));
  return complement(jam_space).basis().adjoint();
}

inline CMatrix build_zero_forcing(const JammingPlan& plan, const CMatrix& h1, const CMatrix& h2,
                                  const JammingPrecoders& jam) {
  return build_zero_forcing(h1, h2, jam.v1j, jam.v2j, plan.js);
}

/// Legitimate precoders: the first d_i columns of a randomly rotated
/// orthonormal basis of the complement of span(v_ij) in C^(T*m_i).
inline std::pair<CMatrix, CMatrix> build_legit(const JammingPlan& plan, const CMatrix& v1j, const CMatrix& v2j,
                                               std::uint64_t seed) {
  Engine rng(seed);
  auto one = [&](const CMatrix& vj, int d) {
    const Subspace free = complement(orthonormal_basis(vj));
    if (d > free.dim())
      throw Error(Errc::plan_mismatch, std::to_string(d) + " streams exceed the " + std::to_string(free.dim()) +
                                           "-dimensional jamming-free input space");
    return detail::random_columns_in(free, d, rng);
  };
  CMatrix v1l = one(v1j, plan.d1);
  CMatrix v2l = one(v2j, plan.d2);
  return {std::move(v1l), std::move(v2l)};
}

/// Full construction: jamming, zero-forcing, then legitimate precoders.
inline PrecoderSet synthesize(const JammingPlan& plan, const CMatrix& h1, const CMatrix& h2, std::uint64_t seed) {
  PrecoderSet ps;
  ps.plan = plan;
  auto jam = build_jamming(plan, h1, h2, derive_seed(seed, {1}));
  ps.u = build_zero_forcing(plan, h1, h2, jam);
  auto [v1l, v2l] = build_legit(plan, jam.v1j, jam.v2j, derive_seed(seed, {2}));
  ps.v1j = std::move(jam.v1j);
  ps.v2j = std::move(jam.v2j);
  ps.v1l = std::move(v1l);
  ps.v2l = std::move(v2l);
  return ps;
}

struct GeometryReport {
  double alignment_residual = 0.0;     // worst angle-sine between paired aligned images
  double nullspace_residual = 0.0;     // ||H~ v|| / ||H~|| over nullspace columns
  double zf_residual = 0.0;            // ||U [H~1 v1j | H~2 v2j]|| / ||H~||
  double legit_orthogonality = 0.0;    // max |v_il^H v_ij|, deviation of v_il^H v_il from I
  double column_norm_error = 0.0;      // max | ||col|| - 1 | over all precoder columns
  double u_orthonormality = 0.0;       // max |U U^H - I|
  int decodable_rank = 0;
  int expected_rank = 0;
  bool dimensions_ok = false;
  std::vector<std::string> failures;

  bool pass() const noexcept { return failures.empty(); }
};

namespace detail {

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace detail

/// Checks every PrecoderSet invariant against `plan` and the channels.
inline GeometryReport verify_geometry(const PrecoderSet& ps, const CMatrix& h1, const CMatrix& h2,
                                      const JammingPlan& plan) {
  GeometryReport rep;
  const int t = plan.extension;
  const Eigen::Index nt = t * h1.rows();
  const int jam1 = plan.jam_dims(1), jam2 = plan.jam_dims(2);
  rep.expected_rank = plan.streams();

  rep.dimensions_ok = ps.v1j.rows() == t * h1.cols() && ps.v2j.rows() == t * h2.cols() &&
                      ps.v1l.rows() == t * h1.cols() && ps.v2l.rows() == t * h2.cols() && ps.v1j.cols() == jam1 &&
                      ps.v2j.cols() == jam2 && ps.v1l.cols() == plan.d1 && ps.v2l.cols() == plan.d2 &&
                      ps.u.cols() == nt && ps.u.rows() == nt - plan.js;
  if (!rep.dimensions_ok) {
    rep.failures.push_back("precoder dimensions do not match the plan");
    return rep;
  }

  const CMatrix ht1 = lift(h1, t), ht2 = lift(h2, t);
  const double hnorm = std::max(ht1.norm(), ht2.norm());

  for (const CMatrix* v : {&ps.v1l, &ps.v2l, &ps.v1j, &ps.v2j})
    for (Eigen::Index j = 0; j < v->cols(); ++j)
      rep.column_norm_error = std::max(rep.column_norm_error, std::abs(v->col(j).norm() - 1.0));

  rep.legit_orthogonality =
      std::max({detail::max_abs(ps.v1l.adjoint() * ps.v1j), detail::max_abs(ps.v2l.adjoint() * ps.v2j),
                detail::max_abs(ps.v1l.adjoint() * ps.v1l - CMatrix::Identity(plan.d1, plan.d1)),
                detail::max_abs(ps.v2l.adjoint() * ps.v2l - CMatrix::Identity(plan.d2, plan.d2))});

  // Column layout per transmitter: [nullspace | aligned | random].
  const int null1 = plan.method_dims(1, JamMethod::nullspace), null2 = plan.method_dims(2, JamMethod::nullspace);
  if (null1 > 0) rep.nullspace_residual = (ht1 * ps.v1j.leftCols(null1)).norm() / hnorm;
  if (null2 > 0) rep.nullspace_residual = std::max(rep.nullspace_residual, (ht2 * ps.v2j.leftCols(null2)).norm() / hnorm);

  const int aligned = plan.method_dims(1, JamMethod::aligned);
  if (aligned != plan.method_dims(2, JamMethod::aligned)) {
    rep.failures.push_back("aligned budgets differ between transmitters");
  } else {
    for (int j = 0; j < aligned; ++j) {
      const CVector a = ht1 * ps.v1j.col(null1 + j);
      const CVector b = ht2 * ps.v2j.col(null2 + j);
      const double an = a.norm(), bn = b.norm();
      if (an == 0.0 || bn == 0.0) {
        rep.alignment_residual = 1.0;
        continue;
      }
      const CVector off = a - b * (b.dot(a) / (bn * bn));
      rep.alignment_residual = std::max(rep.alignment_residual, off.norm() / an);
    }
  }

  const CMatrix jam_image = hcat(ht1 * ps.v1j, ht2 * ps.v2j);
  rep.zf_residual = jam_image.cols() == 0 ? 0.0 : (ps.u * jam_image).norm() / hnorm;
  rep.u_orthonormality = detail::max_abs(ps.u * ps.u.adjoint() - CMatrix::Identity(ps.u.rows(), ps.u.rows()));

  const CMatrix legit_image = ps.u * hcat(ht1 * ps.v1l, ht2 * ps.v2l);
  rep.decodable_rank = numerical_rank(legit_image, kRankTol, detail::operator_scale(ht1, ht2));

  auto check = [&](double value, double tol, const char* what) {
    if (!(value <= tol)) rep.failures.push_back(std::string(what) + " " + std::to_string(value));
  };
  check(rep.alignment_residual, kGeometryTol, "alignment residual");
  check(rep.nullspace_residual, kGeometryTol, "nullspace residual");
  check(rep.zf_residual, kGeometryTol, "zero-forcing residual");
  check(rep.legit_orthogonality, kGeometryTol, "legitimate/jamming orthogonality");
  check(rep.column_norm_error, kGeometryTol, "column norm");
  check(rep.u_orthonormality, kGeometryTol, "U orthonormality");
  if (rep.decodable_rank != rep.expected_rank)
    rep.failures.push_back("decodable rank " + std::to_string(rep.decodable_rank) + " != " +
                           std::to_string(rep.expected_rank));
  return rep;
}

/// Rank of the eavesdropper's view of all jamming columns; g1, g2 are the
/// block eavesdropper channels (T*rows x T*m_i).
inline int jamming_coverage_rank(const PrecoderSet& ps, const CMatrix& g1, const CMatrix& g2) {
  const int t = ps.extension();
  const CMatrix e1 = g1.cols() == ps.v1j.rows() ? g1 : lift(g1, t);
  const CMatrix e2 = g2.cols() == ps.v2j.rows() ? g2 : lift(g2, t);
  return numerical_rank(hcat(e1 * ps.v1j, e2 * ps.v2j), kRankTol);
}

}  // namespace mawtap
