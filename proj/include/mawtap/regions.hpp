// SPDX-License-Identifier: Apache-2.0
//
// Closed-form secure-DoF theory: case regions, converse bound terms, and the
// jamming-dimension planner behind the achievable schemes. All arithmetic here
// is exact.
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mawtap/error.hpp"
#include "mawtap/model.hpp"
#include "mawtap/rational.hpp"

namespace mawtap {

enum class CaseId {
  C1_MleN,
  C1_M1ltN_bigNE,
  C1_M1gtN_M2ltN_bigNE,
  C2_M1ltN,
  C2_M1gtN_M2ltN,
  C2_M1gtN_M2geN,
  C3,
};

constexpr std::string_view to_string(CaseId c) noexcept {
  switch (c) {
    case CaseId::C1_MleN: return "C1_MleN";
    case CaseId::C1_M1ltN_bigNE: return "C1_M1ltN_bigNE";
    case CaseId::C1_M1gtN_M2ltN_bigNE: return "C1_M1gtN_M2ltN_bigNE";
    case CaseId::C2_M1ltN: return "C2_M1ltN";
    case CaseId::C2_M1gtN_M2ltN: return "C2_M1gtN_M2ltN";
    case CaseId::C2_M1gtN_M2geN: return "C2_M1gtN_M2geN";
    case CaseId::C3: return "C3";
  }
  return "?";
}

/// "C1", "C2" or "C3".
constexpr std::string_view family(CaseId c) noexcept {
  switch (c) {
    case CaseId::C1_MleN:
    case CaseId::C1_M1ltN_bigNE:
    case CaseId::C1_M1gtN_M2ltN_bigNE: return "C1";
    case CaseId::C2_M1ltN:
    case CaseId::C2_M1gtN_M2ltN:
    case CaseId::C2_M1gtN_M2geN: return "C2";
    case CaseId::C3: return "C3";
  }
  return "?";
}

namespace detail {
constexpr int pos(int x) noexcept { return x > 0 ? x : 0; }
}  // namespace detail

/// Region of the closed-form sum SDoF. Boundary configs (M1 = N or M2 = N) go to
/// the construction whose nullspace parts [M_i - N]^+ vanish; on those
/// boundaries neighbouring formulas coincide.
inline CaseId classify_case(const AntennaConfig& raw) {
  if (validate(raw) == Validity::degenerate)
    throw Error(Errc::degenerate_config, "N_E >= M1 + M2");
  const AntennaConfig c = canonical(raw);
  const int m = c.m();
  if (m <= c.n) return CaseId::C1_MleN;
  if (c.ne < detail::pos(c.m1 - c.n) + detail::pos(c.m2 - c.n)) return CaseId::C3;
  if (c.m1 <= c.n) return c.ne >= 2 * (m - c.n) ? CaseId::C1_M1ltN_bigNE : CaseId::C2_M1ltN;
  if (c.m2 < c.n)
    return c.ne >= c.m1 - c.n + 2 * c.m2 ? CaseId::C1_M1gtN_M2ltN_bigNE : CaseId::C2_M1gtN_M2ltN;
  return CaseId::C2_M1gtN_M2geN;
}

/// The three converse terms: receiver antennas, cooperative (M - N_E) and the
/// Z-channel bound (max(M1,N) + max(M2,N) - N_E) / 2.
inline std::array<Rational, 3> upper_bound_terms(const AntennaConfig& raw) {
  validate(raw);
  const AntennaConfig& c = raw;
  return {Rational(c.n), Rational(c.m() - c.ne),
          Rational(std::max(c.m1, c.n) + std::max(c.m2, c.n) - c.ne, 2)};
}

/// Value of the closed-form sum SDoF formula for a given region.
inline Rational case_formula(CaseId id, const AntennaConfig& raw) {
  const AntennaConfig c = canonical(raw);
  switch (family(id)[1]) {
    case '1': return Rational(c.m() - c.ne);
    case '2': return Rational(std::max(c.m1, c.n) + std::max(c.m2, c.n) - c.ne, 2);
    default: return Rational(c.n);
  }
}

/// Sum secure DoF; zero for degenerate configs.
inline Rational sum_sdof(const AntennaConfig& cfg) {
  if (validate(cfg) == Validity::degenerate) return Rational(0);
  return case_formula(classify_case(cfg), cfg);
}

enum class JamMethod { random, aligned, nullspace };

constexpr std::string_view to_string(JamMethod m) noexcept {
  switch (m) {
    case JamMethod::random: return "random";
    case JamMethod::aligned: return "aligned";
    case JamMethod::nullspace: return "nullspace";
  }
  return "?";
}

struct JamPart {
  JamMethod method;
  int dims;  // columns per extended block

  friend bool operator==(const JamPart&, const JamPart&) = default;
};

/// Jamming budgets and stream counts, all per extended block of `extension`
/// channel uses. Parts are listed in precoder column order: nullspace,
/// aligned, random.
struct JammingPlan {
  int extension = 1;
  std::vector<JamPart> tx1;
  std::vector<JamPart> tx2;
  int js = 0;  // receiver dimensions occupied by jamming
  int d1 = 0;
  int d2 = 0;

  const std::vector<JamPart>& parts(int tx) const { return tx == 1 ? tx1 : tx2; }

  int jam_dims(int tx) const {
    int s = 0;
    for (const auto& p : parts(tx)) s += p.dims;
    return s;
  }

  int method_dims(int tx, JamMethod m) const {
    int s = 0;
    for (const auto& p : parts(tx))
      if (p.method == m) s += p.dims;
    return s;
  }

  int streams() const noexcept { return d1 + d2; }
};

/// Exact bookkeeping for a plan: budgets, decodability and the closed-form
/// SDoF value.
inline bool verify_plan_arithmetic(const AntennaConfig& raw, const JammingPlan& plan) {
  const AntennaConfig c = canonical(raw);
  const int t = plan.extension;
  if (t < 1) return false;
  const int jam1 = plan.jam_dims(1), jam2 = plan.jam_dims(2);
  for (int tx : {1, 2})
    for (const auto& p : plan.parts(tx))
      if (p.dims < 0) return false;
  if (plan.d1 < 0 || plan.d2 < 0 || plan.js < 0) return false;
  if (jam1 + jam2 != t * c.ne) return false;
  if (plan.d1 + jam1 > t * c.m1 || plan.d2 + jam2 > t * c.m2) return false;
  if (plan.method_dims(1, JamMethod::aligned) != plan.method_dims(2, JamMethod::aligned)) return false;
  if (plan.method_dims(1, JamMethod::nullspace) > t * detail::pos(c.m1 - c.n)) return false;
  if (plan.method_dims(2, JamMethod::nullspace) > t * detail::pos(c.m2 - c.n)) return false;
  const int receiver_cost = plan.method_dims(1, JamMethod::aligned) + plan.method_dims(1, JamMethod::random) +
                            plan.method_dims(2, JamMethod::random);
  if (plan.js != receiver_cost) return false;
  if (t * c.n - plan.js < plan.streams()) return false;
  return Rational(plan.streams()) == Rational(t) * sum_sdof(c);
}

namespace detail {

inline bool try_allocate(const AntennaConfig& c, int t, Rational ds, JammingPlan& out) {
  const Rational total = Rational(t) * ds;
  if (!total.is_integer()) return false;
  const int d = static_cast<int>(total.num());
  const int e = t * c.ne;
  const int null1 = std::min(e, t * pos(c.m1 - c.n));
  const int null2 = std::min(e - null1, t * pos(c.m2 - c.n));
  const int k = pos(std::min(c.m1, c.n) + std::min(c.m2, c.n) - c.n);  // generic dim of col(H1) ∩ col(H2)
  const int rest = e - null1 - null2;
  const int aligned = std::min(rest / 2, t * k);
  const int rnd = rest - 2 * aligned;
  const int rnd1 = std::min(rnd, t * c.m1 - null1 - aligned);
  const int rnd2 = rnd - rnd1;
  if (rnd2 > t * c.m2 - null2 - aligned) return false;

  JammingPlan p;
  p.extension = t;
  auto push = [](std::vector<JamPart>& v, JamMethod m, int dims) {
    if (dims > 0) v.push_back({m, dims});
  };
  push(p.tx1, JamMethod::nullspace, null1);
  push(p.tx1, JamMethod::aligned, aligned);
  push(p.tx1, JamMethod::random, rnd1);
  push(p.tx2, JamMethod::nullspace, null2);
  push(p.tx2, JamMethod::aligned, aligned);
  push(p.tx2, JamMethod::random, rnd2);
  p.js = aligned + rnd;
  if (t * c.n - p.js < d) return false;
  p.d1 = std::min(t * c.m1 - p.jam_dims(1), d);
  p.d2 = d - p.d1;
  if (p.d2 > t * c.m2 - p.jam_dims(2)) return false;
  out = std::move(p);
  return true;
}

}  // namespace detail

/// Jamming allocation realizing the sum SDoF. Nullspace jamming is free at the
/// receiver and is used first (transmitter 1 first); the remaining eavesdropper
/// dimensions are covered by aligned pairs (two eavesdropper dimensions per
/// receiver dimension) up to the intersection size, then by random jamming.
/// Half-integer SDoF are realized over a two-use extension.
inline JammingPlan jamming_plan(const AntennaConfig& raw) {
  if (validate(raw) == Validity::degenerate)
    throw Error(Errc::degenerate_config, "no jamming plan for N_E >= M1 + M2");
  const AntennaConfig c = canonical(raw);
  const Rational ds = sum_sdof(c);
  JammingPlan plan;
  for (int t : {1, 2})
    if (detail::try_allocate(c, t, ds, plan)) return plan;
  throw Error(Errc::plan_mismatch, "no jamming allocation found");
}

}  // namespace mawtap
