// SPDX-License-Identifier: Apache-2.0
//
// Gaussian mutual-information rates at the receiver and the eavesdroppers,
// power sweeps and empirical DoF slopes.
//
// DoF convention: signalling is complex, so one interference-free stream
// contributes log2(P) bits per use; the empirical DoF is the slope of bits
// per channel use against log2(P).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "mawtap/error.hpp"
#include "mawtap/matlin.hpp"
#include "mawtap/model.hpp"
#include "mawtap/precoders.hpp"
#include "mawtap/random.hpp"
#include "mawtap/regions.hpp"

namespace mawtap {

struct RatePoint {
  double p = 0.0;
  double r = 0.0;
};

/// Secrecy-rate curve; slope and intercept from least squares of r on log2(p).
struct RateCurve {
  std::vector<RatePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of r against log2(p).
inline LineFit fit_log2_slope(std::span<const RatePoint> points) {
  const auto n = static_cast<double>(points.size());
  if (points.size() < 2) return {0.0, points.empty() ? 0.0 : points.front().r};
  double sx = 0.0, sy = 0.0;
  for (const auto& pt : points) {
    sx += std::log2(pt.p);
    sy += pt.r;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& pt : points) {
    const double dx = std::log2(pt.p) - mx;
    sxx += dx * dx;
    sxy += dx * (pt.r - my);
  }
  if (sxx == 0.0) return {0.0, my};
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

/// log2 det(I + F diag(q) F^H / noise_var): rate of independent Gaussian
/// streams through the effective channel F.
inline double gaussian_rate_bits(const CMatrix& f, std::span<const double> stream_powers, double noise_var) {
  if (static_cast<Eigen::Index>(stream_powers.size()) != f.cols())
    throw Error(Errc::dimension_mismatch, "one power per stream expected");
  if (f.rows() == 0 || f.cols() == 0) return 0.0;
  CMatrix scaled = f;
  for (Eigen::Index j = 0; j < f.cols(); ++j) scaled.col(j) *= std::sqrt(stream_powers[j] / noise_var);
  CMatrix k = CMatrix::Identity(f.rows(), f.rows()) + scaled * scaled.adjoint();
  k = (k + k.adjoint()).eval() * 0.5;
  return logdet_hpd(k) / std::numbers::ln2;
}

namespace detail {

/// Per-stream legitimate powers over a block: (1 - alpha) * T * P split evenly.
inline std::vector<double> legit_powers(const PrecoderSet& ps, const PowerPolicy& pol) {
  const double block = pol.p * ps.extension();
  std::vector<double> q;
  for (auto d : {ps.v1l.cols(), ps.v2l.cols()})
    for (Eigen::Index i = 0; i < d; ++i) q.push_back((1.0 - pol.alpha) * block / static_cast<double>(d));
  return q;
}

inline std::vector<double> jam_powers(const PrecoderSet& ps, const PowerPolicy& pol) {
  const double block = pol.p * ps.extension();
  std::vector<double> q;
  for (auto d : {ps.v1j.cols(), ps.v2j.cols()})
    for (Eigen::Index i = 0; i < d; ++i) q.push_back(pol.alpha * block / static_cast<double>(d));
  return q;
}

inline double receiver_rate_unchecked(const PrecoderSet& ps, const ChannelRealization& ch, const PowerPolicy& pol) {
  const int t = ps.extension();
  const CMatrix f = ps.u * hcat(lift(ch.h1, t) * ps.v1l, lift(ch.h2, t) * ps.v2l);
  return gaussian_rate_bits(f, legit_powers(ps, pol), ch.noise_var) / t;
}

inline CMatrix block_eve(const CMatrix& g, Eigen::Index precoder_rows, int t) {
  return g.cols() == precoder_rows ? g : lift(g, t);
}

inline double leakage_bits(const PrecoderSet& ps, const EveChannel& eve, double noise_var, const PowerPolicy& pol,
                           bool jamming) {
  const int t = ps.extension();
  const CMatrix g1 = block_eve(eve.g1, ps.v1l.rows(), t);
  const CMatrix g2 = block_eve(eve.g2, ps.v2l.rows(), t);
  if (g1.rows() == 0) return 0.0;
  const CMatrix gl = hcat(g1 * ps.v1l, g2 * ps.v2l);
  const CMatrix gj = hcat(g1 * ps.v1j, g2 * ps.v2j);
  const auto ql = legit_powers(ps, pol);
  std::vector<double> qj = jam_powers(ps, pol);
  if (!jamming) std::fill(qj.begin(), qj.end(), 0.0);

  // log det(s2 I + GJ QJ GJ^H + GL QL GL^H) - log det(s2 I + GJ QJ GJ^H)
  CMatrix noise = CMatrix::Identity(g1.rows(), g1.rows()) * noise_var;
  for (Eigen::Index j = 0; j < gj.cols(); ++j) noise += qj[j] * gj.col(j) * gj.col(j).adjoint();
  CMatrix total = noise;
  for (Eigen::Index j = 0; j < gl.cols(); ++j) total += ql[j] * gl.col(j) * gl.col(j).adjoint();
  noise = (noise + noise.adjoint()).eval() * 0.5;
  total = (total + total.adjoint()).eval() * 0.5;
  const double nats = logdet_hpd(total) - logdet_hpd(noise);
  return std::max(0.0, nats) / std::numbers::ln2 / t;
}

}  // namespace detail

/// Joint-decoding rate after zero-forcing, in bits per channel use.
inline double receiver_rate(const PrecoderSet& ps, const ChannelRealization& ch, const PowerPolicy& pol) {
  pol.check();
  const auto rep = verify_geometry(ps, ch.h1, ch.h2, ps.plan);
  if (!rep.pass()) throw Error(Errc::geometry_not_verified, rep.failures.front());
  return detail::receiver_rate_unchecked(ps, ch, pol);
}

/// Gaussian leakage to eavesdropper `eve_index` with jamming treated as
/// noise, in bits per channel use. Eavesdropper matrices given per use are
/// lifted as constant over the block.
inline double eavesdropper_leakage(const PrecoderSet& ps, const ChannelRealization& ch, const PowerPolicy& pol,
                                   std::size_t eve_index) {
  pol.check();
  if (eve_index >= ch.eves.size()) throw Error(Errc::invalid_eve_count, "no such eavesdropper");
  return detail::leakage_bits(ps, ch.eves[eve_index], ch.noise_var, pol, true);
}

/// Precoders with jamming switched off: every antenna carries its own
/// legitimate stream and the receiver applies no zero-forcing.
inline PrecoderSet unjammed_precoders(const AntennaConfig& cfg) {
  PrecoderSet ps;
  ps.plan.extension = 1;
  ps.plan.d1 = cfg.m1;
  ps.plan.d2 = cfg.m2;
  ps.v1l = CMatrix::Identity(cfg.m1, cfg.m1);
  ps.v2l = CMatrix::Identity(cfg.m2, cfg.m2);
  ps.v1j = CMatrix(cfg.m1, 0);
  ps.v2j = CMatrix(cfg.m2, 0);
  ps.u = CMatrix::Identity(cfg.n, cfg.n);
  return ps;
}

struct SweepOptions {
  std::vector<int> eve_counts;  // empty: one eavesdropper with N_E antennas (none if N_E = 0)
  bool jamming = true;
  double noise_var = 1.0;
};

struct SweepRow {
  double p = 0.0;
  double rate_rx = 0.0;
  double leak_max = 0.0;
  double secrecy = 0.0;
};

struct SweepResult {
  AntennaConfig cfg;
  Rational ds_theory;
  std::vector<SweepRow> rows;
  std::vector<std::vector<double>> leak_per_eve;  // [eve][p] trial means
  RateCurve curve;                                // secrecy rate against P
  double leakage_delta = 0.0;                     // max_j mean leak_j(p_max) - mean leak_j(p_min)
};

namespace detail {

inline std::vector<int> default_eves(const AntennaConfig& cfg, const std::vector<int>& requested) {
  if (!requested.empty()) return requested;
  if (cfg.ne > 0) return {cfg.ne};
  return {};
}

struct TrialSetup {
  PrecoderSet ps;
  ChannelRealization ch;
};

/// Draws the legitimate channel, builds and verifies the precoders, and draws
/// block eavesdropper channels for one Monte-Carlo trial.
inline TrialSetup setup_trial(const AntennaConfig& cfg, const JammingPlan* plan, const std::vector<int>& eves,
                              const SweepOptions& opt, std::uint64_t seed, std::uint64_t trial) {
  TrialSetup s;
  s.ch = sample_channels(cfg, {}, opt.noise_var, derive_seed(seed, {trial, 0}));
  if (plan) {
    s.ps = synthesize(*plan, s.ch.h1, s.ch.h2, derive_seed(seed, {trial, 1}));
    const auto rep = verify_geometry(s.ps, s.ch.h1, s.ch.h2, *plan);
    if (!rep.pass()) throw Error(Errc::geometry_not_verified, rep.failures.front());
  } else {
    s.ps = unjammed_precoders(cfg);
  }
  s.ch.eves = sample_block_eavesdroppers(cfg, eves, s.ps.extension(), derive_seed(seed, {trial, 2}));
  return s;
}

}  // namespace detail

/// Monte-Carlo power sweep. For every P the rows hold trial means of the
/// receiver rate, the worst eavesdropper leakage and the secrecy rate
/// [rate_rx - max_j leak_j]^+. Each trial fixes its legitimate channel and
/// eavesdropper draws across the whole P grid.
inline SweepResult sweep(const AntennaConfig& raw, double alpha, std::span<const double> p_grid, int trials,
                         std::uint64_t seed, const SweepOptions& opt = {}) {
  const AntennaConfig cfg = canonical(raw);
  validate(cfg);
  if (trials < 1) throw Error(Errc::invalid_config, "at least one trial required");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    PowerPolicy{p_grid[i], alpha}.check();
    if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw Error(Errc::invalid_config, "power grid must be increasing");
  }
  const auto eves = detail::default_eves(cfg, opt.eve_counts);

  SweepResult out;
  out.cfg = cfg;
  out.ds_theory = sum_sdof(cfg);
  out.rows.resize(p_grid.size());
  out.leak_per_eve.assign(eves.size(), std::vector<double>(p_grid.size(), 0.0));
  for (std::size_t i = 0; i < p_grid.size(); ++i) out.rows[i].p = p_grid[i];

  if (cfg.is_degenerate()) {
    for (const auto& r : out.rows) out.curve.points.push_back({r.p, 0.0});
    return out;
  }

  std::optional<JammingPlan> plan;
  if (opt.jamming) plan = jamming_plan(cfg);

  // Trials are summed in index order so results do not depend on scheduling.
  for (int trial = 0; trial < trials; ++trial) {
    const auto s = detail::setup_trial(cfg, plan ? &*plan : nullptr, eves, opt, seed, trial);
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      const PowerPolicy pol{p_grid[i], alpha};
      const double rx = detail::receiver_rate_unchecked(s.ps, s.ch, pol);
      double worst = 0.0;
      for (std::size_t j = 0; j < eves.size(); ++j) {
        const double leak = detail::leakage_bits(s.ps, s.ch.eves[j], s.ch.noise_var, pol, opt.jamming);
        out.leak_per_eve[j][i] += leak;
        worst = std::max(worst, leak);
      }
      out.rows[i].rate_rx += rx;
      out.rows[i].leak_max += worst;
      out.rows[i].secrecy += std::max(0.0, rx - worst);
    }
  }

  const double inv = 1.0 / trials;
  for (auto& r : out.rows) {
    r.rate_rx *= inv;
    r.leak_max *= inv;
    r.secrecy *= inv;
    out.curve.points.push_back({r.p, r.secrecy});
  }
  for (auto& per : out.leak_per_eve)
    for (auto& v : per) v *= inv;
  const auto fit = fit_log2_slope(out.curve.points);
  out.curve.slope = fit.slope;
  out.curve.intercept = fit.intercept;
  for (const auto& per : out.leak_per_eve)
    if (!per.empty()) out.leakage_delta = std::max(out.leakage_delta, per.back() - per.front());
  return out;
}

/// Mean leakage at p_hi minus mean leakage at p_lo, maximized over
/// eavesdroppers. With jamming the difference stays bounded as P grows.
inline double leakage_saturation(const AntennaConfig& cfg, double alpha, double p_lo, double p_hi, int trials,
                                 std::uint64_t seed, const SweepOptions& opt = {}) {
  if (!(p_hi >= 100.0 * p_lo)) throw Error(Errc::invalid_config, "p_hi must be at least 100 * p_lo");
  const std::vector<double> grid{p_lo, p_hi};
  return sweep(cfg, alpha, grid, trials, seed, opt).leakage_delta;
}

}  // namespace mawtap
