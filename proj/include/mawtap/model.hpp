// SPDX-License-Identifier: Apache-2.0
//
// System model of the two-transmitter MIMO multiple-access wiretap channel:
// antenna configurations, random channel draws and the power policy.
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mawtap/error.hpp"
#include "mawtap/matlin.hpp"
#include "mawtap/random.hpp"

namespace mawtap {

/// (M1, M2, N, N_E): transmitter antennas, receiver antennas and the largest
/// eavesdropper antenna count.
struct AntennaConfig {
  int m1 = 1;
  int m2 = 1;
  int n = 1;
  int ne = 0;

  int m() const noexcept { return m1 + m2; }
  bool is_canonical() const noexcept { return m1 >= m2; }
  bool is_degenerate() const noexcept { return ne >= m1 + m2; }

  friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;

  friend std::ostream& operator<<(std::ostream& os, const AntennaConfig& c) {
    return os << '(' << c.m1 << ',' << c.m2 << ',' << c.n << ',' << c.ne << ')';
  }
};

enum class Validity { ok, degenerate };

/// Checks the antenna counts. Throws InvalidConfig on zero antennas at a
/// transmitter or the receiver; configs with N_E >= M are `degenerate`.
inline Validity validate(const AntennaConfig& cfg) {
  if (cfg.m1 < 1 || cfg.m2 < 1 || cfg.n < 1 || cfg.ne < 0)
    throw Error(Errc::invalid_config, "antenna counts must satisfy m1, m2, n >= 1 and ne >= 0");
  return cfg.is_degenerate() ? Validity::degenerate : Validity::ok;
}

/// Relabels the transmitters so that m1 >= m2. The channel is symmetric under
/// the swap, so every result computed on the canonical form carries over.
inline AntennaConfig canonical(const AntennaConfig& cfg) {
  AntennaConfig c = cfg;
  if (c.m1 < c.m2) std::swap(c.m1, c.m2);
  return c;
}

/// Eavesdropper links from both transmitters. Shapes are (rows x m1, rows x m2)
/// per channel use, or (T*rows x T*m1, T*rows x T*m2) when drawn per block.
struct EveChannel {
  CMatrix g1;
  CMatrix g2;
};

struct ChannelRealization {
  CMatrix h1;  // n x m1
  CMatrix h2;  // n x m2
  std::vector<EveChannel> eves;
  double noise_var = 1.0;
};

/// Optional first/second moments of the eavesdropper fading. Only continuity
/// of the distribution matters to the scheme; defaults are zero mean, unit variance.
struct EveStatistics {
  double mean = 0.0;
  double variance = 1.0;
};

struct PowerPolicy {
  double p = 1.0;      // per-transmitter power P
  double alpha = 0.5;  // jamming fraction, P^J = alpha * P

  void check() const {
    if (!(p > 0.0)) throw Error(Errc::invalid_power_policy, "power must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::invalid_power_policy, "alpha must lie in (0,1)");
  }
};

namespace detail {

inline void check_eve_counts(const AntennaConfig& cfg, std::span<const int> eve_counts) {
  for (int c : eve_counts)
    if (c < 0 || c > cfg.ne)
      throw Error(Errc::invalid_eve_count,
                  "eavesdropper antenna count " + std::to_string(c) + " outside [0, " + std::to_string(cfg.ne) + "]");
}

}  // namespace detail

/// I.i.d. circularly-symmetric complex Gaussian draws for every link;
/// bitwise deterministic in `seed`.
inline ChannelRealization sample_channels(const AntennaConfig& cfg, std::span<const int> eve_counts,
                                          double noise_var, std::uint64_t seed, EveStatistics stats = {}) {
  validate(cfg);
  detail::check_eve_counts(cfg, eve_counts);
  if (!(noise_var > 0.0)) throw Error(Errc::invalid_config, "noise variance must be positive");
  Engine rng(seed);
  ChannelRealization ch;
  ch.noise_var = noise_var;
  ch.h1 = complex_gaussian(cfg.n, cfg.m1, rng);
  ch.h2 = complex_gaussian(cfg.n, cfg.m2, rng);
  ch.eves.reserve(eve_counts.size());
  for (int rows : eve_counts) {
    EveChannel e;
    e.g1 = complex_gaussian(rows, cfg.m1, rng, stats.mean, stats.variance);
    e.g2 = complex_gaussian(rows, cfg.m2, rng, stats.mean, stats.variance);
    ch.eves.push_back(std::move(e));
  }
  return ch;
}

/// Eavesdropper channels over a block of `extension` uses: each use gets an
/// independent draw (time-varying links), assembled block-diagonally.
inline std::vector<EveChannel> sample_block_eavesdroppers(const AntennaConfig& cfg, std::span<const int> eve_counts,
                                                          int extension, std::uint64_t seed,
                                                          EveStatistics stats = {}) {
  validate(cfg);
  detail::check_eve_counts(cfg, eve_counts);
  Engine rng(seed);
  std::vector<EveChannel> out;
  out.reserve(eve_counts.size());
  for (int rows : eve_counts) {
    std::vector<CMatrix> b1, b2;
    for (int t = 0; t < extension; ++t) {
      b1.push_back(complex_gaussian(rows, cfg.m1, rng, stats.mean, stats.variance));
      b2.push_back(complex_gaussian(rows, cfg.m2, rng, stats.mean, stats.variance));
    }
    out.push_back({block_diagonal(b1), block_diagonal(b2)});
  }
  return out;
}

}  // namespace mawtap
