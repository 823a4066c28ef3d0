// SPDX-License-Identifier: Apache-2.0
//
// Desk-scale Wyner random-binning wiretap codec over binary words, with exact
// equivocation at an erasure eavesdropper. The main channel is noiseless.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mawtap/error.hpp"
#include "mawtap/random.hpp"

namespace mawtap {

inline constexpr int kMaxCodeLength = 16;
inline constexpr int kMaxEnumerationLength = 12;

using Codeword = std::uint32_t;  // low n bits used

/// 2^(n R) bins (messages) of 2^(n (Rt - R)) distinct codewords each.
class WiretapCode {
 public:
  int n() const noexcept { return n_; }
  double rate_total() const noexcept { return static_cast<double>(total_bits_) / n_; }
  double rate_secret() const noexcept { return static_cast<double>(secret_bits_) / n_; }
  int secret_bits() const noexcept { return secret_bits_; }  // n R
  int random_bits() const noexcept { return total_bits_ - secret_bits_; }  // n (Rt - R)
  std::size_t bin_count() const noexcept { return bins_.size(); }
  std::size_t bin_size() const noexcept { return bins_.empty() ? 0 : bins_.front().size(); }
  const std::vector<std::vector<Codeword>>& bins() const noexcept { return bins_; }

  /// (w, v) for a codeword, if present.
  std::optional<std::pair<std::size_t, std::size_t>> find(Codeword c) const {
    const auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend WiretapCode build_code(int n, double rate_total, double rate_secret, std::uint64_t seed);

 private:
  int n_ = 0;
  int total_bits_ = 0;
  int secret_bits_ = 0;
  std::vector<std::vector<Codeword>> bins_;
  std::unordered_map<Codeword, std::pair<std::size_t, std::size_t>> index_;
};

namespace detail {

/// n * rate as an exact integer bit count, or nullopt if not integral.
inline std::optional<int> bit_count(int n, double rate) {
  const double x = n * rate;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9) return std::nullopt;
  return static_cast<int>(r);
}

}  // namespace detail

/// Draws 2^(n Rt) distinct uniform n-bit codewords (collisions are resampled)
/// and splits them, in draw order, into 2^(n R) bins.
inline WiretapCode build_code(int n, double rate_total, double rate_secret, std::uint64_t seed) {
  if (n < 1 || n > kMaxCodeLength)
    throw Error(Errc::code_too_large, "block length must lie in [1, " + std::to_string(kMaxCodeLength) + "]");
  const auto total = detail::bit_count(n, rate_total);
  const auto secret = detail::bit_count(n, rate_secret);
  if (!total || !secret) throw Error(Errc::invalid_code_parameters, "n*Rt and n*R must be integers");
  if (*secret < 0 || *secret > *total) throw Error(Errc::invalid_code_parameters, "rates must satisfy 0 <= R <= Rt");
  if (*total > n) throw Error(Errc::code_too_large, "2^(n Rt) distinct codewords do not fit in n bits");

  WiretapCode code;
  code.n_ = n;
  code.total_bits_ = *total;
  code.secret_bits_ = *secret;
  const std::size_t count = std::size_t{1} << *total;
  const std::size_t per_bin = std::size_t{1} << (*total - *secret);

  Engine rng(seed);
  std::uniform_int_distribution<Codeword> draw(0, static_cast<Codeword>((std::uint64_t{1} << n) - 1));
  std::unordered_set<Codeword> seen;
  std::vector<Codeword> words;
  words.reserve(count);
  while (words.size() < count) {
    const Codeword c = draw(rng);
    if (seen.insert(c).second) words.push_back(c);
  }
  code.bins_.resize(std::size_t{1} << *secret);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t w = i / per_bin, v = i % per_bin;
    code.bins_[w].push_back(words[i]);
    code.index_.emplace(words[i], std::make_pair(w, v));
  }
  return code;
}

/// Stochastic encoder: a uniformly chosen codeword from bin `w`.
inline Codeword encode(const WiretapCode& code, std::size_t w, std::uint64_t seed) {
  if (w >= code.bin_count()) throw Error(Errc::invalid_message, "message index out of range");
  Engine rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, code.bin_size() - 1);
  return code.bins()[w][pick(rng)];
}

/// Exact lookup decoder for the noiseless main channel; returns (w, v).
inline std::pair<std::size_t, std::size_t> decode_main(const WiretapCode& code, Codeword y) {
  if (auto wv = code.find(y)) return *wv;
  throw Error(Errc::decode_failure, "received word is not a codeword");
}

struct EraseChannel {
  double delta = 0.5;  // per-bit erasure probability

  void check() const {
    if (!(delta >= 0.0 && delta <= 1.0)) throw Error(Errc::invalid_config, "erasure probability outside [0,1]");
  }
};

/// H(W | Z = c restricted to `mask`) averaged over codewords, for each of the
/// 2^n reveal masks. Entry `mask` is the equivocation when exactly the bits in
/// `mask` reach the eavesdropper.
inline std::vector<double> equivocation_profile(const WiretapCode& code) {
  const int n = code.n();
  if (n > kMaxEnumerationLength)
    throw Error(Errc::enumeration_budget_exceeded,
                "exact equivocation limited to n <= " + std::to_string(kMaxEnumerationLength));
  const std::size_t bins = code.bin_count();
  std::vector<std::pair<Codeword, std::uint32_t>> keyed;  // (codeword, bin)
  for (std::size_t w = 0; w < bins; ++w)
    for (Codeword c : code.bins()[w]) keyed.emplace_back(c, static_cast<std::uint32_t>(w));
  const std::size_t total = keyed.size();

  // x log2 x for every count that can occur.
  std::vector<double> xlogx(total + 1, 0.0);
  for (std::size_t c = 2; c <= total; ++c) xlogx[c] = static_cast<double>(c) * std::log2(static_cast<double>(c));

  const std::size_t words = std::size_t{1} << n;
  std::vector<std::uint32_t> group(words, 0);       // |{c : c & mask = z}|
  std::vector<std::uint32_t> cell(words * bins, 0);  // |{c in bin w : c & mask = z}|
  std::vector<double> profile(words, 0.0);
  for (std::uint32_t mask = 0; mask < words; ++mask) {
    for (const auto& [c, w] : keyed) {
      const Codeword z = c & mask;
      ++group[z];
      ++cell[z * bins + w];
    }
    // sum_z |z| H(W | Z = z) = sum_z |z| log2|z| - sum_{z,w} c_zw log2 c_zw
    double acc = 0.0;
    for (const auto& [c, w] : keyed) {
      const Codeword z = c & mask;
      if (auto& g = group[z]; g != 0) {
        acc += xlogx[g];
        g = 0;
      }
      if (auto& k = cell[z * bins + w]; k != 0) {
        acc -= xlogx[k];
        k = 0;
      }
    }
    profile[mask] = acc / static_cast<double>(total);
  }
  return profile;
}

/// Weights a mask profile by the erasure channel: each bit is revealed with
/// probability 1 - delta.
inline double equivocation_from_profile(std::span<const double> profile, int n, const EraseChannel& ch) {
  ch.check();
  double h = 0.0;
  for (std::uint32_t mask = 0; mask < profile.size(); ++mask) {
    const int shown = std::popcount(mask);
    const double w = std::pow(1.0 - ch.delta, shown) * std::pow(ch.delta, n - shown);
    if (w != 0.0) h += w * profile[mask];
  }
  return h;
}

/// Exact H(W | Z) in bits for uniform W, uniform in-bin choice and i.i.d. erasures.
inline double equivocation_exact(const WiretapCode& code, const EraseChannel& ch) {
  ch.check();
  return equivocation_from_profile(equivocation_profile(code), code.n(), ch);
}

/// Defaults follow R^t = I(s;Y), R = I(s;Y) - I(s;Z) for a noiseless main
/// channel and an erasure eavesdropper at delta = 0.5.
struct BinningParams {
  double rate_total = 1.0;
  double rate_secret = 0.5;
  double delta = 0.5;
};

struct TrendEntry {
  int n = 0;
  std::vector<double> equivocation;          // per seed, bits
  std::vector<double> normalized;            // per seed, H(W|Z) / (n R)
  std::optional<double> mean_normalized;     // empty when there is no secret message
  std::string note;
};

/// Mean normalized equivocation H(W|Z)/(nR) for each block length.
inline std::vector<TrendEntry> secrecy_trend(const BinningParams& params, std::span<const int> n_list,
                                             std::span<const std::uint64_t> seeds) {
  const EraseChannel ch{params.delta};
  ch.check();
  for (int n : n_list)
    if (n > kMaxEnumerationLength)
      throw Error(Errc::enumeration_budget_exceeded, "block length " + std::to_string(n) + " exceeds budget");
  std::vector<TrendEntry> out;
  for (int n : n_list) {
    TrendEntry e;
    e.n = n;
    double sum = 0.0;
    bool secret = true;
    for (auto seed : seeds) {
      const auto code = build_code(n, params.rate_total, params.rate_secret, seed);
      if (code.secret_bits() == 0) {
        secret = false;
        break;
      }
      const double h = equivocation_exact(code, ch);
      e.equivocation.push_back(h);
      e.normalized.push_back(h / code.secret_bits());
      sum += e.normalized.back();
    }
    if (!secret) {
      e.equivocation.clear();
      e.normalized.clear();
      e.note = "no secret message (R = 0)";
    } else if (!seeds.empty()) {
      e.mean_normalized = sum / static_cast<double>(seeds.size());
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace mawtap
