// SPDX-License-Identifier: Apache-2.0
//
// Zero-forcing precoding from the (corrupted) channel estimate, the
// simulated downlink observation, and empirical estimation of the three
// SINR moments.

#ifndef CPSA_PRECODING_HPP
#define CPSA_PRECODING_HPP

#include "cpsa/airlink.hpp"
#include "cpsa/rng.hpp"
#include "cpsa/scenario.hpp"
#include "cpsa/types.hpp"

#include <cstdint>

namespace cpsa {

// ZF beams. Column k is w_k = a_k / ||a_k|| where a_k is the k-th column
// of H_hat (H_hat^H H_hat)^{-1}; by construction h_hat_i^H w_k = 0 for
// i != k and h_hat_k^H w_k = 1/||a_k|| (real, positive).
struct Precoder {
  CMat w;          // antennas x users, unit-norm columns
  Vec inv_a_norm;  // 1/||a_k||, length users
};

/// Builds the ZF precoder via a Cholesky factorization of the Gram
/// matrix. Throws SingularGramError if the factorization fails (the
/// Monte Carlo engine resamples such trials and counts them).
Precoder zf_precoder(const CMat& h_hat);

/// Unit-power QPSK symbols, one per user.
CVec qpsk_symbols(Rng& rng, int count);

/// Downlink observation of every user for one symbol vector:
/// y_k = sqrt(P_B) h_k^H w_k s_k + sum_{i!=k} sqrt(P_B) h_k^H w_i s_i + z_k
/// with z_k ~ CN(0, noise_mw). Used by end-to-end sanity tests; the
/// moment pipeline below does not need symbols.
CVec downlink_observe(Rng& rng, const ChannelRealization& channels,
                      const Precoder& precoder, const SystemParams& params,
                      const CVec& symbols);

// Sample moments of the effective downlink gains over accumulated trials.
struct MomentEstimates {
  CVec mean_gain;     // per user: sample mean of h_k^H w_k
  Vec var_gain;       // per user: sample variance of h_k^H w_k
  Vec interference;   // per user: sample mean of sum_{i!=k} |h_k^H w_i|^2
  std::int64_t trial_count = 0;
};

// Accumulates the per-trial statistics (Re g_k, Im g_k, |g_k|^2, iota_k)
// for every user, with full second-moment cross products so confidence
// intervals for rate functionals can be formed by the delta method.
//
// merge() must be applied in deterministic trial order: floating-point
// summation is not associative and the engine guarantees bit-identical
// results across worker counts by merging chunk accumulators in index
// order.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(int users);

  /// One trial: true channels (antennas x users) against the precoder
  /// built from the same trial's estimate.
  void accumulate(const CMat& true_user_channels, const Precoder& precoder);

  void merge(const MomentAccumulator& other);

  int users() const { return users_; }
  std::int64_t count() const { return count_; }
  /// Sum over trials of the stacked per-user statistic vector (4K).
  const Vec& stat_sum() const { return sum_; }
  /// Sum over trials of the outer products (4K x 4K, lower triangle valid).
  const Mat& stat_outer_sum() const { return outer_; }

  MomentEstimates estimates() const;

 private:
  int users_;
  std::int64_t count_ = 0;
  Vec sum_;
  Mat outer_;
  Vec scratch_;
};

// Empirical SINR and rate per user from accumulated moments:
// gamma_k = P_B |mean|^2 / (P_B var + P_B interference + sigma2).
struct EmpiricalSinr {
  Vec gamma;
  Vec rate;
};

/// Requires trial_count >= 2.
EmpiricalSinr empirical_sinr(const MomentEstimates& moments,
                             const SystemParams& params);

}  // namespace cpsa

#endif  // CPSA_PRECODING_HPP
