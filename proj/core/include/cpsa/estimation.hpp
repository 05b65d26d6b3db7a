// SPDX-License-Identifier: Apache-2.0
//
// LMMSE channel estimation from the despread observation, with the
// closed-form estimate/error variances.

#ifndef CPSA_ESTIMATION_HPP
#define CPSA_ESTIMATION_HPP

#include "cpsa/airlink.hpp"
#include "cpsa/scenario.hpp"
#include "cpsa/types.hpp"

namespace cpsa {

// Second-order statistics of one user's estimate. Because every
// covariance in the model is a multiple of the identity, the MMSE filter
// reduces to the scalar `gain` applied element-wise, and
//   lambda + eta = beta  (estimate + error variance split).
struct LmmseStats {
  double gain = 0.0;    // c_k, the scalar MMSE filter
  double lambda = 0.0;  // per-element variance of the estimate
  double eta = 0.0;     // per-element variance of the estimation error
};

// Estimates for all users of one trial.
struct ChannelEstimate {
  CMat h_hat;  // antennas x users
  Vec lambda;  // length users
  Vec eta;     // length users
};

/// Closed-form statistics for user `user` under attack shares
/// `theta_col` (length = attackers, entries in [0, 1]):
///   omega  = beta + sum_n theta_n (P_A/P_U) beta_An + sigma2/(tau P_U)
///   gain   = beta / omega,  lambda = beta * gain,  eta = beta - lambda.
LmmseStats lmmse_stats(const SystemParams& params,
                       const LargeScaleProfile& profile, const Vec& theta_col,
                       int user);

/// MMSE estimate of one despread observation: h_hat = gain * y.
CVec estimate_channel(const CVec& despread_obs, double gain);

/// Column-wise estimation of a despread block (antennas x users).
/// `theta` is the full allocation used to form the filter statistics.
ChannelEstimate estimate_channels(const SystemParams& params,
                                  const LargeScaleProfile& profile,
                                  const AttackAllocation& theta,
                                  const CMat& despread_block);

}  // namespace cpsa

#endif  // CPSA_ESTIMATION_HPP
