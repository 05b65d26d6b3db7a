// SPDX-License-Identifier: Apache-2.0

#include "cpsa/estimation.hpp"

#include <stdexcept>

namespace cpsa {

LmmseStats lmmse_stats(const SystemParams& params,
                       const LargeScaleProfile& profile, const Vec& theta_col,
                       int user) {
  if (user < 0 || user >= profile.beta_users.size())
    throw std::invalid_argument("user index out of range");
  if (theta_col.size() != profile.beta_attackers.size())
    throw std::invalid_argument("theta_col length != attackers");
  if ((theta_col.array() < 0.0).any() || (theta_col.array() > 1.0 + 1e-9).any())
    throw std::domain_error("theta entries must lie in [0, 1]");

  const double beta = profile.beta_users[user];
  double omega = beta + params.noise_mw /
                            (static_cast<double>(params.pilot_len) *
                             params.pilot_power_mw);
  for (Eigen::Index n = 0; n < theta_col.size(); ++n)
    omega += theta_col[n] * (params.attack_power_mw / params.pilot_power_mw) *
             profile.beta_attackers[n];
  if (!(omega > 0.0)) throw NumericalError("non-positive observation variance");

  LmmseStats s;
  s.gain = beta / omega;
  s.lambda = beta * s.gain;
  s.eta = beta - s.lambda;
  return s;
}

CVec estimate_channel(const CVec& despread_obs, double gain) {
  return gain * despread_obs;
}

ChannelEstimate estimate_channels(const SystemParams& params,
                                  const LargeScaleProfile& profile,
                                  const AttackAllocation& theta,
                                  const CMat& despread_block) {
  const int users = static_cast<int>(profile.beta_users.size());
  if (despread_block.cols() != users)
    throw std::invalid_argument("despread block width != users");
  if (theta.users() != users || theta.attackers() != profile.beta_attackers.size())
    throw std::invalid_argument("allocation shape mismatch");

  ChannelEstimate est;
  est.h_hat.resize(despread_block.rows(), users);
  est.lambda.resize(users);
  est.eta.resize(users);
  for (int k = 0; k < users; ++k) {
    const LmmseStats s = lmmse_stats(params, profile, theta.theta.col(k), k);
    est.h_hat.col(k) = s.gain * despread_block.col(k);
    est.lambda[k] = s.lambda;
    est.eta[k] = s.eta;
  }
  return est;
}

}  // namespace cpsa
