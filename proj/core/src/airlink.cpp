// SPDX-License-Identifier: Apache-2.0

#include "cpsa/airlink.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpsa {

PilotMatrix pilot_matrix(int pilot_len, int users, PilotKind kind) {
  if (users < 1) throw std::invalid_argument("users must be >= 1");
  if (pilot_len < users)
    throw std::invalid_argument("pilot_len < users: pilots cannot be orthogonal");

  PilotMatrix p;
  p.cols = CMat::Zero(pilot_len, users);
  switch (kind) {
    case PilotKind::Dft: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(pilot_len));
      for (int k = 0; k < users; ++k)
        for (int j = 0; j < pilot_len; ++j) {
          const double phase = -2.0 * std::numbers::pi *
                               static_cast<double>(j) * static_cast<double>(k) /
                               static_cast<double>(pilot_len);
          p.cols(j, k) = scale * Complex(std::cos(phase), std::sin(phase));
        }
      break;
    }
    case PilotKind::Canonical:
      for (int k = 0; k < users; ++k) p.cols(k, k) = 1.0;
      break;
  }
  return p;
}

AttackAllocation AttackAllocation::zero(int attackers, int users) {
  AttackAllocation a;
  a.theta = Mat::Zero(attackers, users);
  return a;
}

AttackAllocation AttackAllocation::uniform(int attackers, int users) {
  AttackAllocation a;
  a.theta = Mat::Constant(attackers, users, 1.0 / static_cast<double>(users));
  return a;
}

bool AttackAllocation::feasible(double tol) const {
  if ((theta.array() < -tol).any() || (theta.array() > 1.0 + tol).any())
    return false;
  for (int n = 0; n < theta.rows(); ++n)
    if (theta.row(n).sum() > 1.0 + tol) return false;
  return true;
}

void AttackAllocation::require_feasible(double tol) const {
  if (!feasible(tol))
    throw std::domain_error("attack allocation violates C1/C2 constraints");
}

ChannelRealization draw_channels(Rng& rng, int antennas,
                                 const LargeScaleProfile& profile) {
  if (antennas < 1) throw std::invalid_argument("antennas must be >= 1");
  ChannelRealization ch;
  ch.users.resize(antennas, profile.beta_users.size());
  ch.attackers.resize(antennas, profile.beta_attackers.size());
  for (Eigen::Index k = 0; k < profile.beta_users.size(); ++k) {
    const double s = std::sqrt(profile.beta_users[k]);
    for (int i = 0; i < antennas; ++i) ch.users(i, k) = s * rng.cnormal();
  }
  for (Eigen::Index n = 0; n < profile.beta_attackers.size(); ++n) {
    const double s = std::sqrt(profile.beta_attackers[n]);
    for (int i = 0; i < antennas; ++i) ch.attackers(i, n) = s * rng.cnormal();
  }
  return ch;
}

CVec attack_waveform(const Vec& theta_row, double attack_power_mw,
                     const PilotMatrix& pilots) {
  if (theta_row.size() != pilots.users())
    throw std::invalid_argument("theta_row length != users");
  if ((theta_row.array() < 0.0).any())
    throw std::domain_error("negative attack power share");
  if (theta_row.sum() > 1.0 + 1e-9)
    throw std::domain_error("attack power shares exceed budget");
  const double tau = pilots.pilot_len();
  CVec s = CVec::Zero(pilots.pilot_len());
  for (int k = 0; k < pilots.users(); ++k)
    s += std::sqrt(tau * theta_row[k] * attack_power_mw) * pilots.cols.col(k);
  return s;
}

CVec noise_jamming_waveform(Rng& rng, double attack_power_mw, int pilot_len) {
  if (!(attack_power_mw >= 0.0))
    throw std::domain_error("attack power must be non-negative");
  const double scale = std::sqrt(attack_power_mw);
  CVec s(pilot_len);
  for (int j = 0; j < pilot_len; ++j) s[j] = scale * rng.cnormal();
  return s;
}

CMat uplink_receive(Rng& rng, const ChannelRealization& channels,
                    const PilotMatrix& pilots,
                    const std::vector<CVec>& attack_signals,
                    const SystemParams& params) {
  const int m = static_cast<int>(channels.users.rows());
  const int tau = pilots.pilot_len();
  if (channels.users.cols() != pilots.users())
    throw std::invalid_argument("channel/pilot user count mismatch");
  if (static_cast<int>(attack_signals.size()) !=
      static_cast<int>(channels.attackers.cols()))
    throw std::invalid_argument("one attack signal per attacker required");

  CMat rx = std::sqrt(static_cast<double>(tau) * params.pilot_power_mw) *
            channels.users * pilots.cols.transpose();
  for (std::size_t n = 0; n < attack_signals.size(); ++n) {
    if (attack_signals[n].size() != tau)
      throw std::invalid_argument("attack signal length != pilot_len");
    rx += channels.attackers.col(static_cast<Eigen::Index>(n)) *
          attack_signals[n].transpose();
  }
  const double noise_scale = std::sqrt(params.noise_mw);
  for (int j = 0; j < tau; ++j)
    for (int i = 0; i < m; ++i) rx(i, j) += noise_scale * rng.cnormal();
  return rx;
}

CVec despread(const CMat& rx_block, const CVec& pilot,
              double pilot_power_mw) {
  if (rx_block.cols() != pilot.size())
    throw std::invalid_argument("rx block width != pilot length");
  const double tau = static_cast<double>(pilot.size());
  return (rx_block * pilot.conjugate()) / std::sqrt(tau * pilot_power_mw);
}

CMat despread_all(const CMat& rx_block, const PilotMatrix& pilots,
                  double pilot_power_mw) {
  if (rx_block.cols() != pilots.pilot_len())
    throw std::invalid_argument("rx block width != pilot length");
  const double tau = static_cast<double>(pilots.pilot_len());
  return (rx_block * pilots.cols.conjugate()) /
         std::sqrt(tau * pilot_power_mw);
}

}  // namespace cpsa
