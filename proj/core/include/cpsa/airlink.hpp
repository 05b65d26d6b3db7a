// SPDX-License-Identifier: Apache-2.0
//
// Uplink training air interface: pilot sequences, channel draws, attack
// waveforms, the received training block and per-user despreading.

#ifndef CPSA_AIRLINK_HPP
#define CPSA_AIRLINK_HPP

#include "cpsa/rng.hpp"
#include "cpsa/scenario.hpp"
#include "cpsa/types.hpp"

#include <vector>

namespace cpsa {

enum class PilotKind { Dft, Canonical };

// Columns are unit-energy, mutually orthogonal pilot sequences:
// p_k^T p_k^* = 1 and p_i^H p_k = 0 for i != k.
struct PilotMatrix {
  CMat cols;  // pilot_len x users

  int pilot_len() const { return static_cast<int>(cols.rows()); }
  int users() const { return static_cast<int>(cols.cols()); }
};

/// Dft: first `users` columns of the pilot_len-point DFT matrix, scaled
/// by 1/sqrt(pilot_len). Canonical: standard basis columns (debug aid).
PilotMatrix pilot_matrix(int pilot_len, int users,
                         PilotKind kind = PilotKind::Dft);

// Attacker power shares. Row n allocates attacker n's budget over the K
// user pilots: entries in [0, 1] and each row sums to at most 1.
struct AttackAllocation {
  Mat theta;  // attackers x users

  static AttackAllocation zero(int attackers, int users);
  /// Equal share 1/users on every pilot; each row sums to exactly 1.
  static AttackAllocation uniform(int attackers, int users);

  int attackers() const { return static_cast<int>(theta.rows()); }
  int users() const { return static_cast<int>(theta.cols()); }
  bool feasible(double tol = 1e-9) const;
  void require_feasible(double tol = 1e-9) const;
};

// One fading draw of every uplink channel. Column k of `users` is the
// M-vector from user k; column n of `attackers` from attacker n.
struct ChannelRealization {
  CMat users;      // antennas x users
  CMat attackers;  // antennas x attackers
};

/// Rayleigh block fading: column k = sqrt(beta_k) * g with g i.i.d.
/// CN(0, 1). Users are drawn before attackers, column by column.
ChannelRealization draw_channels(Rng& rng, int antennas,
                                 const LargeScaleProfile& profile);

/// Spoofing waveform of one attacker:
/// s = sum_k sqrt(pilot_len * theta_k * attack_power) * p_k.
CVec attack_waveform(const Vec& theta_row, double attack_power_mw,
                     const PilotMatrix& pilots);

/// White noise jamming at per-symbol power attack_power_mw:
/// s = sqrt(attack_power) * u with u i.i.d. CN(0, 1).
CVec noise_jamming_waveform(Rng& rng, double attack_power_mw, int pilot_len);

/// Received training block
/// Y = sum_k sqrt(pilot_len * P_U) h_k p_k^T + sum_n h_An s_n^T + U,
/// with U i.i.d. CN(0, noise_mw). attack_signals may be empty.
CMat uplink_receive(Rng& rng, const ChannelRealization& channels,
                    const PilotMatrix& pilots,
                    const std::vector<CVec>& attack_signals,
                    const SystemParams& params);

/// Per-user observation y_k = (Y p_k^*) / sqrt(pilot_len * P_U).
CVec despread(const CMat& rx_block, const CVec& pilot, double pilot_power_mw);

/// All users at once; column k equals despread(rx_block, p_k, P_U).
CMat despread_all(const CMat& rx_block, const PilotMatrix& pilots,
                  double pilot_power_mw);

}  // namespace cpsa

#endif  // CPSA_AIRLINK_HPP
