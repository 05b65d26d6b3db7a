// SPDX-License-Identifier: Apache-2.0
//
// System constants, unit conversions, cell geometry and the path-loss
// model mapping node placements to large-scale channel gains.

#ifndef CPSA_SCENARIO_HPP
#define CPSA_SCENARIO_HPP

#include "cpsa/rng.hpp"
#include "cpsa/types.hpp"

#include <vector>

namespace cpsa {

// All powers are linear milliwatts. dBm/dB appear only at configuration
// boundaries (see dbm_to_linear / linear_to_dbm).
struct SystemParams {
  int antennas = 0;   // base-station antennas, >= users
  int users = 0;      // single-antenna users served in the cell
  int attackers = 0;  // cooperating single-antenna attackers, may be 0
  int pilot_len = 0;  // training symbols per pilot sequence, >= users

  double pilot_power_mw = 0.0;     // per-user uplink pilot power
  double attack_power_mw = 0.0;    // per-attacker transmit power
  double downlink_power_mw = 0.0;  // per-user downlink data power
  double noise_mw = 0.0;           // receiver noise power

  double rate_log_base = 2.0;  // 2 for bits, e for nats

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

struct PathLossModel {
  double ref_loss_db = -45.0;      // gain at 1 m, dB (negative)
  double exponent = 3.7;           // path-loss exponent, > 0
  double r_min_m = 50.0;           // cell inner radius
  double r_max_users_m = 400.0;    // user outer radius
  double r_max_attackers_m = 300.0;  // attacker outer radius

  void validate() const;
};

// Large-scale gains for one placement of all nodes.
struct LargeScaleProfile {
  Vec beta_users;      // length = users
  Vec beta_attackers;  // length = attackers
};

double dbm_to_linear(double power_dbm);
double linear_to_dbm(double power_mw);

/// beta = 10^(ref_loss_db/10) * d^(-exponent); throws for d <= 0.
double path_loss_beta(double distance_m, const PathLossModel& model);

/// Inverse CDF of the area-uniform annulus placement:
/// d = sqrt(r_min^2 + u * (r_max^2 - r_min^2)) for u in [0, 1].
double annulus_radius(double u, double r_min_m, double r_max_m);

/// count i.i.d. area-uniform distances in the annulus [r_min, r_max].
std::vector<double> place_uniform_annulus(Rng& rng, int count, double r_min_m,
                                          double r_max_m);

/// Element-wise path loss over the given placements. Distance vector
/// lengths must match params.users and params.attackers.
LargeScaleProfile build_profile(const SystemParams& params,
                                const PathLossModel& model,
                                const std::vector<double>& user_distances_m,
                                const std::vector<double>& attacker_distances_m);

}  // namespace cpsa

#endif  // CPSA_SCENARIO_HPP
