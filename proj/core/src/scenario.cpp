// SPDX-License-Identifier: Apache-2.0

#include "cpsa/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace cpsa {

void SystemParams::validate() const {
  if (antennas < 1) throw std::invalid_argument("antennas must be >= 1");
  if (users < 1) throw std::invalid_argument("users must be >= 1");
  if (attackers < 0) throw std::invalid_argument("attackers must be >= 0");
  if (antennas < users)
    throw std::invalid_argument("zero-forcing requires antennas >= users");
  if (pilot_len < users)
    throw std::invalid_argument(
        "orthogonal pilots require pilot_len >= users");
  if (!(pilot_power_mw > 0.0))
    throw std::invalid_argument("pilot_power_mw must be positive");
  if (!(attack_power_mw >= 0.0))
    throw std::invalid_argument("attack_power_mw must be non-negative");
  if (!(downlink_power_mw > 0.0))
    throw std::invalid_argument("downlink_power_mw must be positive");
  if (!(noise_mw > 0.0))
    throw std::invalid_argument("noise_mw must be positive");
  if (!(rate_log_base > 1.0))
    throw std::invalid_argument("rate_log_base must exceed 1");
}

void PathLossModel::validate() const {
  if (!(exponent > 0.0))
    throw std::invalid_argument("path-loss exponent must be positive");
  if (!(r_min_m >= 0.0) || !(r_min_m < r_max_users_m))
    throw std::invalid_argument("need 0 <= r_min_m < r_max_users_m");
  if (!(r_min_m < r_max_attackers_m))
    throw std::invalid_argument("need r_min_m < r_max_attackers_m");
}

double dbm_to_linear(double power_dbm) {
  return std::pow(10.0, power_dbm / 10.0);
}

double linear_to_dbm(double power_mw) {
  if (!(power_mw > 0.0))
    throw std::domain_error("linear_to_dbm requires positive power");
  return 10.0 * std::log10(power_mw);
}

double path_loss_beta(double distance_m, const PathLossModel& model) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss_beta requires distance > 0");
  return std::pow(10.0, model.ref_loss_db / 10.0) *
         std::pow(distance_m, -model.exponent);
}

double annulus_radius(double u, double r_min_m, double r_max_m) {
  if (!(r_min_m >= 0.0) || !(r_min_m < r_max_m))
    throw std::invalid_argument("annulus requires 0 <= r_min < r_max");
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("annulus_radius requires u in [0, 1]");
  return std::sqrt(r_min_m * r_min_m +
                   u * (r_max_m * r_max_m - r_min_m * r_min_m));
}

std::vector<double> place_uniform_annulus(Rng& rng, int count, double r_min_m,
                                          double r_max_m) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  if (!(r_min_m >= 0.0) || !(r_min_m < r_max_m))
    throw std::invalid_argument("annulus requires 0 <= r_min < r_max");
  std::vector<double> d(static_cast<std::size_t>(count));
  for (auto& v : d) v = annulus_radius(rng.uniform(), r_min_m, r_max_m);
  return d;
}

LargeScaleProfile build_profile(
    const SystemParams& params, const PathLossModel& model,
    const std::vector<double>& user_distances_m,
    const std::vector<double>& attacker_distances_m) {
  if (user_distances_m.size() != static_cast<std::size_t>(params.users))
    throw std::invalid_argument("user distance count != users");
  if (attacker_distances_m.size() != static_cast<std::size_t>(params.attackers))
    throw std::invalid_argument("attacker distance count != attackers");

  LargeScaleProfile profile;
  profile.beta_users.resize(params.users);
  profile.beta_attackers.resize(params.attackers);
  for (int k = 0; k < params.users; ++k)
    profile.beta_users[k] =
        path_loss_beta(user_distances_m[static_cast<std::size_t>(k)], model);
  for (int n = 0; n < params.attackers; ++n)
    profile.beta_attackers[n] = path_loss_beta(
        attacker_distances_m[static_cast<std::size_t>(n)], model);
  return profile;
}

}  // namespace cpsa
