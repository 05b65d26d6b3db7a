// SPDX-License-Identifier: Apache-2.0
//
// Closed-form achievable-rate machinery: the xi moment constant, the
// per-user coefficients, sum rate over an attack allocation, and the
// noise-jamming analytic benchmark.

#ifndef CPSA_RATE_HPP
#define CPSA_RATE_HPP

#include "cpsa/airlink.hpp"
#include "cpsa/scenario.hpp"
#include "cpsa/types.hpp"

#include <optional>

namespace cpsa {

/// xi(x) = [Gamma(x + 1/2) / Gamma(x)]^2, evaluated via log-gamma so it
/// stays stable up to x ~ 1e6. Requires x >= 1.
///
/// Note the square: the first ZF gain moment satisfies
/// |E{h_hat^H w}|^2 = lambda * [Gamma(x+1/2)/Gamma(x)]^2 with
/// x = M - K + 1, because 1/||a||^2 is Gamma(x)-distributed with scale
/// lambda. Only the squared form matches Monte Carlo; see
/// xi_gamma_ratio for the plain ratio kept for comparison.
double xi(double x);

/// The unsquared ratio Gamma(x + 1/2) / Gamma(x). Not used by the rate
/// formulas; retained so tests can demonstrate that the unsquared
/// reading disagrees with simulation.
double xi_gamma_ratio(double x);

// Per-user rate coefficients: rate = log(1 + a / (b + c * t)) where
// t = nu^T theta_k is the attack loading on the user's pilot.
struct RateCoefficients {
  double a = 0.0;  // > 0
  double b = 0.0;  // b + c*t > 0 for all feasible t (asserted)
  double c = 0.0;  // >= 0; zero iff attack power is zero
};

/// With x = xi(M - K + 1):
///   a = x * tau * P_U * beta^2
///   b = (M - 2K + 1 - x) * tau * P_U * beta^2
///       + (K beta + sigma2/P_B) * (tau * P_U * beta + sigma2)
///   c = (K beta + sigma2/P_B) * tau * P_A
RateCoefficients rate_coefficients(const SystemParams& params,
                                   const LargeScaleProfile& profile, int user);

/// log_base(1 + a / (b + c * attack_load)); attack_load >= 0.
double closed_form_rate(const RateCoefficients& coeffs, double attack_load,
                        double log_base);

enum class RateSource { ClosedForm, Empirical };

struct RateReport {
  Vec per_user;
  double sum = 0.0;
  RateSource source = RateSource::ClosedForm;
  // 95% half-widths when available (empirical or placement-averaged).
  std::optional<Vec> per_user_ci;
  std::optional<double> sum_ci;
};

/// Closed-form per-user and sum rate under the given allocation,
/// with attack loading t_k = sum_n beta_An * theta(n, k).
RateReport sum_rate(const SystemParams& params,
                    const LargeScaleProfile& profile,
                    const AttackAllocation& theta);

/// Allocation whose despread second-order effect equals white-noise
/// jamming at per-symbol power P_A: theta = 1/pilot_len everywhere.
/// Feasible because users/pilot_len <= 1.
AttackAllocation jamming_effective_allocation(const SystemParams& params);

}  // namespace cpsa

#endif  // CPSA_RATE_HPP
