// SPDX-License-Identifier: Apache-2.0

#include "cpsa/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace cpsa {

double xi(double x) {
  if (!(x >= 1.0)) throw std::domain_error("xi requires x >= 1");
  return std::exp(2.0 * (std::lgamma(x + 0.5) - std::lgamma(x)));
}

double xi_gamma_ratio(double x) {
  if (!(x >= 1.0)) throw std::domain_error("xi_gamma_ratio requires x >= 1");
  return std::exp(std::lgamma(x + 0.5) - std::lgamma(x));
}

RateCoefficients rate_coefficients(const SystemParams& params,
                                   const LargeScaleProfile& profile,
                                   int user) {
  params.validate();
  if (user < 0 || user >= profile.beta_users.size())
    throw std::invalid_argument("user index out of range");

  const double m = params.antennas;
  const double k = params.users;
  const double tau = params.pilot_len;
  const double beta = profile.beta_users[user];
  const double x = xi(m - k + 1.0);
  const double load = k * beta + params.noise_mw / params.downlink_power_mw;

  RateCoefficients cf;
  cf.a = x * tau * params.pilot_power_mw * beta * beta;
  cf.b = (m - 2.0 * k + 1.0 - x) * tau * params.pilot_power_mw * beta * beta +
         load * (tau * params.pilot_power_mw * beta + params.noise_mw);
  cf.c = load * tau * params.attack_power_mw;

  // x < M-K+1 strictly, so the denominator is positive for every t >= 0;
  // anything else indicates broken inputs.
  if (!(cf.a > 0.0) || !(cf.b > 0.0) || !(cf.c >= 0.0))
    throw NumericalError("rate coefficients violate positivity");
  return cf;
}

double closed_form_rate(const RateCoefficients& coeffs, double attack_load,
                        double log_base) {
  if (!(attack_load >= 0.0))
    throw std::domain_error("attack load must be non-negative");
  return std::log1p(coeffs.a / (coeffs.b + coeffs.c * attack_load)) /
         std::log(log_base);
}

RateReport sum_rate(const SystemParams& params,
                    const LargeScaleProfile& profile,
                    const AttackAllocation& theta) {
  theta.require_feasible();
  if (theta.users() != profile.beta_users.size() ||
      theta.attackers() != profile.beta_attackers.size())
    throw std::invalid_argument("allocation shape mismatch");

  // t = Theta^T nu, the per-user attack loading.
  const Vec loading = theta.theta.transpose() * profile.beta_attackers;

  RateReport report;
  report.source = RateSource::ClosedForm;
  report.per_user.resize(params.users);
  for (int k = 0; k < params.users; ++k) {
    const RateCoefficients cf = rate_coefficients(params, profile, k);
    report.per_user[k] = closed_form_rate(cf, loading[k], params.rate_log_base);
  }
  report.sum = report.per_user.sum();
  return report;
}

AttackAllocation jamming_effective_allocation(const SystemParams& params) {
  if (params.pilot_len < params.users)
    throw std::invalid_argument("pilot_len < users");
  AttackAllocation a;
  a.theta = Mat::Constant(params.attackers, params.users,
                          1.0 / static_cast<double>(params.pilot_len));
  return a;
}

}  // namespace cpsa
