// SPDX-License-Identifier: Apache-2.0

#include "cpsa/attack_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cpsa {

namespace {

// Coefficient cache so solver iterations avoid re-validating inputs.
struct Objective {
  std::vector<RateCoefficients> cf;
  Vec nu;
  double inv_ln_base = 0.0;
  int users = 0;
  int attackers = 0;

  Objective(const SystemParams& params, const LargeScaleProfile& profile) {
    users = params.users;
    attackers = params.attackers;
    nu = profile.beta_attackers;
    inv_ln_base = 1.0 / std::log(params.rate_log_base);
    cf.reserve(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k)
      cf.push_back(rate_coefficients(params, profile, k));
  }

  double value(const Mat& theta) const {
    const Vec t = theta.transpose() * nu;
    double sum = 0.0;
    for (int k = 0; k < users; ++k)
      sum += std::log1p(cf[static_cast<std::size_t>(k)].a /
                        (cf[static_cast<std::size_t>(k)].b +
                         cf[static_cast<std::size_t>(k)].c * t[k]));
    return sum * inv_ln_base;
  }

  double value_and_grad(const Mat& theta, Mat& grad) const {
    const Vec t = theta.transpose() * nu;
    double sum = 0.0;
    for (int k = 0; k < users; ++k) {
      const RateCoefficients& c = cf[static_cast<std::size_t>(k)];
      const double den = c.b + c.c * t[k];
      sum += std::log1p(c.a / den);
      const double slope = -inv_ln_base * c.a * c.c / (den * (c.a + den));
      for (int n = 0; n < attackers; ++n) grad(n, k) = slope * nu[n];
    }
    return sum * inv_ln_base;
  }

  bool attack_has_effect() const {
    if (nu.size() == 0 || nu.maxCoeff() <= 0.0) return false;
    for (const auto& c : cf)
      if (c.c > 0.0) return true;
    return false;
  }
};

Mat project_rows(const Mat& theta) {
  Mat out(theta.rows(), theta.cols());
  for (Eigen::Index n = 0; n < theta.rows(); ++n)
    out.row(n) = project_feasible(theta.row(n).transpose()).transpose();
  return out;
}

double projected_gradient_residual(const Objective& obj, const Mat& theta) {
  Mat grad(theta.rows(), theta.cols());
  obj.value_and_grad(theta, grad);
  return (theta - project_rows(theta - grad)).norm();
}

}  // namespace

std::pair<double, Mat> objective_and_gradient(const SystemParams& params,
                                              const LargeScaleProfile& profile,
                                              const AttackAllocation& theta) {
  theta.require_feasible();
  if (theta.attackers() != params.attackers || theta.users() != params.users)
    throw std::invalid_argument("allocation shape mismatch");
  const Objective obj(params, profile);
  Mat grad(params.attackers, params.users);
  const double value = obj.value_and_grad(theta.theta, grad);
  return {value, grad};
}

Vec project_feasible(const Vec& row) {
  Vec x = row.cwiseMax(0.0);
  const double total = x.sum();
  if (total <= 1.0) return x;

  // Sort-and-threshold projection onto the unit simplex: the support is
  // the longest prefix of the sorted entries staying above the running
  // threshold (sum - 1) / count.
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] <= candidate) break;
    threshold = candidate;
  }
  return (x.array() - threshold).cwiseMax(0.0);
}

SolveResult optimize_attack(const SystemParams& params,
                            const LargeScaleProfile& profile,
                            const SolverSettings& settings) {
  params.validate();
  if (params.attackers < 1)
    throw std::invalid_argument("optimization requires at least one attacker");
  if (settings.max_iter < 1 || !(settings.tol > 0.0) ||
      !(settings.backtrack > 0.0 && settings.backtrack < 1.0))
    throw std::invalid_argument("bad solver settings");

  const Objective obj(params, profile);
  SolveResult result;
  result.theta = AttackAllocation::uniform(params.attackers, params.users);

  if (!obj.attack_has_effect()) {
    result.objective = obj.value(result.theta.theta);
    result.no_effect = true;
    result.converged = true;
    return result;
  }

  Mat x = result.theta.theta;
  Mat grad(params.attackers, params.users);
  double fx = obj.value_and_grad(x, grad);
  if (settings.trace) settings.trace->push_back(fx);

  double step = settings.step_init;
  if (!(step > 0.0)) {
    const double g_max = grad.cwiseAbs().maxCoeff();
    step = (g_max > 0.0) ? 0.5 / (static_cast<double>(params.users) * g_max)
                         : 1.0;
  }

  int iter = 0;
  for (; iter < settings.max_iter; ++iter) {
    const double residual = (x - project_rows(x - grad)).norm();
    if (residual <= settings.tol) {
      result.converged = true;
      break;
    }

    // Backtracking line search with sufficient decrease.
    bool accepted = false;
    while (step > 1e-20) {
      const Mat candidate = project_rows(x - step * grad);
      const double move2 = (candidate - x).squaredNorm();
      const double fc = obj.value(candidate);
      if (fc <= fx - 1e-4 * move2 / step) {
        x = candidate;
        fx = obj.value_and_grad(x, grad);
        if (settings.trace) settings.trace->push_back(fx);
        step *= 1.3;
        accepted = true;
        break;
      }
      step *= settings.backtrack;
    }
    if (!accepted) break;  // no representable progress left
  }

  result.theta.theta = x;
  result.objective = fx;
  result.iterations = iter;
  result.kkt_residual = (x - project_rows(x - grad)).norm();
  result.converged = result.converged || result.kkt_residual <= settings.tol;
  return result;
}

SolveResult reduced_kkt_solve(const SystemParams& params,
                              const LargeScaleProfile& profile) {
  params.validate();
  if (params.attackers < 1)
    throw std::invalid_argument("optimization requires at least one attacker");

  const Objective obj(params, profile);
  SolveResult result;
  result.theta = AttackAllocation::uniform(params.attackers, params.users);
  if (!obj.attack_has_effect()) {
    result.objective = obj.value(result.theta.theta);
    result.no_effect = true;
    result.converged = true;
    return result;
  }

  const double budget = profile.beta_attackers.sum();  // S = sum_n beta_An
  const int users = params.users;

  // |dg_k/dt|(0) caps the multiplier; t_k(mu) from the quadratic
  // (B + C t)(A + B + C t) = A C / (mu ln(base)), written in the
  // subtraction-free form u = 2Q / (A + sqrt(A^2 + 4Q)).
  const auto loading_at = [&](double mu, Vec& t) {
    double total = 0.0;
    for (int k = 0; k < users; ++k) {
      const RateCoefficients& c = obj.cf[static_cast<std::size_t>(k)];
      const double slope0 =
          obj.inv_ln_base * c.a * c.c / (c.b * (c.a + c.b));
      if (slope0 <= mu || c.c <= 0.0) {
        t[k] = 0.0;
        continue;
      }
      const double q = obj.inv_ln_base * c.a * c.c / mu;
      const double u = 2.0 * q / (c.a + std::sqrt(c.a * c.a + 4.0 * q));
      t[k] = std::max(0.0, (u - c.b) / c.c);
      total += t[k];
    }
    return total;
  };

  double mu_hi = 0.0;
  for (int k = 0; k < users; ++k) {
    const RateCoefficients& c = obj.cf[static_cast<std::size_t>(k)];
    mu_hi = std::max(mu_hi, obj.inv_ln_base * c.a * c.c / (c.b * (c.a + c.b)));
  }

  Vec t(users);
  double mu_lo = mu_hi;
  int iterations = 0;
  while (loading_at(mu_lo, t) < budget) {
    mu_lo *= 0.5;
    if (++iterations > 4000)
      throw NumericalError("KKT bracket search failed to expand");
  }

  for (int i = 0; i < 200; ++i, ++iterations) {
    const double mu = 0.5 * (mu_lo + mu_hi);
    if (loading_at(mu, t) >= budget)
      mu_lo = mu;
    else
      mu_hi = mu;
  }
  loading_at(mu_lo, t);

  // Spend the budget exactly, then lift symmetrically.
  const double total = t.sum();
  if (total > 0.0) t *= budget / total;
  for (int n = 0; n < params.attackers; ++n)
    result.theta.theta.row(n) = (t / budget).transpose();

  result.objective = obj.value(result.theta.theta);
  result.iterations = iterations;
  result.kkt_residual = projected_gradient_residual(obj, result.theta.theta);
  result.converged = true;
  return result;
}

}  // namespace cpsa
