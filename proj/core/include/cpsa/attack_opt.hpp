// SPDX-License-Identifier: Apache-2.0
//
// Attacker-side convex program: minimize the closed-form sum rate over
// the power allocation, each attacker row constrained to
// {theta >= 0, sum_k theta_k <= 1}.

#ifndef CPSA_ATTACK_OPT_HPP
#define CPSA_ATTACK_OPT_HPP

#include "cpsa/airlink.hpp"
#include "cpsa/rate.hpp"
#include "cpsa/scenario.hpp"
#include "cpsa/types.hpp"

#include <utility>
#include <vector>

namespace cpsa {

struct SolverSettings {
  int max_iter = 100000;
  double tol = 1e-8;       // on the projected-gradient residual
  double step_init = 0.0;  // 0 = scale from the initial gradient
  double backtrack = 0.5;  // step shrink factor in (0, 1)
  std::vector<double>* trace = nullptr;  // objective after each accepted step
};

struct SolveResult {
  AttackAllocation theta;
  double objective = 0.0;    // minimized sum rate
  int iterations = 0;
  double kkt_residual = 0.0; // ||theta - proj(theta - grad)||_F
  bool converged = false;
  bool no_effect = false;    // attack cannot change the objective
};

/// Objective value sum_rate(theta) and its gradient,
/// d/d theta(n,k) = -(1/ln base) * A_k C_k nu_n
///                  / ((B_k + C_k t_k)(A_k + B_k + C_k t_k)).
/// Every entry is <= 0: attacking never helps the cell.
std::pair<double, Mat> objective_and_gradient(const SystemParams& params,
                                              const LargeScaleProfile& profile,
                                              const AttackAllocation& theta);

/// Euclidean projection of one attacker row onto
/// {x >= 0, sum x <= 1}: clip negatives; if the clipped sum exceeds 1,
/// project onto the unit simplex by sort-and-threshold. The individual
/// upper bounds x_k <= 1 are implied and never active separately.
Vec project_feasible(const Vec& row);

/// Projected gradient descent with backtracking line search from the
/// uniform start theta = 1/users (the non-optimized benchmark, so the
/// iteration-0 objective doubles as that baseline).
SolveResult optimize_attack(const SystemParams& params,
                            const LargeScaleProfile& profile,
                            const SolverSettings& settings = {});

/// Independent oracle: the equivalent reduced problem in the per-user
/// loadings t (t >= 0, sum t <= S with S = sum_n beta_An), solved by
/// bisection on the common-derivative KKT multiplier and lifted back
/// symmetrically via theta(n,k) = t_k / S. Assumes the common attack
/// power P_A shared by all attackers.
SolveResult reduced_kkt_solve(const SystemParams& params,
                              const LargeScaleProfile& profile);

}  // namespace cpsa

#endif  // CPSA_ATTACK_OPT_HPP
