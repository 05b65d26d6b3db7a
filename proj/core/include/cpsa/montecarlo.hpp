// SPDX-License-Identifier: Apache-2.0
//
// Deterministic, parallelizable Monte Carlo engine: fading trials and
// placement trials, moment accumulation, and empirical rate reports with
// confidence intervals.

#ifndef CPSA_MONTECARLO_HPP
#define CPSA_MONTECARLO_HPP

#include "cpsa/airlink.hpp"
#include "cpsa/precoding.hpp"
#include "cpsa/rate.hpp"
#include "cpsa/scenario.hpp"
#include "cpsa/types.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace cpsa {

inline constexpr std::uint64_t kDefaultMasterSeed = 1;

/// Per-trial seed: SplitMix64 finalizer applied to the master seed XORed
/// with the golden-ratio-scrambled trial index. The multiplier is odd,
/// so the map is injective in the index — distinct trials can never
/// collide under one master. Constants are fixed and platform-independent.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

enum class AttackScheme { None, Uniform, Optimal, NoiseJamming };

const char* to_string(AttackScheme scheme);
std::optional<AttackScheme> parse_scheme(std::string_view name);

struct TrialPlan {
  std::int64_t fading_trials = 2;
  std::int64_t placement_trials = 1;
  std::uint64_t master_seed = kDefaultMasterSeed;
  AttackScheme scheme = AttackScheme::None;
  int threads = 1;  // worker count; never changes results, only speed

  void validate(int attackers) const;
};

struct SchemeRun {
  RateReport empirical;
  RateReport closed_form;
  MomentEstimates moments;
  AttackAllocation theta;  // allocation behind the closed form (jamming
                           // reports its second-order equivalent)
  std::int64_t gram_resamples = 0;
};

/// Fading-trial Monte Carlo on a fixed large-scale profile. Per trial:
/// draw channels, synthesize the scheme's attack, receive, despread,
/// estimate, precode, accumulate moments. The optimal allocation is
/// computed once per profile. Requires fading_trials >= 2.
SchemeRun run_scheme(const SystemParams& params,
                     const LargeScaleProfile& profile, const TrialPlan& plan);

// Placement p draws its profile from a dedicated seed stream; the fading
// seeds of placement p derive from fading_master(master, p). Exposed so
// callers can reproduce any placement of a run in isolation.
LargeScaleProfile draw_placement_profile(const SystemParams& params,
                                         const PathLossModel& model,
                                         std::uint64_t master_seed,
                                         std::int64_t placement);
std::uint64_t fading_master(std::uint64_t master_seed, std::int64_t placement);

struct PlacementRecord {
  double sum_closed_form = 0.0;
  double sum_empirical = 0.0;  // NaN in closed-form-only runs
};

struct PlacementAverage {
  double cf_mean = 0.0;
  double cf_ci = 0.0;  // 95% half-width of the placement mean
  double emp_mean = 0.0;
  double emp_ci = 0.0;
  std::vector<PlacementRecord> placements;
  std::int64_t fading_trials = 0;
  std::int64_t gram_resamples = 0;
};

/// Outer loop over placements (profiles and, for the optimal scheme, the
/// allocation are redrawn/recomputed per placement), inner fading loop.
PlacementAverage run_placement_average(const SystemParams& params,
                                       const PathLossModel& model,
                                       const TrialPlan& plan);

/// Closed-form-only variant: same placement seed stream, no fading
/// trials. Empirical fields are NaN.
PlacementAverage run_closed_form_average(const SystemParams& params,
                                         const PathLossModel& model,
                                         const TrialPlan& plan);

}  // namespace cpsa

#endif  // CPSA_MONTECARLO_HPP
