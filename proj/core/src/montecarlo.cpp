// SPDX-License-Identifier: Apache-2.0

#include "cpsa/montecarlo.hpp"

#include "cpsa/attack_opt.hpp"
#include "cpsa/estimation.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace cpsa {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Trials per work unit. Chunk boundaries are fixed, each chunk is
// accumulated sequentially, and chunks merge in index order, so results
// are bit-identical for any worker count.
constexpr std::int64_t kChunkTrials = 32;

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kPlacementStreamTag = 0x706C6163656D6E74ull;
constexpr std::uint64_t kFadingStreamTag = 0x666164696E673030ull;

double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double mean_ci_halfwidth(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(v.size() - 1);
  return kZ95 * std::sqrt(var / static_cast<double>(v.size()));
}

// Shared, read-only context of one run_scheme call.
struct RunContext {
  const SystemParams& params;
  const LargeScaleProfile& profile;
  PilotMatrix pilots;
  std::vector<CVec> base_signals;  // spoofing waveforms; zero for none
  Vec estimator_gain;              // c_k per user
  bool jamming = false;
  std::uint64_t seed = 0;
};

struct ChunkResult {
  MomentAccumulator acc;
  std::int64_t resamples = 0;
};

ChunkResult process_chunk(const RunContext& ctx, std::int64_t first,
                          std::int64_t last) {
  ChunkResult out{MomentAccumulator(ctx.params.users), 0};
  std::vector<CVec> signals = ctx.base_signals;
  for (std::int64_t t = first; t < last; ++t) {
    Rng rng(trial_seed(ctx.seed, static_cast<std::uint64_t>(t)));
    for (int attempt = 0;; ++attempt) {
      const ChannelRealization ch =
          draw_channels(rng, ctx.params.antennas, ctx.profile);
      if (ctx.jamming)
        for (auto& s : signals)
          s = noise_jamming_waveform(rng, ctx.params.attack_power_mw,
                                     ctx.params.pilot_len);
      const CMat rx = uplink_receive(rng, ch, ctx.pilots, signals, ctx.params);
      const CMat observations =
          despread_all(rx, ctx.pilots, ctx.params.pilot_power_mw);
      const CMat h_hat = observations * ctx.estimator_gain.asDiagonal();
      try {
        const Precoder w = zf_precoder(h_hat);
        out.acc.accumulate(ch.users, w);
        break;
      } catch (const SingularGramError&) {
        ++out.resamples;
        if (attempt >= 64)
          throw NumericalError("trial resampling failed 64 times in a row");
      }
    }
  }
  return out;
}

MomentAccumulator run_trials(const RunContext& ctx, std::int64_t trials,
                             int threads, std::int64_t& resamples) {
  const std::int64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  MomentAccumulator total(ctx.params.users);
  resamples = 0;

  if (threads <= 1 || chunks <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) {
      ChunkResult r = process_chunk(ctx, c * kChunkTrials,
                                    std::min(trials, (c + 1) * kChunkTrials));
      total.merge(r.acc);
      resamples += r.resamples;
    }
    return total;
  }

  std::atomic<std::int64_t> next{0};
  std::mutex merge_mutex;
  std::map<std::int64_t, ChunkResult> pending;
  std::int64_t expected = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (;;) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        ChunkResult r = process_chunk(
            ctx, c * kChunkTrials, std::min(trials, (c + 1) * kChunkTrials));
        std::lock_guard<std::mutex> lock(merge_mutex);
        pending.emplace(c, std::move(r));
        // Merge every chunk that is next in index order.
        for (auto it = pending.begin();
             it != pending.end() && it->first == expected;
             it = pending.begin(), ++expected) {
          total.merge(it->second.acc);
          resamples += it->second.resamples;
          pending.erase(it);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  const int n_workers = static_cast<int>(
      std::min<std::int64_t>(threads, chunks));
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  if (expected != chunks)
    throw NumericalError("chunk reduction incomplete");
  return total;
}

// Delta-method confidence intervals for the per-user and sum rates as
// functions of the accumulated moments (mu_re, mu_im, E|g|^2, iota)_k.
RateReport empirical_report(const MomentAccumulator& acc,
                            const SystemParams& params) {
  const MomentEstimates est = acc.estimates();
  const EmpiricalSinr sinr = empirical_sinr(est, params);
  const int users = acc.users();
  const double n = static_cast<double>(acc.count());
  const double pb = params.downlink_power_mw;
  const double inv_ln_base = 1.0 / std::log(params.rate_log_base);

  const Vec mean = acc.stat_sum() / n;
  Mat cov = Mat(acc.stat_outer_sum().selfadjointView<Eigen::Lower>());
  cov -= n * (mean * mean.transpose());
  cov /= (n - 1.0);

  Vec grad = Vec::Zero(4 * users);
  for (int k = 0; k < users; ++k) {
    const double mu_re = mean[4 * k + 0];
    const double mu_im = mean[4 * k + 1];
    const double power = mu_re * mu_re + mu_im * mu_im;
    const double second = mean[4 * k + 2];
    const double leak = mean[4 * k + 3];
    const double den = pb * (second - power + leak) + params.noise_mw;
    const double gamma = pb * power / den;
    const double d_rate = inv_ln_base / (1.0 + gamma);
    const double d_num = pb * (den + pb * power) / (den * den);
    const double d_other = -pb * pb * power / (den * den);
    grad[4 * k + 0] = d_rate * d_num * 2.0 * mu_re;
    grad[4 * k + 1] = d_rate * d_num * 2.0 * mu_im;
    grad[4 * k + 2] = d_rate * d_other;
    grad[4 * k + 3] = d_rate * d_other;
  }

  RateReport report;
  report.source = RateSource::Empirical;
  report.per_user = sinr.rate;
  report.sum = sinr.rate.sum();
  Vec per_ci(users);
  for (int k = 0; k < users; ++k) {
    const Vec gk = grad.segment(4 * k, 4);
    const double var =
        (gk.transpose() * cov.block(4 * k, 4 * k, 4, 4) * gk).value() / n;
    per_ci[k] = kZ95 * std::sqrt(std::max(0.0, var));
  }
  report.per_user_ci = per_ci;
  const double sum_var = (grad.transpose() * cov * grad).value() / n;
  report.sum_ci = kZ95 * std::sqrt(std::max(0.0, sum_var));
  return report;
}

// Allocation pair for a scheme: what the attackers transmit, and the
// second-order-equivalent allocation behind both the estimator's
// statistics and the closed form.
struct SchemeAllocation {
  AttackAllocation transmit;
  AttackAllocation effective;
  bool jamming = false;
};

SchemeAllocation resolve_scheme(const SystemParams& params,
                                const LargeScaleProfile& profile,
                                AttackScheme scheme) {
  SchemeAllocation out;
  switch (scheme) {
    case AttackScheme::None:
      out.transmit = AttackAllocation::zero(params.attackers, params.users);
      out.effective = out.transmit;
      break;
    case AttackScheme::Uniform:
      out.transmit = AttackAllocation::uniform(params.attackers, params.users);
      out.effective = out.transmit;
      break;
    case AttackScheme::Optimal: {
      const SolveResult solved = optimize_attack(params, profile);
      out.transmit = solved.theta;
      out.effective = solved.theta;
      break;
    }
    case AttackScheme::NoiseJamming:
      out.transmit = AttackAllocation::zero(params.attackers, params.users);
      out.effective = jamming_effective_allocation(params);
      out.jamming = true;
      break;
  }
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed,
                         std::uint64_t trial_index) {
  std::uint64_t z = master_seed ^ (kGoldenGamma * (trial_index + 1));
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

const char* to_string(AttackScheme scheme) {
  switch (scheme) {
    case AttackScheme::None: return "none";
    case AttackScheme::Uniform: return "uniform";
    case AttackScheme::Optimal: return "optimal";
    case AttackScheme::NoiseJamming: return "noise_jamming";
  }
  return "?";
}

std::optional<AttackScheme> parse_scheme(std::string_view name) {
  if (name == "none") return AttackScheme::None;
  if (name == "uniform") return AttackScheme::Uniform;
  if (name == "optimal") return AttackScheme::Optimal;
  if (name == "noise_jamming") return AttackScheme::NoiseJamming;
  return std::nullopt;
}

void TrialPlan::validate(int attackers) const {
  if (fading_trials < 1) throw std::invalid_argument("fading_trials < 1");
  if (placement_trials < 1) throw std::invalid_argument("placement_trials < 1");
  if (threads < 1) throw std::invalid_argument("threads < 1");
  if (scheme == AttackScheme::Optimal && attackers < 1)
    throw std::invalid_argument("optimal scheme requires attackers >= 1");
}

SchemeRun run_scheme(const SystemParams& params,
                     const LargeScaleProfile& profile, const TrialPlan& plan) {
  params.validate();
  plan.validate(params.attackers);
  if (plan.fading_trials < 2)
    throw std::invalid_argument("empirical estimation needs >= 2 trials");

  const SchemeAllocation alloc = resolve_scheme(params, profile, plan.scheme);

  RunContext ctx{params, profile, pilot_matrix(params.pilot_len, params.users),
                 {},    Vec(),   alloc.jamming,
                 plan.master_seed};
  ctx.base_signals.reserve(static_cast<std::size_t>(params.attackers));
  for (int n = 0; n < params.attackers; ++n)
    ctx.base_signals.push_back(
        alloc.jamming
            ? CVec::Zero(params.pilot_len).eval()
            : attack_waveform(alloc.transmit.theta.row(n).transpose(),
                              params.attack_power_mw, ctx.pilots));
  ctx.estimator_gain.resize(params.users);
  for (int k = 0; k < params.users; ++k)
    ctx.estimator_gain[k] =
        lmmse_stats(params, profile, alloc.effective.theta.col(k), k).gain;

  SchemeRun run;
  run.theta = alloc.effective;
  run.closed_form = sum_rate(params, profile, alloc.effective);

  const MomentAccumulator acc =
      run_trials(ctx, plan.fading_trials, plan.threads, run.gram_resamples);
  run.moments = acc.estimates();
  run.empirical = empirical_report(acc, params);
  return run;
}

LargeScaleProfile draw_placement_profile(const SystemParams& params,
                                         const PathLossModel& model,
                                         std::uint64_t master_seed,
                                         std::int64_t placement) {
  model.validate();
  Rng rng(trial_seed(master_seed ^ kPlacementStreamTag,
                     static_cast<std::uint64_t>(placement)));
  // Users drawn before attackers: runs sharing a master see identical
  // user placements regardless of the attacker count.
  const auto users =
      place_uniform_annulus(rng, params.users, model.r_min_m,
                            model.r_max_users_m);
  const auto attackers =
      place_uniform_annulus(rng, params.attackers, model.r_min_m,
                            model.r_max_attackers_m);
  return build_profile(params, model, users, attackers);
}

std::uint64_t fading_master(std::uint64_t master_seed,
                            std::int64_t placement) {
  return trial_seed(master_seed ^ kFadingStreamTag,
                    static_cast<std::uint64_t>(placement));
}

namespace {

template <typename PlacementFn>
PlacementAverage average_over_placements(std::int64_t placements, int threads,
                                         PlacementFn&& per_placement) {
  PlacementAverage avg;
  avg.placements.resize(static_cast<std::size_t>(placements));

  if (threads <= 1 || placements <= 1) {
    for (std::int64_t p = 0; p < placements; ++p)
      avg.placements[static_cast<std::size_t>(p)] = per_placement(p, threads);
  } else {
    // One placement per task; records land in their slot, so the
    // aggregate is independent of scheduling.
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        for (;;) {
          const std::int64_t p = next.fetch_add(1);
          if (p >= placements) return;
          avg.placements[static_cast<std::size_t>(p)] = per_placement(p, 1);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    const int n_workers =
        static_cast<int>(std::min<std::int64_t>(threads, placements));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> cf, emp;
  cf.reserve(avg.placements.size());
  emp.reserve(avg.placements.size());
  for (const auto& rec : avg.placements) {
    cf.push_back(rec.sum_closed_form);
    if (std::isfinite(rec.sum_empirical)) emp.push_back(rec.sum_empirical);
  }
  avg.cf_mean = sample_mean(cf);
  avg.cf_ci = mean_ci_halfwidth(cf);
  if (!emp.empty()) {
    avg.emp_mean = sample_mean(emp);
    avg.emp_ci = mean_ci_halfwidth(emp);
  } else {
    avg.emp_mean = std::numeric_limits<double>::quiet_NaN();
    avg.emp_ci = std::numeric_limits<double>::quiet_NaN();
  }
  return avg;
}

}  // namespace

PlacementAverage run_placement_average(const SystemParams& params,
                                       const PathLossModel& model,
                                       const TrialPlan& plan) {
  params.validate();
  model.validate();
  plan.validate(params.attackers);

  std::atomic<std::int64_t> resamples{0};
  double first_fading_ci = 0.0;  // written only by the placement-0 task
  PlacementAverage avg = average_over_placements(
      plan.placement_trials, plan.threads,
      [&](std::int64_t p, int inner_threads) {
        const LargeScaleProfile profile =
            draw_placement_profile(params, model, plan.master_seed, p);
        TrialPlan sub = plan;
        sub.placement_trials = 1;
        sub.master_seed = fading_master(plan.master_seed, p);
        sub.threads = inner_threads;
        const SchemeRun run = run_scheme(params, profile, sub);
        resamples += run.gram_resamples;
        if (p == 0) first_fading_ci = run.empirical.sum_ci.value_or(0.0);
        return PlacementRecord{run.closed_form.sum, run.empirical.sum};
      });
  // Single-placement runs carry the fading CI instead of a degenerate
  // between-placement spread.
  if (plan.placement_trials == 1) avg.emp_ci = first_fading_ci;
  avg.fading_trials = plan.fading_trials;
  avg.gram_resamples = resamples;
  return avg;
}

PlacementAverage run_closed_form_average(const SystemParams& params,
                                         const PathLossModel& model,
                                         const TrialPlan& plan) {
  params.validate();
  model.validate();
  plan.validate(params.attackers);

  PlacementAverage avg = average_over_placements(
      plan.placement_trials, plan.threads, [&](std::int64_t p, int) {
        const LargeScaleProfile profile =
            draw_placement_profile(params, model, plan.master_seed, p);
        const SchemeAllocation alloc =
            resolve_scheme(params, profile, plan.scheme);
        const RateReport cf = sum_rate(params, profile, alloc.effective);
        return PlacementRecord{cf.sum,
                               std::numeric_limits<double>::quiet_NaN()};
      });
  avg.fading_trials = 0;
  return avg;
}

}  // namespace cpsa
