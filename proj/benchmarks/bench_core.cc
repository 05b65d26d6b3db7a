// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: the per-trial link pipeline, the
// ZF factorization, the allocation solver and its building blocks.
//
//   cmake -B build -DCMAKE_BUILD_TYPE=Release
//   cmake --build build --target cpsa_bench
//   ./build/benchmarks/cpsa_bench --benchmark_filter=Trial

#include <benchmark/benchmark.h>

#include "cpsa/attack_opt.hpp"
#include "cpsa/estimation.hpp"
#include "cpsa/montecarlo.hpp"
#include "cpsa/precoding.hpp"
#include "cpsa/rate.hpp"

#include <vector>

using namespace cpsa;

namespace {

SystemParams bench_params(int m, int k, int n) {
  SystemParams p;
  p.antennas = m;
  p.users = k;
  p.attackers = n;
  p.pilot_len = k;
  p.pilot_power_mw = dbm_to_linear(10.0);
  p.attack_power_mw = dbm_to_linear(10.0);
  p.downlink_power_mw = dbm_to_linear(40.0);
  p.noise_mw = dbm_to_linear(-90.0);
  return p;
}

LargeScaleProfile bench_profile(const SystemParams& params, Rng& rng) {
  PathLossModel model;
  const auto users =
      place_uniform_annulus(rng, params.users, model.r_min_m,
                            model.r_max_users_m);
  const auto attackers =
      place_uniform_annulus(rng, params.attackers, model.r_min_m,
                            model.r_max_attackers_m);
  return build_profile(params, model, users, attackers);
}

void BM_TrialPipeline(benchmark::State& state) {
  const auto params = bench_params(static_cast<int>(state.range(0)), 24, 2);
  Rng setup(1);
  const auto profile = bench_profile(params, setup);
  const auto pilots = pilot_matrix(params.pilot_len, params.users);
  const AttackAllocation theta =
      AttackAllocation::uniform(params.attackers, params.users);
  std::vector<CVec> signals;
  for (int n = 0; n < params.attackers; ++n)
    signals.push_back(attack_waveform(theta.theta.row(n).transpose(),
                                      params.attack_power_mw, pilots));
  Vec gain(params.users);
  for (int k = 0; k < params.users; ++k)
    gain[k] = lmmse_stats(params, profile, theta.theta.col(k), k).gain;

  MomentAccumulator acc(params.users);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Rng rng(trial_seed(42, trial++));
    const auto ch = draw_channels(rng, params.antennas, profile);
    const CMat rx = uplink_receive(rng, ch, pilots, signals, params);
    const CMat y = despread_all(rx, pilots, params.pilot_power_mw);
    const CMat h_hat = y * gain.asDiagonal();
    const Precoder w = zf_precoder(h_hat);
    acc.accumulate(ch.users, w);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrialPipeline)->Arg(32)->Arg(64)->Arg(128);

void BM_ZfPrecoder(benchmark::State& state) {
  Rng rng(7);
  const int m = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const CMat h = rng.cnormal_matrix(m, k);
  for (auto _ : state) benchmark::DoNotOptimize(zf_precoder(h));
}
BENCHMARK(BM_ZfPrecoder)->Args({32, 8})->Args({64, 24})->Args({128, 24});

void BM_Xi(benchmark::State& state) {
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xi(x));
    x = x < 1e6 ? x + 1.37 : 1.0;
  }
}
BENCHMARK(BM_Xi);

void BM_ProjectFeasible(benchmark::State& state) {
  Rng rng(11);
  const int k = static_cast<int>(state.range(0));
  Vec v(k);
  for (int i = 0; i < k; ++i) v[i] = -0.5 + 2.0 * rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(project_feasible(v));
}
BENCHMARK(BM_ProjectFeasible)->Arg(8)->Arg(24)->Arg(64);

void BM_OptimizeAttack(benchmark::State& state) {
  const auto params = bench_params(64, static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)));
  Rng rng(23);
  const auto profile = bench_profile(params, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_attack(params, profile));
}
BENCHMARK(BM_OptimizeAttack)->Args({8, 2})->Args({24, 2})->Args({24, 8});

void BM_ClosedFormSumRate(benchmark::State& state) {
  const auto params = bench_params(64, static_cast<int>(state.range(0)), 2);
  Rng rng(31);
  const auto profile = bench_profile(params, rng);
  const AttackAllocation theta =
      AttackAllocation::uniform(params.attackers, params.users);
  for (auto _ : state)
    benchmark::DoNotOptimize(sum_rate(params, profile, theta));
}
BENCHMARK(BM_ClosedFormSumRate)->Arg(8)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
