// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>

#include <thread>

namespace cpsa::cli {

namespace {

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void add_common_flags(CLI::App* cmd, RunOptions& options) {
  cmd->add_option("--config", options.config_path,
                  "TOML config file (defaults match the standard setup)");
  cmd->add_option("--seed", options.seed,
                  "master seed; fixed default keeps runs reproducible");
  cmd->add_option("--threads", options.threads,
                  "worker threads (never changes results)");
  cmd->add_option("--out", options.out_path, "output file path")->required();
  cmd->add_flag("--quiet", options.quiet, "suppress progress lines");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"cpsa: pilot-spoofing attack simulator for MU-MIMO downlinks"};
  app.require_subcommand(1);

  RunOptions options;
  options.threads = default_threads();
  std::string figure;

  auto* analyze = app.add_subcommand(
      "analyze", "closed-form sum-rate sweep, placement-averaged");
  add_common_flags(analyze, options);
  analyze->add_option("--sweep", options.sweep, "VAR=START:STOP:STEP or list");
  analyze->add_option("--schemes", options.schemes, "comma-separated schemes");
  analyze->add_option("--placements", options.placements,
                      "placement draws to average over");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo link simulation with closed-form columns");
  add_common_flags(simulate, options);
  simulate->add_option("--sweep", options.sweep, "VAR=START:STOP:STEP or list");
  simulate->add_option("--schemes", options.schemes,
                       "comma-separated schemes");
  simulate->add_option("--trials", options.trials,
                       "fading trials per placement (>= 2)");
  simulate->add_option("--placements", options.placements,
                       "placement draws to average over");

  auto* optimize = app.add_subcommand(
      "optimize", "solve the attack power allocation, emit JSON");
  add_common_flags(optimize, options);

  auto* reproduce = app.add_subcommand(
      "reproduce", "run a figure preset (fig2 or fig3)");
  reproduce->add_option("figure", figure, "fig2 | fig3")->required();
  add_common_flags(reproduce, options);
  reproduce->add_option("--trials", options.trials,
                        "fading trials per placement");
  reproduce->add_option("--placements", options.placements,
                        "placement draws per point");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (analyze->parsed()) return cmd_analyze(options);
  if (simulate->parsed()) return cmd_simulate(options);
  if (optimize->parsed()) return cmd_optimize(options);
  if (reproduce->parsed()) return cmd_reproduce(figure, options);
  return 2;
}

}  // namespace cpsa::cli
