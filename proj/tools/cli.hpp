// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: configuration files, scenario sweeps,
// figure presets, CSV/JSON emission.

#ifndef CPSA_TOOLS_CLI_HPP
#define CPSA_TOOLS_CLI_HPP

#include "cpsa/montecarlo.hpp"
#include "cpsa/scenario.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpsa::cli {

/// Bad flags, bad config file, infeasible request. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration as written in the file: powers in dBm, losses in dB.
// Defaults reproduce the standard evaluation setup.
struct AppConfig {
  int m = 64;
  int k = 24;
  int n_attackers = 2;
  int tau_p = 24;
  double p_u_dbm = 10.0;
  double p_a_dbm = 10.0;
  double p_b_dbm = 40.0;
  double noise_dbm = -90.0;
  double l0_db = -45.0;
  double alpha = 3.7;
  double r_min_m = 50.0;
  double r_max_users_m = 400.0;
  double r_max_attackers_m = 300.0;
  std::string rate_log_base = "2";  // "2" or "e"
  // Optional fixed geometry. When set, placement draws are skipped and
  // every run uses exactly this profile.
  std::vector<double> user_distances_m;
  std::vector<double> attacker_distances_m;
};

/// Flat TOML (key = value with numbers, strings and numeric arrays).
/// Unknown keys are rejected.
AppConfig parse_config_text(std::string_view text);
AppConfig load_config(const std::string& path);

SystemParams to_system_params(const AppConfig& cfg);
PathLossModel to_path_loss_model(const AppConfig& cfg);

struct SweepSpec {
  std::string variable;        // M | N | P_A_dbm | D_A_max_m
  std::vector<double> values;  // non-empty, strictly increasing
};

/// "M=16:128:16" (inclusive stop) or "M=16,32,64" or "M=64".
SweepSpec parse_sweep(const std::string& text);
std::vector<AttackScheme> parse_schemes(const std::string& csv);
void apply_sweep_value(AppConfig& cfg, const std::string& variable,
                       double value);

struct RunOptions {
  std::string config_path;  // empty = built-in defaults
  std::string sweep;        // empty = single point
  std::string schemes = "none,uniform,optimal,noise_jamming";
  // Preset scale: 100 placements x 100 fading trials per point.
  std::int64_t trials = 100;
  std::int64_t placements = 100;
  int threads = 1;
  std::uint64_t seed = kDefaultMasterSeed;
  std::string out_path;
  bool quiet = false;
};

// Commands return process exit codes: 0 ok, 2 usage/config, 3 numerical.
// Output files are written atomically (temp file + rename), so failed
// runs leave nothing behind.
int cmd_analyze(const RunOptions& options);
int cmd_simulate(const RunOptions& options);
int cmd_optimize(const RunOptions& options);
int cmd_reproduce(const std::string& figure, const RunOptions& options);

/// Full argv interface; returns the process exit code.
int run_cli(int argc, const char* const* argv);

inline constexpr std::string_view kCsvHeader =
    "sweep_var,sweep_value,scheme,n_attackers,sum_rate_cf,sum_rate_emp,"
    "ci_halfwidth,placements,fading_trials,master_seed";

}  // namespace cpsa::cli

#endif  // CPSA_TOOLS_CLI_HPP
