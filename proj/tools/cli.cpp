// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "cpsa/attack_opt.hpp"
#include "cpsa/montecarlo.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace cpsa::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
      throw UsageError("trailing characters in value for '" + key + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("expected a number for '" + key + "', got '" + text +
                     "'");
  }
}

int parse_int(const std::string& text, const std::string& key) {
  const double v = parse_number(text, key);
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9)
    throw UsageError("'" + key + "' must be an integer");
  return static_cast<int>(r);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_array(const std::string& text,
                                const std::string& key) {
  const std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw UsageError("expected an array for '" + key + "'");
  std::vector<double> values;
  const std::string inner = trim(body.substr(1, body.size() - 2));
  if (inner.empty()) return values;
  for (const auto& piece : split(inner, ','))
    values.push_back(parse_number(trim(piece), key));
  return values;
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

AppConfig parse_config_text(std::string_view text) {
  AppConfig cfg;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw UsageError("config line " + std::to_string(line_no) +
                       ": missing value for '" + key + "'");

    if (key == "m") cfg.m = parse_int(value, key);
    else if (key == "k") cfg.k = parse_int(value, key);
    else if (key == "n_attackers") cfg.n_attackers = parse_int(value, key);
    else if (key == "tau_p") cfg.tau_p = parse_int(value, key);
    else if (key == "p_u_dbm") cfg.p_u_dbm = parse_number(value, key);
    else if (key == "p_a_dbm") cfg.p_a_dbm = parse_number(value, key);
    else if (key == "p_b_dbm") cfg.p_b_dbm = parse_number(value, key);
    else if (key == "noise_dbm") cfg.noise_dbm = parse_number(value, key);
    else if (key == "l0_db") cfg.l0_db = parse_number(value, key);
    else if (key == "alpha") cfg.alpha = parse_number(value, key);
    else if (key == "r_min_m") cfg.r_min_m = parse_number(value, key);
    else if (key == "r_max_users_m")
      cfg.r_max_users_m = parse_number(value, key);
    else if (key == "r_max_attackers_m")
      cfg.r_max_attackers_m = parse_number(value, key);
    else if (key == "rate_log_base") {
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);
      if (value != "2" && value != "e")
        throw UsageError("rate_log_base must be \"2\" or \"e\"");
      cfg.rate_log_base = value;
    } else if (key == "user_distances_m")
      cfg.user_distances_m = parse_array(value, key);
    else if (key == "attacker_distances_m")
      cfg.attacker_distances_m = parse_array(value, key);
    else
      throw UsageError("unknown config key '" + key + "'");
  }
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

SystemParams to_system_params(const AppConfig& cfg) {
  SystemParams p;
  p.antennas = cfg.m;
  p.users = cfg.k;
  p.attackers = cfg.n_attackers;
  p.pilot_len = cfg.tau_p;
  p.pilot_power_mw = dbm_to_linear(cfg.p_u_dbm);
  p.attack_power_mw = dbm_to_linear(cfg.p_a_dbm);
  p.downlink_power_mw = dbm_to_linear(cfg.p_b_dbm);
  p.noise_mw = dbm_to_linear(cfg.noise_dbm);
  p.rate_log_base = (cfg.rate_log_base == "e") ? std::exp(1.0) : 2.0;
  return p;
}

PathLossModel to_path_loss_model(const AppConfig& cfg) {
  PathLossModel m;
  m.ref_loss_db = cfg.l0_db;
  m.exponent = cfg.alpha;
  m.r_min_m = cfg.r_min_m;
  m.r_max_users_m = cfg.r_max_users_m;
  m.r_max_attackers_m = cfg.r_max_attackers_m;
  return m;
}

SweepSpec parse_sweep(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw UsageError("sweep must look like VAR=START:STOP:STEP or VAR=a,b,c");
  SweepSpec spec;
  spec.variable = trim(text.substr(0, eq));
  static const char* kVars[] = {"M", "N", "P_A_dbm", "D_A_max_m"};
  if (std::find_if(std::begin(kVars), std::end(kVars), [&](const char* v) {
        return spec.variable == v;
      }) == std::end(kVars))
    throw UsageError("unknown sweep variable '" + spec.variable +
                     "' (expected M, N, P_A_dbm or D_A_max_m)");

  const std::string body = trim(text.substr(eq + 1));
  if (body.find(':') != std::string::npos) {
    const auto parts = split(body, ':');
    if (parts.size() != 3) throw UsageError("range sweep needs START:STOP:STEP");
    const double start = parse_number(trim(parts[0]), spec.variable);
    const double stop = parse_number(trim(parts[1]), spec.variable);
    const double step = parse_number(trim(parts[2]), spec.variable);
    if (!(step > 0.0) || stop < start)
      throw UsageError("sweep range must satisfy start <= stop, step > 0");
    for (double v = start; v <= stop + 1e-9 * step; v += step)
      spec.values.push_back(v);
  } else {
    for (const auto& piece : split(body, ','))
      spec.values.push_back(parse_number(trim(piece), spec.variable));
  }
  if (spec.values.empty()) throw UsageError("sweep produced no values");
  for (std::size_t i = 1; i < spec.values.size(); ++i)
    if (!(spec.values[i] > spec.values[i - 1]))
      throw UsageError("sweep values must be strictly increasing");
  return spec;
}

std::vector<AttackScheme> parse_schemes(const std::string& csv) {
  std::vector<AttackScheme> schemes;
  for (const auto& piece : split(csv, ',')) {
    const std::string name = trim(piece);
    if (name.empty()) continue;
    const auto scheme = parse_scheme(name);
    if (!scheme) throw UsageError("unknown scheme '" + name + "'");
    schemes.push_back(*scheme);
  }
  if (schemes.empty()) throw UsageError("scheme list is empty");
  return schemes;
}

void apply_sweep_value(AppConfig& cfg, const std::string& variable,
                       double value) {
  if (variable == "M") {
    cfg.m = parse_int(std::to_string(value), variable);
  } else if (variable == "N") {
    cfg.n_attackers = parse_int(std::to_string(value), variable);
  } else if (variable == "P_A_dbm") {
    cfg.p_a_dbm = value;
  } else if (variable == "D_A_max_m") {
    cfg.r_max_attackers_m = value;
  } else {
    throw UsageError("unknown sweep variable '" + variable + "'");
  }
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct CsvRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::string scheme;
  int n_attackers = 0;
  double sum_rate_cf = 0.0;
  std::optional<double> sum_rate_emp;
  std::optional<double> ci_halfwidth;
  std::int64_t placements = 0;
  std::int64_t fading_trials = 0;
  std::uint64_t master_seed = 0;
};

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out{kCsvHeader};
  out.push_back('\n');
  for (const auto& r : rows) {
    out += r.sweep_var;
    out.push_back(',');
    out += format_double(r.sweep_value);
    out.push_back(',');
    out += r.scheme;
    out.push_back(',');
    out += std::to_string(r.n_attackers);
    out.push_back(',');
    out += format_double(r.sum_rate_cf);
    out.push_back(',');
    if (r.sum_rate_emp) out += format_double(*r.sum_rate_emp);
    out.push_back(',');
    if (r.ci_halfwidth) out += format_double(*r.ci_halfwidth);
    out.push_back(',');
    out += std::to_string(r.placements);
    out.push_back(',');
    out += std::to_string(r.fading_trials);
    out.push_back(',');
    out += std::to_string(r.master_seed);
    out.push_back('\n');
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write output file '" + path + "'");
    out << content;
    if (!out) {
      fs::remove(tmp);
      throw UsageError("short write to '" + path + "'");
    }
  }
  fs::rename(tmp, target);
}

// Fixed geometry (explicit distance lists) bypasses placement draws.
struct Scenario {
  SystemParams params;
  PathLossModel model;
  std::optional<LargeScaleProfile> fixed_profile;
};

Scenario resolve_scenario(const AppConfig& cfg) {
  Scenario s;
  s.params = to_system_params(cfg);
  s.model = to_path_loss_model(cfg);
  s.params.validate();
  s.model.validate();
  if (!cfg.user_distances_m.empty() || !cfg.attacker_distances_m.empty()) {
    if (cfg.user_distances_m.size() != static_cast<std::size_t>(cfg.k))
      throw UsageError("user_distances_m must list exactly k distances");
    if (cfg.attacker_distances_m.size() !=
        static_cast<std::size_t>(cfg.n_attackers))
      throw UsageError(
          "attacker_distances_m must list exactly n_attackers distances");
    s.fixed_profile = build_profile(s.params, s.model, cfg.user_distances_m,
                                    cfg.attacker_distances_m);
  }
  return s;
}

AppConfig config_from_options(const RunOptions& options) {
  return options.config_path.empty() ? AppConfig{}
                                     : load_config(options.config_path);
}

struct SweepCell {
  std::string tag;       // sweep_var column
  double value = 0.0;    // sweep_value column
  AppConfig cfg;         // fully applied configuration
  AttackScheme scheme = AttackScheme::None;
};

std::vector<SweepCell> expand_cells(const AppConfig& base,
                                    const RunOptions& options) {
  std::vector<SweepCell> cells;
  const auto schemes = parse_schemes(options.schemes);
  if (options.sweep.empty()) {
    for (const auto scheme : schemes)
      cells.push_back({"none", 0.0, base, scheme});
    return cells;
  }
  const SweepSpec spec = parse_sweep(options.sweep);
  for (const double value : spec.values) {
    AppConfig cfg = base;
    apply_sweep_value(cfg, spec.variable, value);
    for (const auto scheme : schemes)
      cells.push_back({spec.variable, value, cfg, scheme});
  }
  return cells;
}

CsvRow run_cell(const SweepCell& cell, const RunOptions& options,
                bool empirical) {
  const Scenario scenario = resolve_scenario(cell.cfg);
  CsvRow row;
  row.sweep_var = cell.tag;
  row.sweep_value = cell.value;
  row.scheme = to_string(cell.scheme);
  row.n_attackers = scenario.params.attackers;
  row.master_seed = options.seed;

  TrialPlan plan;
  plan.scheme = cell.scheme;
  plan.master_seed = options.seed;
  plan.threads = options.threads;
  plan.fading_trials = empirical ? options.trials : 2;
  plan.placement_trials = options.placements;

  if (scenario.fixed_profile) {
    row.placements = 1;
    if (empirical) {
      plan.placement_trials = 1;
      const SchemeRun run =
          run_scheme(scenario.params, *scenario.fixed_profile, plan);
      row.sum_rate_cf = run.closed_form.sum;
      row.sum_rate_emp = run.empirical.sum;
      row.ci_halfwidth = run.empirical.sum_ci.value_or(0.0);
      row.fading_trials = plan.fading_trials;
    } else {
      // Closed form on a fixed profile is deterministic; no spread.
      AttackAllocation theta =
          AttackAllocation::zero(scenario.params.attackers,
                                 scenario.params.users);
      switch (cell.scheme) {
        case AttackScheme::None: break;
        case AttackScheme::Uniform:
          theta = AttackAllocation::uniform(scenario.params.attackers,
                                            scenario.params.users);
          break;
        case AttackScheme::Optimal:
          theta = optimize_attack(scenario.params, *scenario.fixed_profile)
                      .theta;
          break;
        case AttackScheme::NoiseJamming:
          theta = jamming_effective_allocation(scenario.params);
          break;
      }
      row.sum_rate_cf =
          sum_rate(scenario.params, *scenario.fixed_profile, theta).sum;
      row.ci_halfwidth = 0.0;
      row.fading_trials = 0;
    }
    return row;
  }

  if (empirical) {
    const PlacementAverage avg =
        run_placement_average(scenario.params, scenario.model, plan);
    row.sum_rate_cf = avg.cf_mean;
    row.sum_rate_emp = avg.emp_mean;
    row.ci_halfwidth = avg.emp_ci;
    row.placements = plan.placement_trials;
    row.fading_trials = avg.fading_trials;
  } else {
    const PlacementAverage avg =
        run_closed_form_average(scenario.params, scenario.model, plan);
    row.sum_rate_cf = avg.cf_mean;
    row.ci_halfwidth = avg.cf_ci;
    row.placements = plan.placement_trials;
    row.fading_trials = 0;
  }
  return row;
}

int run_table(const RunOptions& options, bool empirical) {
  try {
    if (options.out_path.empty()) throw UsageError("--out is required");
    if (empirical && options.trials < 2)
      throw UsageError("--trials must be at least 2");
    if (options.placements < 1)
      throw UsageError("--placements must be at least 1");
    const AppConfig base = config_from_options(options);
    const auto cells = expand_cells(base, options);

    std::vector<CsvRow> rows;
    rows.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      rows.push_back(run_cell(cells[i], options, empirical));
      if (!options.quiet)
        std::cerr << "[cpsa] " << cells[i].tag << "="
                  << format_double(cells[i].value) << " scheme="
                  << to_string(cells[i].scheme) << " (" << (i + 1) << "/"
                  << cells.size() << ")\n";
    }
    write_file_atomic(options.out_path, to_csv(rows));
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int cmd_analyze(const RunOptions& options) { return run_table(options, false); }

int cmd_simulate(const RunOptions& options) { return run_table(options, true); }

int cmd_optimize(const RunOptions& options) {
  try {
    if (options.out_path.empty()) throw UsageError("--out is required");
    const AppConfig cfg = config_from_options(options);
    const Scenario scenario = resolve_scenario(cfg);
    if (scenario.params.attackers < 1)
      throw UsageError("optimize requires n_attackers >= 1");

    const LargeScaleProfile profile =
        scenario.fixed_profile
            ? *scenario.fixed_profile
            : draw_placement_profile(scenario.params, scenario.model,
                                     options.seed, 0);
    const SolveResult result = optimize_attack(scenario.params, profile);

    nlohmann::json doc;
    doc["theta"] = nlohmann::json::array();
    for (int n = 0; n < result.theta.attackers(); ++n) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < result.theta.users(); ++k)
        row.push_back(result.theta.theta(n, k));
      doc["theta"].push_back(std::move(row));
    }
    doc["objective"] = result.objective;
    doc["kkt_residual"] = result.kkt_residual;
    doc["iterations"] = result.iterations;
    write_file_atomic(options.out_path, doc.dump(2) + "\n");
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

int cmd_reproduce(const std::string& figure, const RunOptions& options) {
  try {
    if (options.out_path.empty()) throw UsageError("--out is required");
    if (options.trials < 2) throw UsageError("--trials must be at least 2");

    // Both presets share the evaluation geometry and powers; the
    // defaults of AppConfig are exactly that setup.
    AppConfig base;
    std::vector<CsvRow> rows;
    RunOptions local = options;

    if (figure == "fig2") {
      base.r_max_attackers_m = 300.0;
      for (const int m : {32, 48, 64, 80, 96, 112, 128}) {
        AppConfig cfg = base;
        cfg.m = m;
        // No-attack baseline is independent of the attacker count.
        {
          AppConfig none_cfg = cfg;
          none_cfg.n_attackers = 0;
          SweepCell cell{"M", static_cast<double>(m), none_cfg,
                         AttackScheme::None};
          rows.push_back(run_cell(cell, local, true));
        }
        for (const auto scheme :
             {AttackScheme::Uniform, AttackScheme::Optimal,
              AttackScheme::NoiseJamming}) {
          for (const int n : {1, 2, 4}) {
            AppConfig attack_cfg = cfg;
            attack_cfg.n_attackers = n;
            SweepCell cell{"M", static_cast<double>(m), attack_cfg, scheme};
            rows.push_back(run_cell(cell, local, true));
          }
        }
        if (!options.quiet)
          std::cerr << "[cpsa] reproduce fig2: M=" << m << " done\n";
      }
    } else if (figure == "fig3") {
      base.m = 64;
      base.n_attackers = 2;
      for (const double pa_dbm : {5.0, 10.0}) {
        const std::string tag =
            "D_A_max_m@pa" + std::to_string(static_cast<int>(pa_dbm)) + "dbm";
        for (double d = 100.0; d <= 500.0 + 1e-9; d += 50.0) {
          AppConfig cfg = base;
          cfg.p_a_dbm = pa_dbm;
          cfg.r_max_attackers_m = d;
          for (const auto scheme : {AttackScheme::None, AttackScheme::Optimal}) {
            SweepCell cell{tag, d, cfg, scheme};
            rows.push_back(run_cell(cell, local, true));
          }
        }
        if (!options.quiet)
          std::cerr << "[cpsa] reproduce fig3: P_A=" << pa_dbm << " dBm done\n";
      }
    } else {
      throw UsageError("unknown figure '" + figure + "' (expected fig2 or fig3)");
    }

    write_file_atomic(options.out_path, to_csv(rows));
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cpsa::cli
