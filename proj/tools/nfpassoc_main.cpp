// Copyright 2026 The nfpassoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: generate scenarios, solve single instances, run
// batch sweeps. Defaults reproduce the reference urban setting, so a bare
// `nfpassoc generate` followed by `nfpassoc solve` works out of the box.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nfpassoc/config.hpp"
#include "nfpassoc/experiments.hpp"
#include "nfpassoc/fixtures.hpp"
#include "nfpassoc/instance.hpp"
#include "nfpassoc/scenario.hpp"
#include "nfpassoc/solvers.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error(flag + ": cannot parse '" + item +
                               "' as a number");
    }
  }
  if (values.empty()) throw std::runtime_error(flag + ": empty list");
  return values;
}

nfpassoc::ScoreWeights parse_weights(const std::string& text) {
  const std::vector<double> values = parse_double_list(text, "--weights");
  if (values.size() != 2) {
    throw std::runtime_error("--weights expects WB,WR (two numbers)");
  }
  return {values[0], values[1]};
}

// Flag groups mirroring the config file sections. Each group remembers which
// flags were actually given and applies only those over the loaded config.

struct EnvFlags {
  double alpha = 0, beta = 0, eta_los = 0, eta_nlos = 0;
  double carrier = 0, exponent = 0, tx_power = 0, noise = 0;
  CLI::Option *o_alpha = nullptr, *o_beta = nullptr, *o_eta_los = nullptr,
              *o_eta_nlos = nullptr, *o_carrier = nullptr, *o_exponent = nullptr,
              *o_tx_power = nullptr, *o_noise = nullptr;

  void attach(CLI::App& cmd) {
    o_alpha = cmd.add_option("--alpha", alpha, "LoS curve parameter");
    o_beta = cmd.add_option("--beta", beta, "LoS curve steepness (1/deg)");
    o_eta_los = cmd.add_option("--eta-los-db", eta_los, "LoS excess loss (dB)");
    o_eta_nlos =
        cmd.add_option("--eta-nlos-db", eta_nlos, "NLoS excess loss (dB)");
    o_carrier = cmd.add_option("--carrier-hz", carrier, "Carrier frequency");
    o_exponent =
        cmd.add_option("--path-loss-exponent", exponent, "Path loss exponent");
    o_tx_power = cmd.add_option("--tx-power-w", tx_power, "Transmit power (W)");
    o_noise = cmd.add_option("--noise-floor-w", noise, "Noise floor (W)");
  }

  void apply(nfpassoc::EnvironmentParams& env) const {
    if (o_alpha->count()) env.alpha = alpha;
    if (o_beta->count()) env.beta = beta;
    if (o_eta_los->count()) env.eta_los_db = eta_los;
    if (o_eta_nlos->count()) env.eta_nlos_db = eta_nlos;
    if (o_carrier->count()) env.carrier_hz = carrier;
    if (o_exponent->count()) env.path_loss_exponent = exponent;
    if (o_tx_power->count()) env.tx_power_w = tx_power;
    if (o_noise->count()) env.noise_floor_w = noise;
  }
};

struct ScenarioFlags {
  double area = 0, density = 0, sc_sep = 0, height = 0, pl_max = 0;
  int n_sc = 0, n_nfp = 0, attempts = 0;
  uint64_t seed = 0;
  std::string rates;
  CLI::Option *o_area = nullptr, *o_n_sc = nullptr, *o_n_nfp = nullptr,
              *o_density = nullptr, *o_sc_sep = nullptr, *o_height = nullptr,
              *o_pl_max = nullptr, *o_rates = nullptr, *o_seed = nullptr,
              *o_attempts = nullptr;

  void attach(CLI::App& cmd) {
    o_area = cmd.add_option("--area-side-m", area, "Deployment square side");
    o_n_sc = cmd.add_option("--n-sc", n_sc, "Number of SCs");
    o_n_nfp = cmd.add_option("--n-nfp", n_nfp, "Number of NFPs");
    o_density =
        cmd.add_option("--density-per-m2", density, "Parent Poisson intensity");
    o_sc_sep =
        cmd.add_option("--sc-min-sep-m", sc_sep, "SC hard-core separation");
    o_height = cmd.add_option("--nfp-height-m", height, "NFP altitude");
    o_pl_max =
        cmd.add_option("--pl-max-db", pl_max, "Coverage-edge path loss (dB)");
    o_rates = cmd.add_option("--rate-choices", rates,
                             "Comma list of requested rates (bit/s)");
    o_seed = cmd.add_option("--seed", seed, "Scenario seed");
    o_attempts =
        cmd.add_option("--max-attempts", attempts, "Generation attempt cap");
  }

  void apply(nfpassoc::ScenarioConfig& config) const {
    if (o_area->count()) config.area_side_m = area;
    if (o_n_sc->count()) config.n_sc = n_sc;
    if (o_n_nfp->count()) config.n_nfp = n_nfp;
    if (o_density->count()) config.density_per_m2 = density;
    if (o_sc_sep->count()) config.sc_min_sep_m = sc_sep;
    if (o_height->count()) config.nfp_height_m = height;
    if (o_pl_max->count()) config.pl_max_db = pl_max;
    if (o_rates->count()) {
      config.rate_choices_bps = parse_double_list(rates, "--rate-choices");
    }
    if (o_seed->count()) config.seed = seed;
    if (o_attempts->count()) config.max_attempts = attempts;
  }
};

struct LimitsFlags {
  double backhaul = 0, bandwidth = 0, sinr_db = 0;
  int links = 0;
  CLI::Option *o_backhaul = nullptr, *o_bandwidth = nullptr, *o_links = nullptr,
              *o_sinr = nullptr;

  void attach(CLI::App& cmd) {
    o_backhaul = cmd.add_option("--backhaul-rate-bps", backhaul,
                                "Shared backhaul rate limit (bit/s)");
    o_bandwidth = cmd.add_option("--nfp-bandwidth-hz", bandwidth,
                                 "Per-NFP bandwidth limit (Hz)");
    o_links =
        cmd.add_option("--nfp-max-links", links, "Per-NFP link count limit");
    o_sinr =
        cmd.add_option("--sinr-min-db", sinr_db, "Association SINR floor (dB)");
  }

  void apply(nfpassoc::RunConfig& config) const {
    if (o_backhaul->count()) config.backhaul_rate_bps = backhaul;
    if (o_bandwidth->count()) config.nfp_bandwidth_hz = bandwidth;
    if (o_links->count()) config.nfp_max_links = links;
    if (o_sinr->count()) config.sinr_min_db = sinr_db;
  }
};

struct SolverFlags {
  std::string solver, weights, variant, grant;
  uint64_t node_budget = 0;
  CLI::Option *o_solver = nullptr, *o_weights = nullptr, *o_variant = nullptr,
              *o_grant = nullptr, *o_budget = nullptr;

  void attach(CLI::App& cmd) {
    o_solver = cmd.add_option("--solver", solver, "cmca, dmca or exact");
    o_weights =
        cmd.add_option("--weights", weights, "Score weights as WB,WR");
    o_variant = cmd.add_option(
        "--variant", variant,
        "Distributed overshoot rule: pseudocode (max score) or prose (max rate)");
    o_grant = cmd.add_option("--grant-rule", grant,
                             "Distributed grant scan on a bandwidth miss: "
                             "break or skip");
    o_budget = cmd.add_option("--node-budget", node_budget,
                              "Exact-solver search node budget");
  }

  void apply(nfpassoc::RunConfig& config) const {
    if (o_solver->count()) config.solver = solver;
    if (o_weights->count()) config.weights = parse_weights(weights);
    if (o_variant->count()) {
      config.overshoot_rule = variant == "prose"
                                  ? nfpassoc::DmcaOvershootRule::kMaxRate
                                  : nfpassoc::DmcaOvershootRule::kMaxScore;
      if (variant != "prose" && variant != "pseudocode") {
        throw std::runtime_error("--variant must be pseudocode or prose");
      }
    }
    if (o_grant->count()) {
      if (grant != "break" && grant != "skip") {
        throw std::runtime_error("--grant-rule must be break or skip");
      }
      config.grant_rule = grant == "skip"
                              ? nfpassoc::DmcaGrantRule::kSkipOnBandwidth
                              : nfpassoc::DmcaGrantRule::kBreakOnBandwidth;
    }
    if (o_budget->count()) config.node_budget = node_budget;
  }
};

std::string format_si(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

int cmd_generate(const std::string& config_path, const EnvFlags& env_flags,
                 const ScenarioFlags& scenario_flags,
                 const std::string& fixture, const std::string& out_path) {
  nfpassoc::RunConfig config;
  if (!config_path.empty()) config = nfpassoc::load_run_config(config_path);
  env_flags.apply(config.env);
  scenario_flags.apply(config.scenario);
  config.validate();

  if (!fixture.empty()) {
    if (fixture != "demo") {
      throw std::runtime_error("unknown fixture '" + fixture +
                               "' (available: demo)");
    }
    const nfpassoc::LinkMetrics metrics = nfpassoc::demo_metrics();
    write_file(out_path,
               nfpassoc::instance_to_json(metrics.demand_bps, metrics.sinr) +
                   "\n");
    std::cout << "instance: " << metrics.n_sc << " SCs, " << metrics.n_d
              << " NFPs (bundled demo)\n"
              << "wrote " << out_path << "\n";
    return 0;
  }

  const nfpassoc::Scenario scenario =
      nfpassoc::build_scenario(config.scenario, config.env);
  nfpassoc::save_scenario(scenario, out_path);
  double sum_rate = 0.0;
  for (double r : scenario.demand_bps) sum_rate += r;
  std::cout << "scenario: " << scenario.sc_positions.size() << " SCs, "
            << scenario.nfp_positions.size() << " NFPs, sum requested rate "
            << format_si(sum_rate) << " bit/s\n"
            << "wrote " << out_path << "\n";
  return 0;
}

int cmd_solve(const std::string& config_path, const EnvFlags& env_flags,
              const LimitsFlags& limits_flags, const SolverFlags& solver_flags,
              const std::string& input_path, const std::string& out_path) {
  nfpassoc::RunConfig config;
  if (!config_path.empty()) config = nfpassoc::load_run_config(config_path);
  env_flags.apply(config.env);
  limits_flags.apply(config);
  solver_flags.apply(config);
  config.validate();

  const std::string text = read_file(input_path);
  const std::string type =
      nlohmann::json::parse(text).value("type", std::string());
  nfpassoc::AssociationInstance instance;
  if (type == "scenario") {
    const nfpassoc::Scenario scenario = nfpassoc::scenario_from_json(text);
    const int n_d = static_cast<int>(scenario.nfp_positions.size());
    instance =
        nfpassoc::make_instance(scenario, config.env, config.limits(n_d));
  } else if (type == "instance") {
    instance.metrics =
        nfpassoc::instance_from_json(text, config.sinr_min_linear());
    instance.limits = config.limits(instance.metrics.n_d);
    instance.validate();
  } else {
    throw std::runtime_error(input_path +
                             ": expected \"type\" of scenario or instance");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const nfpassoc::AssociationMatrix m = nfpassoc::solve_by_name(
      config.solver, instance, config.solver_options(), config.node_budget);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  const nfpassoc::FeasibilityReport report =
      nfpassoc::check_feasibility(instance, m);
  if (!report.feasible) {
    std::cerr << "error: solver output failed the feasibility audit:\n";
    for (const auto& v : report.violations) {
      std::cerr << "  " << nfpassoc::to_string(v.kind) << " (sc=" << v.sc
                << ", nfp=" << v.nfp << "): " << v.lhs << " > " << v.limit
                << "\n";
    }
    return 2;
  }

  std::cout << "solver " << config.solver << ": " << nfpassoc::objective(m)
            << " of " << instance.n_sc() << " SCs associated\n";
  std::cout << "backhaul rate: " << format_si(report.rate_used_bps) << " / "
            << format_si(instance.limits.backhaul_rate_bps) << " bit/s\n";
  for (int j = 0; j < instance.n_d(); ++j) {
    std::cout << "nfp " << j << ": bandwidth "
              << format_si(report.bandwidth_used_hz[j]) << " / "
              << format_si(instance.limits.nfp_bandwidth_hz[j]) << " Hz, links "
              << report.links_used[j] << " / "
              << instance.limits.nfp_max_links[j] << "\n";
  }
  char ms_buf[64];
  std::snprintf(ms_buf, sizeof(ms_buf), "%.3f", ms);
  std::cout << "solve time: " << ms_buf << " ms\n";
  write_file(out_path, nfpassoc::association_to_csv(m));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path,
              const SolverFlags& solver_flags, CLI::Option* o_scenarios,
              int scenarios, CLI::Option* o_grid, const std::string& grid,
              CLI::Option* o_seed, uint64_t seed, CLI::Option* o_solvers,
              const std::string& solvers, CLI::Option* o_reps, int reps) {
  nfpassoc::SweepSpec spec = nfpassoc::load_sweep_spec(spec_path);
  if (o_scenarios->count()) spec.n_scenarios = scenarios;
  if (o_grid->count()) spec.ratio_grid = parse_double_list(grid, "--grid");
  if (o_seed->count()) spec.base_config.seed = seed;
  if (o_reps->count()) spec.timing_reps = reps;
  if (o_solvers->count()) {
    spec.solvers.clear();
    std::stringstream ss(solvers);
    std::string item;
    while (std::getline(ss, item, ',')) spec.solvers.push_back(item);
  }
  if (solver_flags.o_weights->count()) {
    spec.weights = parse_weights(solver_flags.weights);
  }
  if (solver_flags.o_variant->count()) {
    if (solver_flags.variant != "prose" && solver_flags.variant != "pseudocode") {
      throw std::runtime_error("--variant must be pseudocode or prose");
    }
    spec.overshoot_rule = solver_flags.variant == "prose"
                              ? nfpassoc::DmcaOvershootRule::kMaxRate
                              : nfpassoc::DmcaOvershootRule::kMaxScore;
  }
  if (solver_flags.o_grant->count()) {
    if (solver_flags.grant != "break" && solver_flags.grant != "skip") {
      throw std::runtime_error("--grant-rule must be break or skip");
    }
    spec.grant_rule = solver_flags.grant == "skip"
                          ? nfpassoc::DmcaGrantRule::kSkipOnBandwidth
                          : nfpassoc::DmcaGrantRule::kBreakOnBandwidth;
  }
  if (solver_flags.o_budget->count()) {
    spec.node_budget = solver_flags.node_budget;
  }
  spec.validate();

  const nfpassoc::SweepResult result = nfpassoc::run_sweep(spec);
  nfpassoc::write_sweep_csv(result, out_path);

  if (spec.kind == nfpassoc::SweepKind::kTiming) {
    std::cout << "timing over " << result.seeds_used.size() << " scenarios, "
              << spec.timing_reps << " reps each:\n";
    for (const auto& name : spec.solvers) {
      std::vector<double> medians;
      for (const auto& row : result.timing) {
        if (row.solver == name) medians.push_back(row.median_ms);
      }
      std::sort(medians.begin(), medians.end());
      if (medians.empty()) continue;
      const size_t mid = medians.size() / 2;
      const double overall = medians.size() % 2 == 1
                                 ? medians[mid]
                                 : 0.5 * (medians[mid - 1] + medians[mid]);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.4f", overall);
      std::cout << "  " << name << ": median " << buf << " ms\n";
    }
  } else {
    std::cout << nfpassoc::to_string(spec.kind) << " sweep over "
              << result.seeds_used.size() << " scenarios:\n";
    for (const auto& cell : result.cells) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%6.3f  %-5s  %7.3f%% +- %.3f",
                    cell.ratio, cell.solver.c_str(), cell.mean_pct_unassoc,
                    cell.stderr_pct);
      std::cout << "  " << buf << "\n";
    }
  }
  std::cout << "wrote " << out_path << "\n";

  const size_t total = result.seeds_used.size() + result.seeds_failed.size();
  if (total > 0 &&
      static_cast<double>(result.seeds_failed.size()) > 0.01 * total) {
    std::cerr << "error: " << result.seeds_failed.size() << " of " << total
              << " scenario seeds failed generation\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NFP/SC association toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("nfpassoc ") + kVersion);

  // generate
  CLI::App* generate =
      app.add_subcommand("generate", "Generate a random scenario file");
  std::string gen_config, gen_out = "scenario.json", gen_fixture;
  EnvFlags gen_env;
  ScenarioFlags gen_scenario;
  generate->add_option("--config", gen_config, "JSON config file");
  generate->add_option("--out", gen_out, "Output path");
  generate->add_option("--fixture", gen_fixture,
                       "Write a bundled instance instead (demo)");
  gen_env.attach(*generate);
  gen_scenario.attach(*generate);

  // solve
  CLI::App* solve =
      app.add_subcommand("solve", "Solve one scenario or instance file");
  std::string sol_config, sol_input, sol_out = "association.csv";
  EnvFlags sol_env;
  LimitsFlags sol_limits;
  SolverFlags sol_solver;
  solve->add_option("--config", sol_config, "JSON config file");
  solve->add_option("--input", sol_input, "Scenario or instance JSON")
      ->required();
  solve->add_option("--out", sol_out, "Association CSV path");
  sol_env.attach(*solve);
  sol_limits.attach(*solve);
  sol_solver.attach(*solve);

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run a batch experiment");
  std::string swp_spec, swp_out = "sweep.csv", swp_grid, swp_solvers;
  int swp_scenarios = 0, swp_reps = 0;
  uint64_t swp_seed = 0;
  SolverFlags swp_solver;
  sweep->add_option("--spec", swp_spec, "Sweep spec JSON")->required();
  sweep->add_option("--out", swp_out, "Output CSV path");
  CLI::Option* o_scenarios =
      sweep->add_option("--scenarios", swp_scenarios, "Scenario count");
  CLI::Option* o_grid =
      sweep->add_option("--grid", swp_grid, "Comma list of ratios");
  CLI::Option* o_seed = sweep->add_option("--seed", swp_seed, "Master seed");
  CLI::Option* o_solvers =
      sweep->add_option("--solvers", swp_solvers, "Comma list of solver ids");
  CLI::Option* o_reps =
      sweep->add_option("--timing-reps", swp_reps, "Repetitions per scenario");
  swp_solver.attach(*sweep);

  // version
  CLI::App* version = app.add_subcommand("version", "Print version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(gen_config, gen_env, gen_scenario, gen_fixture,
                          gen_out);
    }
    if (solve->parsed()) {
      return cmd_solve(sol_config, sol_env, sol_limits, sol_solver, sol_input,
                       sol_out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(swp_spec, swp_out, swp_solver, o_scenarios,
                       swp_scenarios, o_grid, swp_grid, o_seed, swp_seed,
                       o_solvers, swp_solvers, o_reps, swp_reps);
    }
    if (version->parsed()) {
      std::cout << "nfpassoc " << kVersion << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
