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

#include "nfpassoc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "config_json.hpp"

namespace nfpassoc {

double RunConfig::sinr_min_linear() const {
  return std::pow(10.0, sinr_min_db / 10.0);
}

NetworkLimits RunConfig::limits(int n_d) const {
  return NetworkLimits::uniform(n_d, backhaul_rate_bps, nfp_bandwidth_hz,
                                nfp_max_links, sinr_min_linear());
}

SolverOptions RunConfig::solver_options() const {
  SolverOptions options;
  options.weights = weights;
  options.overshoot_rule = overshoot_rule;
  options.grant_rule = grant_rule;
  return options;
}

void RunConfig::validate() const {
  env.validate();
  scenario.validate();
  limits(scenario.n_nfp).validate(scenario.n_nfp);
  if (solver != "cmca" && solver != "dmca" && solver != "exact") {
    throw std::invalid_argument("RunConfig: unknown solver '" + solver + "'");
  }
  if (node_budget == 0) {
    throw std::invalid_argument("RunConfig: node_budget must be positive");
  }
  if (!(weights.bandwidth >= 0.0) || !(weights.rate >= 0.0)) {
    throw std::invalid_argument("RunConfig: weights must be non-negative");
  }
}

RunConfig run_config_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  detail::check_keys(j,
                     {"env", "scenario", "limits", "solver", "weights",
                      "variant", "grant_rule", "node_budget"},
                     "config");
  RunConfig config;
  if (j.contains("env")) detail::apply_env_json(j.at("env"), config.env);
  if (j.contains("scenario")) {
    detail::apply_scenario_json(j.at("scenario"), config.scenario,
                                /*allow_seed=*/true);
  }
  if (j.contains("limits")) {
    detail::UniformLimits limits;
    detail::apply_limits_json(j.at("limits"), limits);
    config.backhaul_rate_bps = limits.backhaul_rate_bps;
    config.nfp_bandwidth_hz = limits.nfp_bandwidth_hz;
    config.nfp_max_links = limits.nfp_max_links;
    config.sinr_min_db = limits.sinr_min_db;
  }
  if (j.contains("solver")) config.solver = j.at("solver").get<std::string>();
  if (j.contains("weights")) {
    detail::apply_weights_json(j.at("weights"), config.weights);
  }
  if (j.contains("variant")) {
    config.overshoot_rule =
        detail::overshoot_rule_from_string(j.at("variant").get<std::string>());
  }
  if (j.contains("grant_rule")) {
    config.grant_rule =
        detail::grant_rule_from_string(j.at("grant_rule").get<std::string>());
  }
  if (j.contains("node_budget")) {
    config.node_budget = j.at("node_budget").get<uint64_t>();
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_run_config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_config_from_json(buf.str());
}

}  // namespace nfpassoc
