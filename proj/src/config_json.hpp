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
// Internal JSON helpers shared by the run-config and sweep-spec loaders.
// Every object is parsed strictly: unknown keys are an error, so typos in
// config files fail loudly instead of silently keeping a default.

#ifndef NFPASSOC_SRC_CONFIG_JSON_HPP_
#define NFPASSOC_SRC_CONFIG_JSON_HPP_

#include <cmath>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"

#include "nfpassoc/channel.hpp"
#include "nfpassoc/instance.hpp"
#include "nfpassoc/scenario.hpp"
#include "nfpassoc/solvers.hpp"

namespace nfpassoc::detail {

inline void check_keys(const nlohmann::json& obj,
                       std::initializer_list<std::string_view> allowed,
                       const std::string& context) {
  if (!obj.is_object()) {
    throw std::invalid_argument(context + ": expected a JSON object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(context + ": unknown key '" + item.key() +
                                  "'");
    }
  }
}

inline void apply_env_json(const nlohmann::json& j, EnvironmentParams& env) {
  check_keys(j,
             {"alpha", "beta", "eta_los_db", "eta_nlos_db", "carrier_hz",
              "path_loss_exponent", "tx_power_w", "noise_floor_w"},
             "env");
  if (j.contains("alpha")) env.alpha = j.at("alpha").get<double>();
  if (j.contains("beta")) env.beta = j.at("beta").get<double>();
  if (j.contains("eta_los_db")) env.eta_los_db = j.at("eta_los_db").get<double>();
  if (j.contains("eta_nlos_db")) {
    env.eta_nlos_db = j.at("eta_nlos_db").get<double>();
  }
  if (j.contains("carrier_hz")) env.carrier_hz = j.at("carrier_hz").get<double>();
  if (j.contains("path_loss_exponent")) {
    env.path_loss_exponent = j.at("path_loss_exponent").get<double>();
  }
  if (j.contains("tx_power_w")) env.tx_power_w = j.at("tx_power_w").get<double>();
  if (j.contains("noise_floor_w")) {
    env.noise_floor_w = j.at("noise_floor_w").get<double>();
  }
}

inline void apply_scenario_json(const nlohmann::json& j, ScenarioConfig& config,
                                bool allow_seed) {
  check_keys(j,
             {"area_side_m", "n_sc", "n_nfp", "density_per_m2", "sc_min_sep_m",
              "nfp_height_m", "pl_max_db", "rate_choices_bps", "seed",
              "max_attempts"},
             "scenario");
  if (!allow_seed && j.contains("seed")) {
    throw std::invalid_argument(
        "scenario: use the top-level master_seed, not scenario.seed");
  }
  if (j.contains("area_side_m")) {
    config.area_side_m = j.at("area_side_m").get<double>();
  }
  if (j.contains("n_sc")) config.n_sc = j.at("n_sc").get<int>();
  if (j.contains("n_nfp")) config.n_nfp = j.at("n_nfp").get<int>();
  if (j.contains("density_per_m2")) {
    config.density_per_m2 = j.at("density_per_m2").get<double>();
  }
  if (j.contains("sc_min_sep_m")) {
    config.sc_min_sep_m = j.at("sc_min_sep_m").get<double>();
  }
  if (j.contains("nfp_height_m")) {
    config.nfp_height_m = j.at("nfp_height_m").get<double>();
  }
  if (j.contains("pl_max_db")) config.pl_max_db = j.at("pl_max_db").get<double>();
  if (j.contains("rate_choices_bps")) {
    config.rate_choices_bps =
        j.at("rate_choices_bps").get<std::vector<double>>();
  }
  if (j.contains("seed")) config.seed = j.at("seed").get<uint64_t>();
  if (j.contains("max_attempts")) {
    config.max_attempts = j.at("max_attempts").get<int>();
  }
}

inline void apply_weights_json(const nlohmann::json& j, ScoreWeights& weights) {
  check_keys(j, {"bandwidth", "rate"}, "weights");
  if (j.contains("bandwidth")) weights.bandwidth = j.at("bandwidth").get<double>();
  if (j.contains("rate")) weights.rate = j.at("rate").get<double>();
}

/// Scalar limits applied uniformly across NFPs; SINR enters in dB at this
/// boundary and nowhere else.
struct UniformLimits {
  double backhaul_rate_bps = 2.9e9;
  double nfp_bandwidth_hz = 1.0e9;
  int nfp_max_links = 16;
  double sinr_min_db = -5.0;

  double sinr_min_linear() const { return std::pow(10.0, sinr_min_db / 10.0); }

  NetworkLimits to_network_limits(int n_d) const {
    return NetworkLimits::uniform(n_d, backhaul_rate_bps, nfp_bandwidth_hz,
                                  nfp_max_links, sinr_min_linear());
  }
};

inline void apply_limits_json(const nlohmann::json& j, UniformLimits& limits) {
  check_keys(j,
             {"backhaul_rate_bps", "nfp_bandwidth_hz", "nfp_max_links",
              "sinr_min_db"},
             "limits");
  if (j.contains("backhaul_rate_bps")) {
    limits.backhaul_rate_bps = j.at("backhaul_rate_bps").get<double>();
  }
  if (j.contains("nfp_bandwidth_hz")) {
    limits.nfp_bandwidth_hz = j.at("nfp_bandwidth_hz").get<double>();
  }
  if (j.contains("nfp_max_links")) {
    limits.nfp_max_links = j.at("nfp_max_links").get<int>();
  }
  if (j.contains("sinr_min_db")) {
    limits.sinr_min_db = j.at("sinr_min_db").get<double>();
  }
}

inline DmcaOvershootRule overshoot_rule_from_string(const std::string& name) {
  if (name == "pseudocode") return DmcaOvershootRule::kMaxScore;
  if (name == "prose") return DmcaOvershootRule::kMaxRate;
  throw std::invalid_argument("variant must be 'pseudocode' or 'prose', got '" +
                              name + "'");
}

inline DmcaGrantRule grant_rule_from_string(const std::string& name) {
  if (name == "break") return DmcaGrantRule::kBreakOnBandwidth;
  if (name == "skip") return DmcaGrantRule::kSkipOnBandwidth;
  throw std::invalid_argument("grant_rule must be 'break' or 'skip', got '" +
                              name + "'");
}

}  // namespace nfpassoc::detail

#endif  // NFPASSOC_SRC_CONFIG_JSON_HPP_
