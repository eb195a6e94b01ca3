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

#ifndef NFPASSOC_CONFIG_HPP_
#define NFPASSOC_CONFIG_HPP_

#include <cstdint>
#include <string>

#include "nfpassoc/channel.hpp"
#include "nfpassoc/instance.hpp"
#include "nfpassoc/scenario.hpp"
#include "nfpassoc/solvers.hpp"

namespace nfpassoc {

/// Everything a single generate/solve run needs, with defaults matching the
/// reference urban setting. Loaded from a JSON config file; command-line
/// flags override individual fields afterwards.
struct RunConfig {
  EnvironmentParams env;
  ScenarioConfig scenario;
  double backhaul_rate_bps = 2.9e9;
  double nfp_bandwidth_hz = 1.0e9;
  int nfp_max_links = 16;
  double sinr_min_db = -5.0;  // dB only at this boundary
  std::string solver = "cmca";
  ScoreWeights weights;
  DmcaOvershootRule overshoot_rule = DmcaOvershootRule::kMaxScore;
  DmcaGrantRule grant_rule = DmcaGrantRule::kBreakOnBandwidth;
  uint64_t node_budget = 100000000;

  double sinr_min_linear() const;
  NetworkLimits limits(int n_d) const;
  SolverOptions solver_options() const;
  void validate() const;
};

/// Strict parse: unknown keys anywhere in the document are an error.
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace nfpassoc

#endif  // NFPASSOC_CONFIG_HPP_
