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

#ifndef NFPASSOC_SCENARIO_HPP_
#define NFPASSOC_SCENARIO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfpassoc/channel.hpp"
#include "nfpassoc/rng.hpp"
#include "nfpassoc/types.hpp"

namespace nfpassoc {

/// Raised when the hard-core sampler exhausts its attempt budget.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  double area_side_m = 4000.0;   // square deployment region
  int n_sc = 30;
  int n_nfp = 3;
  double density_per_m2 = 5.0e-6;  // parent Poisson intensity
  double sc_min_sep_m = 300.0;     // hard-core distance between SCs
  double nfp_height_m = 300.0;
  double pl_max_db = 115.0;        // coverage edge; sets the NFP separation
  std::vector<double> rate_choices_bps = {30.0e6, 60.0e6, 90.0e6, 120.0e6,
                                          150.0e6};
  uint64_t seed = 1;
  int max_attempts = 10000;        // whole-realization rejection budget

  void validate() const;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<Position3D> sc_positions;   // z == 0
  std::vector<Position3D> nfp_positions;  // z == nfp_height_m
  std::vector<double> demand_bps;         // one requested rate per SC
  double nfp_min_sep_m = 0.0;             // derived from pl_max_db
};

/// Matern type-I thinning: every point that has a neighbour closer than
/// min_sep_m is removed, both members of each close pair.
std::vector<Position3D> matern_type1_thin(const std::vector<Position3D>& points,
                                          double min_sep_m);

/// Draws a Matern type-I hard-core pattern with exactly n_target points in
/// the square [0, area_side]^2: parent Poisson realizations are thinned and
/// rejected wholesale until one keeps at least n_target survivors, from which
/// a uniform random subset is returned. Throws GenerationError after
/// max_attempts rejections.
std::vector<Position3D> sample_hardcore(Rng& rng, double area_side_m,
                                        double density_per_m2, double min_sep_m,
                                        int n_target, int max_attempts);

/// Generates both node layers and the per-SC rate draws. The NFP layer's
/// hard-core distance is the pl_max_db coverage radius; its parent intensity
/// is capped at the retention-maximising value 1/(pi * min_sep^2), without
/// which no realization at urban SC densities would ever keep multiple NFPs.
/// Deterministic in config.seed via named substreams.
Scenario build_scenario(const ScenarioConfig& config,
                        const EnvironmentParams& env);

/// JSON round-trip of a generated scenario (file is self-describing via a
/// top-level "type": "scenario").
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace nfpassoc

#endif  // NFPASSOC_SCENARIO_HPP_
