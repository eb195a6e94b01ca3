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

#include "nfpassoc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace nfpassoc {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("ScenarioConfig: " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(area_side_m > 0.0, "area_side_m must be positive");
  require(n_sc >= 0, "n_sc must be non-negative");
  require(n_nfp >= 1, "n_nfp must be at least 1");
  require(density_per_m2 > 0.0, "density_per_m2 must be positive");
  require(sc_min_sep_m >= 0.0, "sc_min_sep_m must be non-negative");
  require(nfp_height_m > 0.0, "nfp_height_m must be positive");
  require(pl_max_db > 0.0, "pl_max_db must be positive");
  require(!rate_choices_bps.empty(), "rate_choices_bps must not be empty");
  for (double r : rate_choices_bps) {
    require(r > 0.0 && std::isfinite(r), "rate choices must be positive");
  }
  require(max_attempts > 0, "max_attempts must be positive");
}

std::vector<Position3D> matern_type1_thin(const std::vector<Position3D>& points,
                                          double min_sep_m) {
  const size_t n = points.size();
  std::vector<char> doomed(n, 0);
  for (size_t a = 0; a + 1 < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (horizontal_distance(points[a], points[b]) < min_sep_m) {
        doomed[a] = 1;
        doomed[b] = 1;
      }
    }
  }
  std::vector<Position3D> survivors;
  for (size_t a = 0; a < n; ++a) {
    if (!doomed[a]) survivors.push_back(points[a]);
  }
  return survivors;
}

std::vector<Position3D> sample_hardcore(Rng& rng, double area_side_m,
                                        double density_per_m2, double min_sep_m,
                                        int n_target, int max_attempts) {
  if (n_target == 0) return {};
  const double mean_parents = density_per_m2 * area_side_m * area_side_m;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int n_parents = rng.poisson(mean_parents);
    std::vector<Position3D> parents(n_parents);
    for (auto& p : parents) {
      p.x = rng.uniform(0.0, area_side_m);
      p.y = rng.uniform(0.0, area_side_m);
    }
    std::vector<Position3D> survivors = matern_type1_thin(parents, min_sep_m);
    if (static_cast<int>(survivors.size()) < n_target) continue;
    // Uniform n_target-subset via partial Fisher-Yates; the selected prefix
    // order depends only on the draws, keeping results seed-stable.
    for (int k = 0; k < n_target; ++k) {
      const uint64_t pick =
          k + rng.uniform_index(static_cast<uint64_t>(survivors.size()) - k);
      std::swap(survivors[k], survivors[pick]);
    }
    survivors.resize(n_target);
    return survivors;
  }
  std::ostringstream msg;
  msg << "sample_hardcore: no realization with " << n_target
      << " survivors after " << max_attempts << " attempts (min_sep_m="
      << min_sep_m << ", density=" << density_per_m2 << ")";
  throw GenerationError(msg.str());
}

Scenario build_scenario(const ScenarioConfig& config,
                        const EnvironmentParams& env) {
  config.validate();
  env.validate();
  Scenario scenario;
  scenario.config = config;
  scenario.nfp_min_sep_m =
      invert_path_loss(config.pl_max_db, config.nfp_height_m, env);

  Rng sc_rng(substream_seed(config.seed, "sc-points"));
  scenario.sc_positions =
      sample_hardcore(sc_rng, config.area_side_m, config.density_per_m2,
                      config.sc_min_sep_m, config.n_sc, config.max_attempts);

  // The configured urban density would thin every NFP realization to nothing
  // at multi-hundred-metre separations: survival scales as
  // exp(-lambda * pi * r^2). Capping the parent intensity at the maximiser of
  // lambda * exp(-lambda * pi * r^2) keeps the expected survivor count at its
  // peak while preserving the type-I law.
  double nfp_density = config.density_per_m2;
  if (scenario.nfp_min_sep_m > 0.0) {
    nfp_density = std::min(
        nfp_density, 1.0 / (std::numbers::pi * scenario.nfp_min_sep_m *
                            scenario.nfp_min_sep_m));
  }
  Rng nfp_rng(substream_seed(config.seed, "nfp-points"));
  scenario.nfp_positions =
      sample_hardcore(nfp_rng, config.area_side_m, nfp_density,
                      scenario.nfp_min_sep_m, config.n_nfp,
                      config.max_attempts);
  for (auto& p : scenario.nfp_positions) p.z = config.nfp_height_m;

  Rng rate_rng(substream_seed(config.seed, "rates"));
  scenario.demand_bps.resize(config.n_sc);
  for (double& r : scenario.demand_bps) {
    r = config.rate_choices_bps[rate_rng.uniform_index(
        config.rate_choices_bps.size())];
  }
  return scenario;
}

namespace {

using nlohmann::json;

json positions_to_json(const std::vector<Position3D>& positions) {
  json arr = json::array();
  for (const auto& p : positions) arr.push_back({p.x, p.y, p.z});
  return arr;
}

std::vector<Position3D> positions_from_json(const json& arr) {
  std::vector<Position3D> out;
  for (const auto& e : arr) {
    out.push_back({e.at(0).get<double>(), e.at(1).get<double>(),
                   e.at(2).get<double>()});
  }
  return out;
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) {
  const ScenarioConfig& c = scenario.config;
  json j;
  j["type"] = "scenario";
  j["config"] = {{"area_side_m", c.area_side_m},
                 {"n_sc", c.n_sc},
                 {"n_nfp", c.n_nfp},
                 {"density_per_m2", c.density_per_m2},
                 {"sc_min_sep_m", c.sc_min_sep_m},
                 {"nfp_height_m", c.nfp_height_m},
                 {"pl_max_db", c.pl_max_db},
                 {"rate_choices_bps", c.rate_choices_bps},
                 {"seed", c.seed},
                 {"max_attempts", c.max_attempts}};
  j["nfp_min_sep_m"] = scenario.nfp_min_sep_m;
  j["sc_positions"] = positions_to_json(scenario.sc_positions);
  j["nfp_positions"] = positions_to_json(scenario.nfp_positions);
  j["demand_bps"] = scenario.demand_bps;
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("type", "") != "scenario") {
    throw std::invalid_argument("scenario_from_json: not a scenario file");
  }
  Scenario s;
  const json& c = j.at("config");
  s.config.area_side_m = c.at("area_side_m").get<double>();
  s.config.n_sc = c.at("n_sc").get<int>();
  s.config.n_nfp = c.at("n_nfp").get<int>();
  s.config.density_per_m2 = c.at("density_per_m2").get<double>();
  s.config.sc_min_sep_m = c.at("sc_min_sep_m").get<double>();
  s.config.nfp_height_m = c.at("nfp_height_m").get<double>();
  s.config.pl_max_db = c.at("pl_max_db").get<double>();
  s.config.rate_choices_bps =
      c.at("rate_choices_bps").get<std::vector<double>>();
  s.config.seed = c.at("seed").get<uint64_t>();
  s.config.max_attempts = c.at("max_attempts").get<int>();
  s.nfp_min_sep_m = j.at("nfp_min_sep_m").get<double>();
  s.sc_positions = positions_from_json(j.at("sc_positions"));
  s.nfp_positions = positions_from_json(j.at("nfp_positions"));
  s.demand_bps = j.at("demand_bps").get<std::vector<double>>();
  if (s.sc_positions.size() != s.demand_bps.size()) {
    throw std::invalid_argument(
        "scenario_from_json: positions and demands disagree");
  }
  return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_scenario: cannot open " + path);
  out << scenario_to_json(scenario) << '\n';
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace nfpassoc
