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

#ifndef NFPASSOC_EXPERIMENTS_HPP_
#define NFPASSOC_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nfpassoc/instance.hpp"
#include "nfpassoc/scenario.hpp"
#include "nfpassoc/solvers.hpp"

namespace nfpassoc {

enum class SweepKind { kRateRatio, kBandwidthRatio, kTiming };

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

/// One batch study: many random scenarios, a grid of budget ratios, a set of
/// solvers. base_config.seed is the master seed; scenario k uses seed + k.
struct SweepSpec {
  SweepKind kind = SweepKind::kRateRatio;
  std::vector<double> ratio_grid;
  int n_scenarios = 200;
  ScenarioConfig base_config;
  EnvironmentParams env;
  NetworkLimits base_limits;
  std::vector<std::string> solvers = {"cmca", "dmca", "exact"};
  ScoreWeights weights;
  DmcaOvershootRule overshoot_rule = DmcaOvershootRule::kMaxScore;
  DmcaGrantRule grant_rule = DmcaGrantRule::kBreakOnBandwidth;
  int timing_reps = 15;
  uint64_t node_budget = 100000000;

  void validate() const;
};

/// Aggregate for one (ratio, solver) grid cell.
struct SweepCell {
  double ratio = 0.0;
  std::string solver;
  double mean_pct_unassoc = 0.0;
  double stderr_pct = 0.0;
  int n_scenarios = 0;
};

/// Per (solver, scenario) runtime summary.
struct TimingRow {
  std::string solver;
  uint64_t scenario_seed = 0;
  double median_ms = 0.0;
  int reps = 0;
};

struct SweepResult {
  SweepKind kind = SweepKind::kRateRatio;
  std::vector<SweepCell> cells;        // sorted by (ratio, solver)
  std::vector<TimingRow> timing;       // solvers in spec order, seeds ascending
  std::vector<uint64_t> seeds_used;
  std::vector<uint64_t> seeds_failed;  // generation failures, skipped
};

/// Percentage of unassociated SCs vs the backhaul ratio. Per scenario, the
/// backhaul limit is ratio * (sum of requested rates); bandwidth and link
/// limits come from base_limits unchanged. Every solve is feasibility-checked
/// before its objective is recorded. Scenarios run in parallel (worker count
/// capped by NFP_ASSOC_THREADS); aggregation order is fixed by seed, so
/// results are byte-stable across thread counts.
SweepResult run_rate_sweep(const SweepSpec& spec);

/// Percentage of unassociated SCs vs the bandwidth ratio. Per scenario, the
/// per-NFP bandwidth limit is ratio * reference, where the reference is the
/// largest per-NFP sum of bandwidth demands with every SC attributed to its
/// strongest eligible NFP. That attribution needs no association to exist
/// and coincides with nearest-NFP attribution under the geometric channel.
SweepResult run_bandwidth_sweep(const SweepSpec& spec);

/// Solver wall-clock comparison. Times solve calls only (instance
/// construction excluded), timing_reps repetitions per (solver, scenario),
/// records the median. Strictly sequential to avoid contention skew.
SweepResult run_timing(const SweepSpec& spec);

/// Dispatch on spec.kind.
SweepResult run_sweep(const SweepSpec& spec);

/// CSV with header kind,ratio,solver,mean_pct_unassoc,stderr,n_scenarios
/// (timing kind: solver,scenario_seed,median_ms,reps). Deterministic row
/// order; an empty grid yields a header-only file.
std::string sweep_csv(const SweepResult& result);
void write_sweep_csv(const SweepResult& result, const std::string& path);

/// JSON sweep-spec file (top-level "type": "sweep"); unknown keys rejected.
SweepSpec sweep_spec_from_json(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

/// Worker cap honoured by all parallel sections: NFP_ASSOC_THREADS when set
/// (minimum 1), hardware concurrency otherwise.
int max_workers();

}  // namespace nfpassoc

#endif  // NFPASSOC_EXPERIMENTS_HPP_
