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

#include "nfpassoc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "config_json.hpp"

namespace nfpassoc {

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kRateRatio:
      return "rate_ratio";
    case SweepKind::kBandwidthRatio:
      return "bandwidth_ratio";
    case SweepKind::kTiming:
      return "timing";
  }
  return "unknown";
}

SweepKind sweep_kind_from_string(const std::string& name) {
  if (name == "rate_ratio") return SweepKind::kRateRatio;
  if (name == "bandwidth_ratio") return SweepKind::kBandwidthRatio;
  if (name == "timing") return SweepKind::kTiming;
  throw std::invalid_argument("unknown sweep kind: " + name);
}

void SweepSpec::validate() const {
  base_config.validate();
  env.validate();
  base_limits.validate(base_config.n_nfp);
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("SweepSpec: " + what);
  };
  if (n_scenarios < 1) fail("n_scenarios must be at least 1");
  if (timing_reps < 1) fail("timing_reps must be at least 1");
  if (node_budget == 0) fail("node_budget must be positive");
  if (solvers.empty()) fail("solvers must not be empty");
  for (const auto& s : solvers) {
    if (s != "cmca" && s != "dmca" && s != "exact") {
      fail("unknown solver id '" + s + "'");
    }
  }
  for (size_t g = 0; g < ratio_grid.size(); ++g) {
    if (!(ratio_grid[g] > 0.0)) fail("ratios must be positive");
    if (g > 0 && !(ratio_grid[g] > ratio_grid[g - 1])) {
      fail("ratio_grid must be strictly increasing");
    }
  }
  if (!(weights.bandwidth >= 0.0) || !(weights.rate >= 0.0)) {
    fail("weights must be non-negative");
  }
}

int max_workers() {
  if (const char* env = std::getenv("NFP_ASSOC_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) {
      return static_cast<int>(parsed);
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

// Runs fn(0..n-1) on up to max_workers() threads. Work items write only to
// their own output slots, so scheduling order cannot leak into results.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(max_workers(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct ScenarioOutcome {
  bool generated = false;
  // pct[grid_index][solver_index], indexed like spec.ratio_grid/spec.solvers.
  std::vector<std::vector<double>> pct;
};

SolverOptions options_of(const SweepSpec& spec) {
  SolverOptions options;
  options.weights = spec.weights;
  options.overshoot_rule = spec.overshoot_rule;
  options.grant_rule = spec.grant_rule;
  return options;
}

// Solves and insists on a feasible association before anything is recorded.
AssociationMatrix solve_checked(const SweepSpec& spec, const std::string& name,
                                const AssociationInstance& instance) {
  AssociationMatrix m =
      solve_by_name(name, instance, options_of(spec), spec.node_budget);
  if (!check_feasibility(instance, m).feasible) {
    throw std::logic_error("sweep: solver '" + name +
                           "' produced an infeasible association");
  }
  return m;
}

double percent_unassociated(const AssociationInstance& instance,
                            const AssociationMatrix& m) {
  if (instance.n_sc() == 0) return 0.0;
  return 100.0 * (instance.n_sc() - objective(m)) / instance.n_sc();
}

// Folds per-scenario percentages into mean/stderr cells and the seed lists,
// always in ascending seed order regardless of how workers were scheduled.
SweepResult aggregate(const SweepSpec& spec,
                      const std::vector<ScenarioOutcome>& outcomes) {
  SweepResult result;
  result.kind = spec.kind;
  for (int k = 0; k < spec.n_scenarios; ++k) {
    const uint64_t seed = spec.base_config.seed + k;
    if (outcomes[k].generated) {
      result.seeds_used.push_back(seed);
    } else {
      result.seeds_failed.push_back(seed);
    }
  }
  // CSV row order is (ratio, solver id); solver ids sort alphabetically.
  std::vector<size_t> solver_order(spec.solvers.size());
  for (size_t s = 0; s < solver_order.size(); ++s) solver_order[s] = s;
  std::sort(solver_order.begin(), solver_order.end(),
            [&](size_t a, size_t b) { return spec.solvers[a] < spec.solvers[b]; });
  for (size_t g = 0; g < spec.ratio_grid.size(); ++g) {
    for (size_t s : solver_order) {
      SweepCell cell;
      cell.ratio = spec.ratio_grid[g];
      cell.solver = spec.solvers[s];
      double sum = 0.0;
      int n = 0;
      for (const auto& outcome : outcomes) {
        if (!outcome.generated) continue;
        sum += outcome.pct[g][s];
        ++n;
      }
      cell.n_scenarios = n;
      cell.mean_pct_unassoc = n > 0 ? sum / n : 0.0;
      if (n > 1) {
        double ss = 0.0;
        for (const auto& outcome : outcomes) {
          if (!outcome.generated) continue;
          const double d = outcome.pct[g][s] - cell.mean_pct_unassoc;
          ss += d * d;
        }
        cell.stderr_pct = std::sqrt(ss / (n - 1)) / std::sqrt(double(n));
      }
      result.cells.push_back(cell);
    }
  }
  return result;
}

void log_failures(const SweepResult& result) {
  for (uint64_t seed : result.seeds_failed) {
    std::cerr << "sweep: scenario seed " << seed
              << ": generation failed, skipped\n";
  }
}

// Strongest eligible NFP of each SC, or -1. Equals the nearest NFP under the
// geometric channel (path loss is monotone in distance).
int strongest_eligible_nfp(const LinkMetrics& metrics, int sc) {
  int best = -1;
  double best_sinr = -1.0;
  for (int j = 0; j < metrics.n_d; ++j) {
    if (metrics.eligible(sc, j) && metrics.sinr(sc, j) > best_sinr) {
      best_sinr = metrics.sinr(sc, j);
      best = j;
    }
  }
  return best;
}

template <typename LimitsForRatio>
SweepResult run_ratio_sweep(const SweepSpec& spec, LimitsForRatio&& limits_at) {
  std::vector<ScenarioOutcome> outcomes(spec.n_scenarios);
  parallel_for(spec.n_scenarios, [&](int k) {
    ScenarioConfig config = spec.base_config;
    config.seed = spec.base_config.seed + k;
    Scenario scenario;
    try {
      scenario = build_scenario(config, spec.env);
    } catch (const GenerationError&) {
      return;  // recorded as a failed seed in aggregate()
    }
    AssociationInstance instance =
        make_instance(scenario, spec.env, spec.base_limits);
    ScenarioOutcome& outcome = outcomes[k];
    outcome.generated = true;
    outcome.pct.assign(spec.ratio_grid.size(),
                       std::vector<double>(spec.solvers.size(), 0.0));
    for (size_t g = 0; g < spec.ratio_grid.size(); ++g) {
      AssociationInstance scaled = instance;
      scaled.limits = limits_at(instance, spec.ratio_grid[g]);
      for (size_t s = 0; s < spec.solvers.size(); ++s) {
        const AssociationMatrix m =
            solve_checked(spec, spec.solvers[s], scaled);
        outcome.pct[g][s] = percent_unassociated(scaled, m);
      }
    }
  });
  SweepResult result = aggregate(spec, outcomes);
  log_failures(result);
  return result;
}

}  // namespace

SweepResult run_rate_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.kind != SweepKind::kRateRatio) {
    throw std::invalid_argument("run_rate_sweep: spec kind mismatch");
  }
  return run_ratio_sweep(
      spec, [&spec](const AssociationInstance& instance, double ratio) {
        double sum_rate = 0.0;
        for (double r : instance.metrics.demand_bps) sum_rate += r;
        NetworkLimits limits = spec.base_limits;
        limits.backhaul_rate_bps = ratio * sum_rate;
        return limits;
      });
}

SweepResult run_bandwidth_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.kind != SweepKind::kBandwidthRatio) {
    throw std::invalid_argument("run_bandwidth_sweep: spec kind mismatch");
  }
  return run_ratio_sweep(
      spec, [&spec](const AssociationInstance& instance, double ratio) {
        // Reference bandwidth: the most loaded NFP when every SC is
        // attributed to its strongest eligible NFP.
        std::vector<double> load(instance.n_d(), 0.0);
        for (int i = 0; i < instance.n_sc(); ++i) {
          const int j = strongest_eligible_nfp(instance.metrics, i);
          if (j >= 0) load[j] += instance.metrics.bandwidth_hz(i, j);
        }
        const double reference =
            load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
        NetworkLimits limits = spec.base_limits;
        limits.nfp_bandwidth_hz.assign(instance.n_d(), ratio * reference);
        return limits;
      });
}

SweepResult run_timing(const SweepSpec& spec) {
  spec.validate();
  if (spec.kind != SweepKind::kTiming) {
    throw std::invalid_argument("run_timing: spec kind mismatch");
  }
  SweepResult result;
  result.kind = SweepKind::kTiming;
  for (int k = 0; k < spec.n_scenarios; ++k) {
    ScenarioConfig config = spec.base_config;
    config.seed = spec.base_config.seed + k;
    Scenario scenario;
    try {
      scenario = build_scenario(config, spec.env);
    } catch (const GenerationError&) {
      result.seeds_failed.push_back(config.seed);
      continue;
    }
    result.seeds_used.push_back(config.seed);
    const AssociationInstance instance =
        make_instance(scenario, spec.env, spec.base_limits);
    for (const std::string& name : spec.solvers) {
      // Untimed warm-up doubles as the feasibility check for this pairing.
      solve_checked(spec, name, instance);
      std::vector<double> samples;
      samples.reserve(spec.timing_reps);
      for (int rep = 0; rep < spec.timing_reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        AssociationMatrix m =
            solve_by_name(name, instance, options_of(spec), spec.node_budget);
        const auto t1 = std::chrono::steady_clock::now();
        (void)m;
        samples.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      std::sort(samples.begin(), samples.end());
      const size_t mid = samples.size() / 2;
      const double median =
          samples.size() % 2 == 1
              ? samples[mid]
              : 0.5 * (samples[mid - 1] + samples[mid]);
      result.timing.push_back({name, config.seed, median, spec.timing_reps});
    }
  }
  log_failures(result);
  return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
  switch (spec.kind) {
    case SweepKind::kRateRatio:
      return run_rate_sweep(spec);
    case SweepKind::kBandwidthRatio:
      return run_bandwidth_sweep(spec);
    case SweepKind::kTiming:
      return run_timing(spec);
  }
  throw std::invalid_argument("run_sweep: bad kind");
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  char buf[128];
  if (result.kind == SweepKind::kTiming) {
    out << "solver,scenario_seed,median_ms,reps\n";
    for (const TimingRow& row : result.timing) {
      std::snprintf(buf, sizeof(buf), "%.6f", row.median_ms);
      out << row.solver << ',' << row.scenario_seed << ',' << buf << ','
          << row.reps << '\n';
    }
    return out.str();
  }
  out << "kind,ratio,solver,mean_pct_unassoc,stderr,n_scenarios\n";
  for (const SweepCell& cell : result.cells) {
    char ratio_buf[64];
    std::snprintf(ratio_buf, sizeof(ratio_buf), "%.6g", cell.ratio);
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", cell.mean_pct_unassoc,
                  cell.stderr_pct);
    out << to_string(result.kind) << ',' << ratio_buf << ',' << cell.solver
        << ',' << buf << ',' << cell.n_scenarios << '\n';
  }
  return out.str();
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sweep_csv: cannot open " + path);
  out << sweep_csv(result);
  if (!out) throw std::runtime_error("write_sweep_csv: write failed: " + path);
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  detail::check_keys(j,
                     {"type", "kind", "ratio_grid", "n_scenarios",
                      "master_seed", "solvers", "weights", "timing_reps",
                      "node_budget", "variant", "grant_rule", "scenario",
                      "env", "limits"},
                     "sweep spec");
  if (j.value("type", "") != "sweep") {
    throw std::invalid_argument("sweep spec: missing \"type\": \"sweep\"");
  }
  SweepSpec spec;
  spec.kind = sweep_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("ratio_grid")) {
    spec.ratio_grid = j.at("ratio_grid").get<std::vector<double>>();
  }
  if (j.contains("n_scenarios")) spec.n_scenarios = j.at("n_scenarios").get<int>();
  if (j.contains("master_seed")) {
    spec.base_config.seed = j.at("master_seed").get<uint64_t>();
  }
  if (j.contains("solvers")) {
    spec.solvers = j.at("solvers").get<std::vector<std::string>>();
  }
  if (j.contains("weights")) {
    detail::apply_weights_json(j.at("weights"), spec.weights);
  }
  if (j.contains("timing_reps")) spec.timing_reps = j.at("timing_reps").get<int>();
  if (j.contains("node_budget")) {
    spec.node_budget = j.at("node_budget").get<uint64_t>();
  }
  if (j.contains("variant")) {
    spec.overshoot_rule =
        detail::overshoot_rule_from_string(j.at("variant").get<std::string>());
  }
  if (j.contains("grant_rule")) {
    spec.grant_rule =
        detail::grant_rule_from_string(j.at("grant_rule").get<std::string>());
  }
  if (j.contains("env")) detail::apply_env_json(j.at("env"), spec.env);
  if (j.contains("scenario")) {
    detail::apply_scenario_json(j.at("scenario"), spec.base_config,
                                /*allow_seed=*/false);
  }
  detail::UniformLimits limits;
  if (j.contains("limits")) detail::apply_limits_json(j.at("limits"), limits);
  spec.base_limits = limits.to_network_limits(spec.base_config.n_nfp);
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sweep_spec: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sweep_spec_from_json(buf.str());
}

}  // namespace nfpassoc
