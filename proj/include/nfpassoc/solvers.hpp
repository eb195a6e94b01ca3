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

#ifndef NFPASSOC_SOLVERS_HPP_
#define NFPASSOC_SOLVERS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nfpassoc/instance.hpp"

namespace nfpassoc {

/// Link cost used by both greedy solvers: w_b * bandwidth + w_r * rate, raw
/// SI magnitudes, lower is better. Ties everywhere break towards the lowest
/// SC index, then the lowest NFP index.
struct ScoreWeights {
  double bandwidth = 1.0;
  double rate = 1.0;
};

double score(const LinkMetrics& metrics, int sc, int nfp,
             const ScoreWeights& weights);

/// Distributed solver's backhaul-overshoot repair (step 4).
enum class DmcaOvershootRule {
  kMaxScore,  // repeatedly drop the costliest associated pair
  kMaxRate,   // drop the largest rate that keeps the backhaul saturated
};

/// Distributed solver's grant scan (step 2) when a request does not fit the
/// NFP's bandwidth budget.
enum class DmcaGrantRule {
  kBreakOnBandwidth,  // stop granting at the first miss
  kSkipOnBandwidth,   // pass over the miss, keep scanning
};

struct SolverOptions {
  ScoreWeights weights;
  DmcaOvershootRule overshoot_rule = DmcaOvershootRule::kMaxScore;
  DmcaGrantRule grant_rule = DmcaGrantRule::kBreakOnBandwidth;
  // When set, counters are re-derived from the association matrix after every
  // mutation and mismatches throw. Costs a full matrix scan per step; meant
  // for tests, not timing runs.
  bool audit = false;
};

/// Running resource totals maintained incrementally by the solvers.
struct SolverCounters {
  double rate_used_bps = 0.0;
  std::vector<double> bandwidth_used_hz;
  std::vector<int> links_used;
};

/// Ground-truth counters recomputed from scratch.
SolverCounters recompute_counters(const AssociationInstance& instance,
                                  const AssociationMatrix& m);

/// Centralised greedy: walks all eligible links in ascending score order;
/// terminates when the next candidate would overrun the shared backhaul,
/// discards all of an NFP's links when that NFP cannot host the candidate.
AssociationMatrix solve_cmca(const AssociationInstance& instance,
                             const SolverOptions& options = {});

/// Distributed greedy: SCs request their cheapest NFP, NFPs grant requests in
/// ascending score within their budgets, a top-up pass fills leftover
/// backhaul, an overshoot pass sheds load if the grants exceeded it.
AssociationMatrix solve_dmca(const AssociationInstance& instance,
                             const SolverOptions& options = {});

struct ExactResult {
  AssociationMatrix assignment;
  bool optimal_proven = false;
  uint64_t nodes_explored = 0;
};

/// Depth-first branch and bound over SCs in index order; children are the
/// feasible NFP assignments followed by "leave unassociated". Guaranteed
/// optimal when optimal_proven; otherwise the node budget ran out and the
/// result is the best feasible assignment found.
ExactResult solve_exact(const AssociationInstance& instance,
                        uint64_t node_budget = 100000000);

/// Dispatch by solver name ("cmca", "dmca", "exact").
AssociationMatrix solve_by_name(const std::string& name,
                                const AssociationInstance& instance,
                                const SolverOptions& options = {},
                                uint64_t node_budget = 100000000);

}  // namespace nfpassoc

#endif  // NFPASSOC_SOLVERS_HPP_
