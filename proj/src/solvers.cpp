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

#include "nfpassoc/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace nfpassoc {

double score(const LinkMetrics& metrics, int sc, int nfp,
             const ScoreWeights& weights) {
  return weights.bandwidth * metrics.bandwidth_hz(sc, nfp) +
         weights.rate * metrics.demand_bps[sc];
}

SolverCounters recompute_counters(const AssociationInstance& instance,
                                  const AssociationMatrix& m) {
  SolverCounters c;
  c.bandwidth_used_hz.assign(instance.n_d(), 0.0);
  c.links_used.assign(instance.n_d(), 0);
  for (int i = 0; i < instance.n_sc(); ++i) {
    for (int j = 0; j < instance.n_d(); ++j) {
      if (!m.a(i, j)) continue;
      c.rate_used_bps += instance.metrics.demand_bps[i];
      c.bandwidth_used_hz[j] += instance.metrics.bandwidth_hz(i, j);
      c.links_used[j] += 1;
    }
  }
  return c;
}

namespace {

// Cancellation residue in an incrementally maintained sum scales with the
// values that passed through it, not the final value, so the comparison also
// admits drift negligible against the budget the counter is checked against.
bool close(double a, double b, double scale) {
  return std::abs(a - b) <=
         1e-9 * std::max({1.0, std::abs(a), std::abs(b), scale});
}

// Association matrix plus incrementally maintained counters. The greedy
// solvers only touch the matrix through this, so the optional audit sees
// every intermediate state.
class GreedyState {
 public:
  GreedyState(const AssociationInstance& instance, const SolverOptions& options)
      : instance_(instance), options_(options),
        m_(instance.n_sc(), instance.n_d()) {
    counters_.bandwidth_used_hz.assign(instance.n_d(), 0.0);
    counters_.links_used.assign(instance.n_d(), 0);
  }

  void associate(int i, int j) {
    m_.a(i, j) = 1;
    counters_.rate_used_bps += instance_.metrics.demand_bps[i];
    counters_.bandwidth_used_hz[j] += instance_.metrics.bandwidth_hz(i, j);
    counters_.links_used[j] += 1;
    audit();
  }

  void dissociate(int i, int j) {
    m_.a(i, j) = 0;
    counters_.rate_used_bps -= instance_.metrics.demand_bps[i];
    counters_.bandwidth_used_hz[j] -= instance_.metrics.bandwidth_hz(i, j);
    counters_.links_used[j] -= 1;
    audit();
  }

  const SolverCounters& counters() const { return counters_; }
  AssociationMatrix take() { return std::move(m_); }
  const AssociationMatrix& matrix() const { return m_; }

 private:
  void audit() const {
    if (!options_.audit) return;
    const SolverCounters fresh = recompute_counters(instance_, m_);
    bool ok = close(fresh.rate_used_bps, counters_.rate_used_bps,
                    instance_.limits.backhaul_rate_bps) &&
              fresh.links_used == counters_.links_used;
    for (int j = 0; ok && j < instance_.n_d(); ++j) {
      ok = close(fresh.bandwidth_used_hz[j], counters_.bandwidth_used_hz[j],
                 instance_.limits.nfp_bandwidth_hz[j]);
    }
    if (!ok) {
      throw std::logic_error("solver audit: counters drifted from the matrix");
    }
  }

  const AssociationInstance& instance_;
  const SolverOptions& options_;
  AssociationMatrix m_;
  SolverCounters counters_;
};

}  // namespace

AssociationMatrix solve_cmca(const AssociationInstance& instance,
                             const SolverOptions& options) {
  instance.validate();
  const LinkMetrics& mt = instance.metrics;
  const NetworkLimits& lim = instance.limits;

  struct Link {
    double s;
    int i;
    int j;
  };
  std::vector<Link> links;
  links.reserve(static_cast<size_t>(instance.n_sc()) * instance.n_d());
  for (int i = 0; i < instance.n_sc(); ++i) {
    for (int j = 0; j < instance.n_d(); ++j) {
      if (mt.eligible(i, j)) {
        links.push_back({score(mt, i, j, options.weights), i, j});
      }
    }
  }
  // One ascending sort replaces the repeated min-scan of the candidate list;
  // scores never change, so traversal order is identical.
  std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
    return std::tie(a.s, a.i, a.j) < std::tie(b.s, b.i, b.j);
  });

  GreedyState state(instance, options);
  std::vector<char> sc_done(instance.n_sc(), 0);
  std::vector<char> nfp_closed(instance.n_d(), 0);
  for (const Link& l : links) {
    if (sc_done[l.i] || nfp_closed[l.j]) continue;
    if (state.counters().rate_used_bps + mt.demand_bps[l.i] >
        lim.backhaul_rate_bps) {
      // Even the cheapest remaining pair overruns the shared backhaul.
      break;
    }
    const bool fits =
        state.counters().bandwidth_used_hz[l.j] + mt.bandwidth_hz(l.i, l.j) <=
            lim.nfp_bandwidth_hz[l.j] &&
        state.counters().links_used[l.j] + 1 <= lim.nfp_max_links[l.j];
    if (fits) {
      state.associate(l.i, l.j);
      sc_done[l.i] = 1;
    } else {
      nfp_closed[l.j] = 1;
    }
  }
  return state.take();
}

AssociationMatrix solve_dmca(const AssociationInstance& instance,
                             const SolverOptions& options) {
  instance.validate();
  const LinkMetrics& mt = instance.metrics;
  const NetworkLimits& lim = instance.limits;
  const int n_sc = instance.n_sc();
  const int n_d = instance.n_d();
  GreedyState state(instance, options);
  std::vector<int> serving(n_sc, -1);

  // Step 1: every SC requests its cheapest eligible NFP. The batched request
  // list sorted by (nfp, score, sc) is each NFP's grant queue back to back.
  struct Request {
    int j;
    double s;
    int i;
  };
  std::vector<Request> requests;
  requests.reserve(n_sc);
  for (int i = 0; i < n_sc; ++i) {
    int best_j = -1;
    double best_s = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_d; ++j) {
      if (!mt.eligible(i, j)) continue;
      const double s = score(mt, i, j, options.weights);
      if (s < best_s) {
        best_s = s;
        best_j = j;
      }
    }
    if (best_j >= 0) requests.push_back({best_j, best_s, i});
  }
  std::sort(requests.begin(), requests.end(),
            [](const Request& a, const Request& b) {
              return std::tie(a.j, a.s, a.i) < std::tie(b.j, b.s, b.i);
            });

  // Step 2: each NFP grants its requests in ascending score within its own
  // bandwidth and link budgets. The shared backhaul is not visible here.
  std::vector<char> granting_closed(n_d, 0);
  for (const Request& rq : requests) {
    if (granting_closed[rq.j]) continue;
    if (state.counters().links_used[rq.j] >= lim.nfp_max_links[rq.j]) {
      granting_closed[rq.j] = 1;
      continue;
    }
    if (state.counters().bandwidth_used_hz[rq.j] +
            mt.bandwidth_hz(rq.i, rq.j) >
        lim.nfp_bandwidth_hz[rq.j]) {
      if (options.grant_rule == DmcaGrantRule::kBreakOnBandwidth) {
        granting_closed[rq.j] = 1;
      }
      continue;
    }
    state.associate(rq.i, rq.j);
    serving[rq.i] = rq.j;
  }

  // Step 3: leftover backhaul is filled with the cheapest pair that fits all
  // per-NFP budgets, repeatedly.
  if (state.counters().rate_used_bps < lim.backhaul_rate_bps) {
    for (;;) {
      int best_i = -1;
      int best_j = -1;
      double best_s = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n_sc; ++i) {
        if (serving[i] >= 0) continue;
        if (state.counters().rate_used_bps + mt.demand_bps[i] >
            lim.backhaul_rate_bps) {
          continue;
        }
        for (int j = 0; j < n_d; ++j) {
          if (!mt.eligible(i, j)) continue;
          if (state.counters().links_used[j] >= lim.nfp_max_links[j]) continue;
          if (state.counters().bandwidth_used_hz[j] + mt.bandwidth_hz(i, j) >
              lim.nfp_bandwidth_hz[j]) {
            continue;
          }
          const double s = score(mt, i, j, options.weights);
          if (s < best_s) {
            best_s = s;
            best_i = i;
            best_j = j;
          }
        }
      }
      if (best_i < 0) break;
      state.associate(best_i, best_j);
      serving[best_i] = best_j;
    }
  }

  // Step 4: independent grants may overrun the backhaul; shed load until it
  // fits again.
  while (state.counters().rate_used_bps > lim.backhaul_rate_bps) {
    int drop = -1;
    if (options.overshoot_rule == DmcaOvershootRule::kMaxScore) {
      double worst = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n_sc; ++i) {
        if (serving[i] < 0) continue;
        const double s = score(mt, i, serving[i], options.weights);
        if (s > worst) {
          worst = s;
          drop = i;
        }
      }
    } else {
      // Largest rate whose removal keeps the backhaul saturated; when every
      // removal would undershoot, the smallest rate wastes the least.
      double best_rate = -1.0;
      for (int i = 0; i < n_sc; ++i) {
        if (serving[i] < 0) continue;
        const double r = mt.demand_bps[i];
        if (state.counters().rate_used_bps - r >= lim.backhaul_rate_bps &&
            r > best_rate) {
          best_rate = r;
          drop = i;
        }
      }
      if (drop < 0) {
        double min_rate = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_sc; ++i) {
          if (serving[i] >= 0 && mt.demand_bps[i] < min_rate) {
            min_rate = mt.demand_bps[i];
            drop = i;
          }
        }
      }
    }
    if (drop < 0) {
      throw std::logic_error("dmca: overshoot with no associated SC");
    }
    state.dissociate(drop, serving[drop]);
    serving[drop] = -1;
  }
  return state.take();
}

namespace {

// Branch and bound state. The suffix fit tables turn the completion bound
// into two binary searches per node.
class ExactSearch {
 public:
  ExactSearch(const AssociationInstance& instance, uint64_t node_budget)
      : inst_(instance), mt_(instance.metrics), lim_(instance.limits),
        n_sc_(instance.n_sc()), n_d_(instance.n_d()), budget_(node_budget) {
    choice_.assign(n_sc_, -1);
    bw_used_.assign(n_d_, 0.0);
    links_used_.assign(n_d_, 0);
    build_fit_tables();
  }

  ExactResult run() {
    dfs(0);
    ExactResult result;
    result.nodes_explored = nodes_;
    result.optimal_proven = !truncated_;
    result.assignment = AssociationMatrix(n_sc_, n_d_);
    if (best_count_ >= 0) {
      for (int i = 0; i < n_sc_; ++i) {
        if (best_choice_[i] >= 0) result.assignment.a(i, best_choice_[i]) = 1;
      }
    }
    const FeasibilityReport report =
        check_feasibility(inst_, result.assignment);
    if (!report.feasible) {
      throw std::logic_error("exact: search produced an infeasible matrix");
    }
    return result;
  }

 private:
  // For each depth d, the demands and cheapest per-SC bandwidths of the still
  // undecided SCs that have any eligible link, sorted ascending and
  // prefix-summed. fit_count() then gives how many of those SCs could at
  // most be packed into a remaining scalar budget.
  void build_fit_tables() {
    rate_prefix_.assign(n_sc_ + 1, {0.0});
    bw_prefix_.assign(n_sc_ + 1, {0.0});
    std::vector<double> rates;
    std::vector<double> min_bws;
    for (int d = n_sc_ - 1; d >= 0; --d) {
      double min_bw = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n_d_; ++j) {
        if (mt_.eligible(d, j)) min_bw = std::min(min_bw, mt_.bandwidth_hz(d, j));
      }
      if (std::isfinite(min_bw)) {
        rates.insert(std::upper_bound(rates.begin(), rates.end(),
                                      mt_.demand_bps[d]),
                     mt_.demand_bps[d]);
        min_bws.insert(std::upper_bound(min_bws.begin(), min_bws.end(), min_bw),
                       min_bw);
      }
      rate_prefix_[d] = prefix_sums(rates);
      bw_prefix_[d] = prefix_sums(min_bws);
    }
  }

  static std::vector<double> prefix_sums(const std::vector<double>& sorted) {
    std::vector<double> prefix(sorted.size() + 1, 0.0);
    for (size_t k = 0; k < sorted.size(); ++k) {
      prefix[k + 1] = prefix[k] + sorted[k];
    }
    return prefix;
  }

  static int fit_count(const std::vector<double>& prefix, double slack) {
    return static_cast<int>(std::upper_bound(prefix.begin(), prefix.end(),
                                             slack) -
                            prefix.begin()) -
           1;
  }

  // Admissible completion bound: however the undecided SCs are assigned, each
  // one consumes its own demand from the backhaul slack, at least its
  // cheapest eligible bandwidth from the pooled bandwidth slack, and one link
  // slot somewhere.
  int upper_bound(int depth) const {
    double bw_slack = 0.0;
    int slots = 0;
    for (int j = 0; j < n_d_; ++j) {
      bw_slack += std::max(0.0, lim_.nfp_bandwidth_hz[j] - bw_used_[j]);
      slots += std::max(0, lim_.nfp_max_links[j] - links_used_[j]);
    }
    const int remaining = static_cast<int>(rate_prefix_[depth].size()) - 1;
    int ub = fit_count(rate_prefix_[depth],
                       lim_.backhaul_rate_bps - rate_used_);
    ub = std::min(ub, fit_count(bw_prefix_[depth], bw_slack));
    ub = std::min(ub, std::min(slots, remaining));
    return count_ + ub;
  }

  void dfs(int depth) {
    ++nodes_;
    if (nodes_ >= budget_) truncated_ = true;
    if (depth == n_sc_) {
      if (count_ > best_count_) {
        best_count_ = count_;
        best_choice_ = choice_;
      }
      return;
    }
    if (truncated_) return;
    if (upper_bound(depth) <= best_count_) return;
    for (int j = 0; j < n_d_ && !truncated_; ++j) {
      if (!mt_.eligible(depth, j)) continue;
      if (links_used_[j] + 1 > lim_.nfp_max_links[j]) continue;
      if (bw_used_[j] + mt_.bandwidth_hz(depth, j) > lim_.nfp_bandwidth_hz[j]) {
        continue;
      }
      if (rate_used_ + mt_.demand_bps[depth] > lim_.backhaul_rate_bps) {
        continue;
      }
      choice_[depth] = j;
      rate_used_ += mt_.demand_bps[depth];
      bw_used_[j] += mt_.bandwidth_hz(depth, j);
      links_used_[j] += 1;
      count_ += 1;
      dfs(depth + 1);
      count_ -= 1;
      links_used_[j] -= 1;
      bw_used_[j] -= mt_.bandwidth_hz(depth, j);
      rate_used_ -= mt_.demand_bps[depth];
      choice_[depth] = -1;
    }
    if (!truncated_) dfs(depth + 1);  // leave this SC unassociated
  }

  const AssociationInstance& inst_;
  const LinkMetrics& mt_;
  const NetworkLimits& lim_;
  const int n_sc_;
  const int n_d_;
  const uint64_t budget_;

  std::vector<std::vector<double>> rate_prefix_;
  std::vector<std::vector<double>> bw_prefix_;

  std::vector<int> choice_;
  std::vector<int> best_choice_;
  int best_count_ = -1;
  int count_ = 0;
  double rate_used_ = 0.0;
  std::vector<double> bw_used_;
  std::vector<int> links_used_;
  uint64_t nodes_ = 0;
  bool truncated_ = false;
};

}  // namespace

ExactResult solve_exact(const AssociationInstance& instance,
                        uint64_t node_budget) {
  instance.validate();
  if (node_budget == 0) {
    throw std::invalid_argument("solve_exact: node budget must be positive");
  }
  ExactSearch search(instance, node_budget);
  return search.run();
}

AssociationMatrix solve_by_name(const std::string& name,
                                const AssociationInstance& instance,
                                const SolverOptions& options,
                                uint64_t node_budget) {
  if (name == "cmca") return solve_cmca(instance, options);
  if (name == "dmca") return solve_dmca(instance, options);
  if (name == "exact") return solve_exact(instance, node_budget).assignment;
  throw std::invalid_argument("unknown solver: " + name);
}

}  // namespace nfpassoc
