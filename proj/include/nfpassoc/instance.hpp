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

#ifndef NFPASSOC_INSTANCE_HPP_
#define NFPASSOC_INSTANCE_HPP_

#include <string>
#include <vector>

#include "nfpassoc/channel.hpp"
#include "nfpassoc/scenario.hpp"
#include "nfpassoc/types.hpp"

namespace nfpassoc {

/// Side constraints of the association problem.
struct NetworkLimits {
  double backhaul_rate_bps = 2.9e9;        // shared across all NFPs
  std::vector<double> nfp_bandwidth_hz;    // per NFP
  std::vector<int> nfp_max_links;          // per NFP
  double sinr_min = 0.31622776601683794;   // linear, == -5 dB

  /// Identical bandwidth and link caps on every NFP.
  static NetworkLimits uniform(int n_d, double backhaul_rate_bps = 2.9e9,
                               double bandwidth_hz = 1.0e9, int max_links = 16,
                               double sinr_min = 0.31622776601683794);

  void validate(int n_d) const;
};

struct AssociationInstance {
  LinkMetrics metrics;
  NetworkLimits limits;

  int n_sc() const { return metrics.n_sc; }
  int n_d() const { return metrics.n_d; }
  void validate() const;
};

/// Binary decision matrix A, a(i, j) == 1 iff SC i is served by NFP j.
struct AssociationMatrix {
  Grid<uint8_t> a;

  AssociationMatrix() = default;
  AssociationMatrix(int n_sc, int n_d) : a(n_sc, n_d, 0) {}
  int n_sc() const { return a.rows(); }
  int n_d() const { return a.cols(); }
  /// Serving NFP of an SC, or -1 when unassociated.
  int serving_nfp(int sc) const;
};

/// Number of associated SCs, the quantity every solver maximises.
int objective(const AssociationMatrix& m);

enum class ConstraintKind {
  kBackhaulRate,       // sum of admitted rates within the shared backhaul
  kBandwidth,          // per-NFP bandwidth budget
  kSinr,               // associated links meet the SINR threshold
  kMaxLinks,           // per-NFP link count cap
  kSingleAssociation,  // each SC served at most once
};

struct Violation {
  ConstraintKind kind;
  int sc;    // -1 when the constraint is not per-SC
  int nfp;   // -1 when the constraint is not per-NFP
  double lhs;
  double limit;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
  double rate_used_bps = 0.0;
  std::vector<double> bandwidth_used_hz;
  std::vector<int> links_used;
};

/// Checks every constraint of the association problem. Continuous budgets get
/// a 1e-6 relative tolerance so that solver-side running sums and the
/// re-accumulated totals here never disagree over rounding.
FeasibilityReport check_feasibility(const AssociationInstance& instance,
                                    const AssociationMatrix& m);

std::string to_string(ConstraintKind kind);

/// Wires a generated scenario into a solvable instance.
AssociationInstance make_instance(const Scenario& scenario,
                                  const EnvironmentParams& env,
                                  const NetworkLimits& limits);

/// Association matrix as CSV: one row per SC, one 0/1 column per NFP, no
/// header. A zero-SC instance writes an empty body.
std::string association_to_csv(const AssociationMatrix& m);

/// Synthetic-instance JSON (top-level "type": "instance"): a demand vector
/// and a SINR matrix, from which the remaining metrics are derived on load.
std::string instance_to_json(const std::vector<double>& demand_bps,
                             const Grid<double>& sinr);
LinkMetrics instance_from_json(const std::string& text, double sinr_min);

}  // namespace nfpassoc

#endif  // NFPASSOC_INSTANCE_HPP_
