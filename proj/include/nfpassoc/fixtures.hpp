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

#ifndef NFPASSOC_FIXTURES_HPP_
#define NFPASSOC_FIXTURES_HPP_

#include "nfpassoc/channel.hpp"
#include "nfpassoc/instance.hpp"

namespace nfpassoc {

/// Bundled 30-SC / 3-NFP demo instance. Requested rates sum to 3.18 Gbps
/// against a 2.9 Gbps backhaul, so at least two SCs must stay unserved;
/// three SCs sit at the coverage edge (SINR barely above the default
/// threshold) and carry disproportionate bandwidth cost. The exact solver
/// serves 28 SCs, both greedy heuristics serve 27, under ample per-NFP
/// budgets as well as the default limits.
LinkMetrics demo_metrics();

/// The demo instance wrapped with the default network limits.
AssociationInstance demo_instance();

}  // namespace nfpassoc

#endif  // NFPASSOC_FIXTURES_HPP_
