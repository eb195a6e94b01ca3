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

#include "nfpassoc/fixtures.hpp"

#include <vector>

namespace nfpassoc {

LinkMetrics demo_metrics() {
  const int n_sc = 30;
  const int n_d = 3;
  std::vector<double> demands(n_sc);
  for (int i = 0; i < n_sc; ++i) {
    if (i < 2) {
      demands[i] = 30.0e6;
    } else if (i < 6) {
      demands[i] = 60.0e6;
    } else if (i < 14) {
      demands[i] = 90.0e6;
    } else if (i < 22) {
      demands[i] = 120.0e6;
    } else {
      demands[i] = 150.0e6;
    }
  }
  // SCs 20, 21 (120 Mbps) and 29 (150 Mbps) sit at the coverage edge: barely
  // eligible towards every NFP, hence the largest bandwidth demands and the
  // worst greedy scores in the instance.
  const bool edge[n_sc] = {false, false, false, false, false, false,
                           false, false, false, false, false, false,
                           false, false, false, false, false, false,
                           false, false, true,  true,  false, false,
                           false, false, false, false, false, true};
  Grid<double> sinr(n_sc, n_d);
  for (int i = 0; i < n_sc; ++i) {
    for (int j = 0; j < n_d; ++j) {
      if (edge[i]) {
        sinr(i, j) = 0.32;
      } else {
        sinr(i, j) = (j == i % 3) ? 10.0 : 1.0;
      }
    }
  }
  NetworkLimits defaults;
  return metrics_from_sinr(sinr, demands, defaults.sinr_min);
}

AssociationInstance demo_instance() {
  AssociationInstance instance;
  instance.metrics = demo_metrics();
  instance.limits = NetworkLimits::uniform(instance.metrics.n_d);
  instance.validate();
  return instance;
}

}  // namespace nfpassoc
