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

#ifndef NFPASSOC_CHANNEL_HPP_
#define NFPASSOC_CHANNEL_HPP_

#include <cstdint>
#include <vector>

#include "nfpassoc/types.hpp"

namespace nfpassoc {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Air-to-ground channel parameters. Defaults are the dense-urban setting at
/// 2 GHz used throughout the experiments.
struct EnvironmentParams {
  double alpha = 9.61;            // S-curve steepness of the LoS probability
  double beta = 0.16;             // S-curve midpoint shift, per degree
  double eta_los_db = 1.0;        // excess loss on a line-of-sight link
  double eta_nlos_db = 20.0;      // excess loss on a non-line-of-sight link
  double carrier_hz = 2.0e9;
  double path_loss_exponent = 2.0;
  double tx_power_w = 5.0;        // link transmit power
  double noise_floor_w = 1.0e-13;

  void validate() const;
};

/// Probability that the ground-to-air link at the given elevation angle
/// (degrees above the horizon) is line-of-sight. Strictly increasing in the
/// angle, strictly inside (0, 1).
double los_probability(double elevation_deg, const EnvironmentParams& env);

/// Mean path loss in dB between a ground node and a platform at altitude
/// height_m whose ground projection is horizontal_m away. Combines the
/// distance-power law with the LoS/NLoS excess losses weighted by
/// los_probability. Throws std::domain_error when both distances are zero.
double path_loss_db(double horizontal_m, double height_m,
                    const EnvironmentParams& env);

/// Inverse of path_loss_db in its horizontal argument at fixed altitude:
/// returns the horizontal distance at which the path loss reaches target_db,
/// accurate to 1e-3 m. Returns 0 when even the nadir link exceeds target_db.
double invert_path_loss(double target_db, double height_m,
                        const EnvironmentParams& env);

/// Received power in Watts for a transmit power and a path loss in dB.
double received_power_w(double tx_power_w, double path_loss_db);

/// SINR of the (sc, nfp) link: received power on the link over the received
/// power from every other NFP plus the noise floor, all in linear Watts.
double sinr_linear(const Grid<double>& rx_power_w, int sc, int nfp,
                   double noise_floor_w);

/// Per-link derived quantities for one scenario. Everything is linear or SI;
/// dB never appears past this boundary.
struct LinkMetrics {
  int n_sc = 0;
  int n_d = 0;
  std::vector<double> demand_bps;  // requested rate of each SC
  Grid<double> sinr;               // linear
  Grid<double> spectral_eff;       // bit/s/Hz, log2(1 + SINR)
  Grid<double> bandwidth_hz;       // demand / spectral_eff; +inf when eff == 0
  Grid<uint8_t> eligible;          // SINR above threshold and bandwidth finite
};

/// Full physical pipeline: geometry -> path loss -> received power -> SINR ->
/// spectral efficiency and per-link bandwidth demand.
LinkMetrics compute_link_metrics(const std::vector<Position3D>& sc_positions,
                                 const std::vector<Position3D>& nfp_positions,
                                 const std::vector<double>& demand_bps,
                                 const EnvironmentParams& env, double sinr_min);

/// Builds metrics from an externally supplied SINR matrix (synthetic
/// instances, regression fixtures). Keeps the bandwidth/efficiency/demand
/// coupling identical to compute_link_metrics.
LinkMetrics metrics_from_sinr(const Grid<double>& sinr,
                              const std::vector<double>& demand_bps,
                              double sinr_min);

}  // namespace nfpassoc

#endif  // NFPASSOC_CHANNEL_HPP_
