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

#include "nfpassoc/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nfpassoc {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("EnvironmentParams: " + what);
}

}  // namespace

void EnvironmentParams::validate() const {
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  require(std::isfinite(eta_los_db), "eta_los_db must be finite");
  require(std::isfinite(eta_nlos_db), "eta_nlos_db must be finite");
  require(eta_los_db <= eta_nlos_db,
          "eta_los_db must not exceed eta_nlos_db");
  require(carrier_hz > 0.0, "carrier_hz must be positive");
  require(path_loss_exponent > 0.0, "path_loss_exponent must be positive");
  require(tx_power_w > 0.0, "tx_power_w must be positive");
  require(noise_floor_w > 0.0, "noise_floor_w must be positive");
}

double los_probability(double elevation_deg, const EnvironmentParams& env) {
  // Logistic in the elevation angle; alpha doubles as the midpoint.
  const double z = -env.beta * (elevation_deg - env.alpha);
  return 1.0 / (1.0 + env.alpha * std::exp(z));
}

double path_loss_db(double horizontal_m, double height_m,
                    const EnvironmentParams& env) {
  if (horizontal_m < 0.0 || height_m < 0.0) {
    throw std::domain_error("path_loss_db: distances must be non-negative");
  }
  const double d = std::hypot(horizontal_m, height_m);
  if (d <= 0.0) {
    throw std::domain_error("path_loss_db: link distance must be positive");
  }
  const double elevation_deg =
      std::atan2(height_m, horizontal_m) * 180.0 / std::numbers::pi;
  const double p_los = los_probability(elevation_deg, env);
  const double fspl_db =
      10.0 * env.path_loss_exponent *
      std::log10(4.0 * std::numbers::pi * env.carrier_hz * d / kSpeedOfLight);
  return fspl_db + p_los * env.eta_los_db + (1.0 - p_los) * env.eta_nlos_db;
}

double invert_path_loss(double target_db, double height_m,
                        const EnvironmentParams& env) {
  if (!(height_m > 0.0)) {
    throw std::domain_error("invert_path_loss: height must be positive");
  }
  if (path_loss_db(0.0, height_m, env) >= target_db) return 0.0;
  // Path loss is strictly increasing in the horizontal distance at fixed
  // altitude (distance term grows, elevation falls), so bisection applies.
  double lo = 0.0;
  double hi = height_m;
  while (path_loss_db(hi, height_m, env) < target_db) {
    hi *= 2.0;
    if (hi > 1.0e12) {
      throw std::domain_error("invert_path_loss: target not reachable");
    }
  }
  while (hi - lo > 1.0e-3) {
    const double mid = 0.5 * (lo + hi);
    if (path_loss_db(mid, height_m, env) < target_db) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double received_power_w(double tx_power_w, double path_loss_db) {
  return tx_power_w * std::pow(10.0, -path_loss_db / 10.0);
}

double sinr_linear(const Grid<double>& rx_power_w, int sc, int nfp,
                   double noise_floor_w) {
  double interference = 0.0;
  for (int j = 0; j < rx_power_w.cols(); ++j) {
    if (j != nfp) interference += rx_power_w(sc, j);
  }
  return rx_power_w(sc, nfp) / (interference + noise_floor_w);
}

namespace {

LinkMetrics derive_from_sinr(const Grid<double>& sinr,
                             const std::vector<double>& demand_bps,
                             double sinr_min) {
  const int n_sc = sinr.rows();
  const int n_d = sinr.cols();
  if (static_cast<int>(demand_bps.size()) != n_sc) {
    throw std::invalid_argument("metrics: demand size does not match SINR rows");
  }
  LinkMetrics m;
  m.n_sc = n_sc;
  m.n_d = n_d;
  m.demand_bps = demand_bps;
  m.sinr = sinr;
  m.spectral_eff = Grid<double>(n_sc, n_d);
  m.bandwidth_hz = Grid<double>(n_sc, n_d);
  m.eligible = Grid<uint8_t>(n_sc, n_d);
  for (int i = 0; i < n_sc; ++i) {
    if (!(demand_bps[i] > 0.0) || !std::isfinite(demand_bps[i])) {
      throw std::invalid_argument("metrics: demands must be positive");
    }
    for (int j = 0; j < n_d; ++j) {
      const double eff = std::log2(1.0 + sinr(i, j));
      m.spectral_eff(i, j) = eff;
      m.bandwidth_hz(i, j) =
          eff > 0.0 ? demand_bps[i] / eff
                    : std::numeric_limits<double>::infinity();
      m.eligible(i, j) =
          sinr(i, j) >= sinr_min && std::isfinite(m.bandwidth_hz(i, j)) ? 1 : 0;
    }
  }
  return m;
}

}  // namespace

LinkMetrics compute_link_metrics(const std::vector<Position3D>& sc_positions,
                                 const std::vector<Position3D>& nfp_positions,
                                 const std::vector<double>& demand_bps,
                                 const EnvironmentParams& env,
                                 double sinr_min) {
  env.validate();
  const int n_sc = static_cast<int>(sc_positions.size());
  const int n_d = static_cast<int>(nfp_positions.size());
  Grid<double> rx(n_sc, n_d);
  for (int i = 0; i < n_sc; ++i) {
    for (int j = 0; j < n_d; ++j) {
      const double s = horizontal_distance(sc_positions[i], nfp_positions[j]);
      const double h = nfp_positions[j].z - sc_positions[i].z;
      rx(i, j) = received_power_w(env.tx_power_w, path_loss_db(s, h, env));
    }
  }
  Grid<double> sinr(n_sc, n_d);
  for (int i = 0; i < n_sc; ++i) {
    for (int j = 0; j < n_d; ++j) {
      sinr(i, j) = sinr_linear(rx, i, j, env.noise_floor_w);
    }
  }
  return derive_from_sinr(sinr, demand_bps, sinr_min);
}

LinkMetrics metrics_from_sinr(const Grid<double>& sinr,
                              const std::vector<double>& demand_bps,
                              double sinr_min) {
  return derive_from_sinr(sinr, demand_bps, sinr_min);
}

}  // namespace nfpassoc
