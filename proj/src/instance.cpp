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

#include "nfpassoc/instance.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nfpassoc {

namespace {
constexpr double kRelTol = 1e-6;
}

NetworkLimits NetworkLimits::uniform(int n_d, double backhaul_rate_bps,
                                     double bandwidth_hz, int max_links,
                                     double sinr_min) {
  NetworkLimits limits;
  limits.backhaul_rate_bps = backhaul_rate_bps;
  limits.nfp_bandwidth_hz.assign(n_d, bandwidth_hz);
  limits.nfp_max_links.assign(n_d, max_links);
  limits.sinr_min = sinr_min;
  return limits;
}

void NetworkLimits::validate(int n_d) const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("NetworkLimits: " + what);
  };
  if (!(backhaul_rate_bps >= 0.0)) fail("backhaul_rate_bps must be >= 0");
  if (static_cast<int>(nfp_bandwidth_hz.size()) != n_d) {
    fail("nfp_bandwidth_hz size must match the NFP count");
  }
  if (static_cast<int>(nfp_max_links.size()) != n_d) {
    fail("nfp_max_links size must match the NFP count");
  }
  for (double b : nfp_bandwidth_hz) {
    if (!(b >= 0.0)) fail("bandwidth limits must be >= 0");
  }
  for (int l : nfp_max_links) {
    if (l < 0) fail("link limits must be >= 0");
  }
  if (!(sinr_min > 0.0)) fail("sinr_min must be positive");
}

void AssociationInstance::validate() const {
  limits.validate(n_d());
  if (static_cast<int>(metrics.demand_bps.size()) != n_sc()) {
    throw std::invalid_argument("AssociationInstance: inconsistent metrics");
  }
}

int AssociationMatrix::serving_nfp(int sc) const {
  for (int j = 0; j < n_d(); ++j) {
    if (a(sc, j)) return j;
  }
  return -1;
}

int objective(const AssociationMatrix& m) {
  int count = 0;
  for (uint8_t v : m.a.data()) count += v;
  return count;
}

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kBackhaulRate:
      return "backhaul_rate";
    case ConstraintKind::kBandwidth:
      return "bandwidth";
    case ConstraintKind::kSinr:
      return "sinr";
    case ConstraintKind::kMaxLinks:
      return "max_links";
    case ConstraintKind::kSingleAssociation:
      return "single_association";
  }
  return "unknown";
}

FeasibilityReport check_feasibility(const AssociationInstance& instance,
                                    const AssociationMatrix& m) {
  const LinkMetrics& metrics = instance.metrics;
  const NetworkLimits& limits = instance.limits;
  if (m.n_sc() != instance.n_sc() || m.n_d() != instance.n_d()) {
    throw std::invalid_argument("check_feasibility: shape mismatch");
  }
  FeasibilityReport report;
  report.bandwidth_used_hz.assign(instance.n_d(), 0.0);
  report.links_used.assign(instance.n_d(), 0);

  auto violate = [&report](ConstraintKind kind, int sc, int nfp, double lhs,
                           double limit) {
    report.feasible = false;
    report.violations.push_back({kind, sc, nfp, lhs, limit});
  };

  for (int i = 0; i < instance.n_sc(); ++i) {
    int row = 0;
    for (int j = 0; j < instance.n_d(); ++j) {
      if (!m.a(i, j)) continue;
      ++row;
      report.rate_used_bps += metrics.demand_bps[i];
      report.bandwidth_used_hz[j] += metrics.bandwidth_hz(i, j);
      report.links_used[j] += 1;
      if (metrics.sinr(i, j) < limits.sinr_min * (1.0 - kRelTol)) {
        violate(ConstraintKind::kSinr, i, j, metrics.sinr(i, j),
                limits.sinr_min);
      }
    }
    if (row > 1) {
      violate(ConstraintKind::kSingleAssociation, i, -1, row, 1.0);
    }
  }
  if (report.rate_used_bps >
      limits.backhaul_rate_bps * (1.0 + kRelTol)) {
    violate(ConstraintKind::kBackhaulRate, -1, -1, report.rate_used_bps,
            limits.backhaul_rate_bps);
  }
  for (int j = 0; j < instance.n_d(); ++j) {
    if (report.bandwidth_used_hz[j] >
        limits.nfp_bandwidth_hz[j] * (1.0 + kRelTol)) {
      violate(ConstraintKind::kBandwidth, -1, j, report.bandwidth_used_hz[j],
              limits.nfp_bandwidth_hz[j]);
    }
    if (report.links_used[j] > limits.nfp_max_links[j]) {
      violate(ConstraintKind::kMaxLinks, -1, j, report.links_used[j],
              limits.nfp_max_links[j]);
    }
  }
  return report;
}

AssociationInstance make_instance(const Scenario& scenario,
                                  const EnvironmentParams& env,
                                  const NetworkLimits& limits) {
  AssociationInstance instance;
  instance.metrics =
      compute_link_metrics(scenario.sc_positions, scenario.nfp_positions,
                           scenario.demand_bps, env, limits.sinr_min);
  instance.limits = limits;
  instance.validate();
  return instance;
}

std::string association_to_csv(const AssociationMatrix& m) {
  std::ostringstream out;
  for (int i = 0; i < m.n_sc(); ++i) {
    for (int j = 0; j < m.n_d(); ++j) {
      if (j) out << ',';
      out << static_cast<int>(m.a(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string instance_to_json(const std::vector<double>& demand_bps,
                             const Grid<double>& sinr) {
  if (static_cast<int>(demand_bps.size()) != sinr.rows()) {
    throw std::invalid_argument("instance_to_json: shape mismatch");
  }
  nlohmann::json j;
  j["type"] = "instance";
  j["demand_bps"] = demand_bps;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < sinr.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < sinr.cols(); ++k) row.push_back(sinr(i, k));
    rows.push_back(row);
  }
  j["sinr"] = rows;
  return j.dump(2);
}

LinkMetrics instance_from_json(const std::string& text, double sinr_min) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("type", "") != "instance") {
    throw std::invalid_argument("instance_from_json: not an instance file");
  }
  const auto demands = j.at("demand_bps").get<std::vector<double>>();
  const auto& rows = j.at("sinr");
  const int n_sc = static_cast<int>(rows.size());
  if (n_sc != static_cast<int>(demands.size())) {
    throw std::invalid_argument("instance_from_json: shape mismatch");
  }
  const int n_d = n_sc > 0 ? static_cast<int>(rows.at(0).size()) : 0;
  Grid<double> sinr(n_sc, n_d);
  for (int i = 0; i < n_sc; ++i) {
    if (static_cast<int>(rows.at(i).size()) != n_d) {
      throw std::invalid_argument("instance_from_json: ragged SINR matrix");
    }
    for (int k = 0; k < n_d; ++k) sinr(i, k) = rows.at(i).at(k).get<double>();
  }
  return metrics_from_sinr(sinr, demands, sinr_min);
}

}  // namespace nfpassoc
