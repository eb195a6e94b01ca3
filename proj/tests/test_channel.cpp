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

#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "nfpassoc/channel.hpp"
#include "nfpassoc/rng.hpp"

using namespace nfpassoc;

namespace {
const EnvironmentParams kDefaults{};
}

TEST_CASE("los probability at the curve parameter angle is 1/(1+alpha)") {
  // Closed form: the exponent vanishes at elevation == alpha.
  CHECK(los_probability(9.61, kDefaults) ==
        doctest::Approx(0.09425070688030161).epsilon(1e-12));
}

TEST_CASE("los probability frozen values at 45 and 90 degrees") {
  CHECK(los_probability(45.0, kDefaults) ==
        doctest::Approx(0.9676918999472423).epsilon(1e-12));
  CHECK(los_probability(90.0, kDefaults) ==
        doctest::Approx(0.999975074537903).epsilon(1e-12));
  CHECK(los_probability(90.0, kDefaults) < 1.0);
  CHECK(los_probability(0.0, kDefaults) > 0.0);
}

TEST_CASE("los probability is strictly increasing in elevation") {
  Rng rng(20260815);
  for (int trial = 0; trial < 200; ++trial) {
    EnvironmentParams env;
    env.alpha = rng.uniform(4.0, 50.0);
    env.beta = rng.uniform(0.05, 0.3);
    double prev = los_probability(0.0, env);
    for (double deg = 1.0; deg <= 90.0; deg += 1.0) {
      const double p = los_probability(deg, env);
      CHECK(p > prev);
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      prev = p;
    }
  }
}

TEST_CASE("path loss frozen values at nadir and 1 km offset") {
  CHECK(path_loss_db(0.0, 300.0, kDefaults) ==
        doctest::Approx(89.01128181333608).epsilon(1e-12));
  CHECK(path_loss_db(1000.0, 300.0, kDefaults) ==
        doctest::Approx(114.19841384212404).epsilon(1e-12));
}

TEST_CASE("path loss rejects a zero-length link") {
  CHECK_THROWS_AS(path_loss_db(0.0, 0.0, kDefaults), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(-1.0, 300.0, kDefaults), std::domain_error);
}

TEST_CASE("path loss is strictly increasing in horizontal distance") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    EnvironmentParams env;
    env.alpha = rng.uniform(4.0, 30.0);
    env.beta = rng.uniform(0.05, 0.3);
    env.eta_los_db = rng.uniform(0.1, 3.0);
    env.eta_nlos_db = env.eta_los_db + rng.uniform(1.0, 25.0);
    env.carrier_hz = rng.uniform(0.7e9, 6.0e9);
    env.path_loss_exponent = rng.uniform(2.0, 4.0);
    const double h = rng.uniform(50.0, 1000.0);
    double prev = path_loss_db(1.0, h, env);
    for (double s = 26.0; s <= 5001.0; s += 25.0) {
      const double pl = path_loss_db(s, h, env);
      CHECK(pl > prev);
      prev = pl;
    }
  }
}

TEST_CASE("inversion round-trips to within half a metre across the range") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    EnvironmentParams env;
    env.alpha = rng.uniform(4.0, 30.0);
    env.beta = rng.uniform(0.05, 0.3);
    env.eta_nlos_db = env.eta_los_db + rng.uniform(1.0, 25.0);
    const double h = rng.uniform(100.0, 600.0);
    for (double s : {1.0, 10.0, 300.0, 1500.0, 5000.0}) {
      const double target = path_loss_db(s, h, env);
      const double s_back = invert_path_loss(target, h, env);
      CHECK(std::abs(s_back - s) <= 0.5);
      CHECK(std::abs(path_loss_db(s_back, h, env) - target) <= 0.01);
    }
  }
}

TEST_CASE("inversion saturates at zero when the nadir already exceeds target") {
  CHECK(invert_path_loss(10.0, 300.0, kDefaults) == 0.0);
}

TEST_CASE("default coverage edge sits near 1050 m") {
  const double s = invert_path_loss(115.0, 300.0, kDefaults);
  CHECK(s == doctest::Approx(1050.0762644617048).epsilon(1e-5));
}

TEST_CASE("received power frozen value at the nadir link") {
  const double pl = path_loss_db(0.0, 300.0, kDefaults);
  CHECK(received_power_w(5.0, pl) ==
        doctest::Approx(6.27829651564123e-09).epsilon(1e-12));
}

TEST_CASE("sinr on a hand-checkable three-NFP layout") {
  Grid<double> rx(1, 3);
  rx(0, 0) = 4e-9;
  rx(0, 1) = 1e-9;
  rx(0, 2) = 1e-9;
  CHECK(sinr_linear(rx, 0, 0, 1e-9) == doctest::Approx(4.0 / 3.0));
  CHECK(sinr_linear(rx, 0, 1, 1e-9) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("sinr approaches unity for two equal links without noise") {
  Grid<double> rx(1, 2);
  rx(0, 0) = 3e-9;
  rx(0, 1) = 3e-9;
  CHECK(sinr_linear(rx, 0, 0, 1e-30) == doctest::Approx(1.0));
}

TEST_CASE("spectral efficiency and bandwidth at the default threshold") {
  Grid<double> sinr(1, 1);
  sinr(0, 0) = std::pow(10.0, -0.5);
  const LinkMetrics m = metrics_from_sinr(sinr, {30.0e6}, std::pow(10.0, -0.5));
  CHECK(m.spectral_eff(0, 0) ==
        doctest::Approx(0.39640916116311387).epsilon(1e-12));
  CHECK(m.bandwidth_hz(0, 0) ==
        doctest::Approx(75679381.15248463).epsilon(1e-12));
  CHECK(m.eligible(0, 0) == 1);
}

TEST_CASE("bandwidth times efficiency returns the demand everywhere") {
  Rng rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_sc = 1 + static_cast<int>(rng.uniform_index(6));
    const int n_d = 1 + static_cast<int>(rng.uniform_index(4));
    Grid<double> sinr(n_sc, n_d);
    std::vector<double> demand(n_sc);
    for (int i = 0; i < n_sc; ++i) {
      demand[i] = rng.uniform(1.0e6, 2.0e8);
      for (int j = 0; j < n_d; ++j) {
        sinr(i, j) = std::pow(10.0, rng.uniform(-2.0, 2.0));
      }
    }
    const LinkMetrics m =
        metrics_from_sinr(sinr, demand, std::pow(10.0, -0.5));
    for (int i = 0; i < n_sc; ++i) {
      for (int j = 0; j < n_d; ++j) {
        CHECK(m.bandwidth_hz(i, j) * m.spectral_eff(i, j) ==
              doctest::Approx(demand[i]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("ineligible below the threshold, bandwidth infinite at zero sinr") {
  Grid<double> sinr(2, 1);
  sinr(0, 0) = 0.3;  // just under 10^-0.5
  sinr(1, 0) = 0.0;
  const LinkMetrics m =
      metrics_from_sinr(sinr, {1.0e6, 1.0e6}, std::pow(10.0, -0.5));
  CHECK(m.eligible(0, 0) == 0);
  CHECK(m.eligible(1, 0) == 0);
  CHECK(std::isinf(m.bandwidth_hz(1, 0)));
}

TEST_CASE("full geometric pipeline marks far SCs ineligible") {
  // One SC under the NFP, one far outside the coverage edge; interference
  // from a second NFP keeps SINR finite.
  std::vector<Position3D> scs = {{0.0, 0.0, 0.0}, {0.0, 20000.0, 0.0}};
  std::vector<Position3D> nfps = {{0.0, 0.0, 300.0}, {3000.0, 0.0, 300.0}};
  const LinkMetrics m = compute_link_metrics(scs, nfps, {30.0e6, 30.0e6},
                                             kDefaults, std::pow(10.0, -0.5));
  CHECK(m.eligible(0, 0) == 1);
  CHECK(m.eligible(1, 0) == 0);
  CHECK(m.eligible(1, 1) == 0);
  CHECK(m.sinr(0, 0) > m.sinr(0, 1));
}

TEST_CASE("environment validation names the offending field") {
  EnvironmentParams env;
  env.carrier_hz = -1.0;
  CHECK_THROWS_WITH_AS(env.validate(),
                       "EnvironmentParams: carrier_hz must be positive",
                       std::invalid_argument);
}
