// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include "celldisc/network.hpp"

using namespace celldisc;

namespace {

double nearest_active_distance(const NetworkRealization& net) {
  double best = 1e300;
  for (int b : net.active_set) best = std::min(best, distance(net.bs_positions[b], net.ue_position));
  return best;
}

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("thermal noise") {
    CHECK(thermal_noise_variance(293.0, 8e8) == doctest::Approx(3.235e-12).epsilon(1e-3));
    CHECK(thermal_noise_variance(0.0, 8e8) == 0.0);
    CHECK(thermal_noise_variance(293.0, 1.6e9) == doctest::Approx(2.0 * thermal_noise_variance(293.0, 8e8)));
  }

  TEST_CASE("exactly the active BSs carry a channel") {
    NetworkConfig cfg;
    for (std::uint64_t s = 0; s < 200; ++s) {
      Rng rng = make_rng(s);
      const NetworkRealization net = build_network(100.0, cfg, rng);
      CHECK(net.bs_positions.size() == 16);
      CHECK(net.active_set.size() == 4);
      CHECK(net.los_set.size() == 2);
      int nonzero = 0;
      for (int b = 0; b < 16; ++b) {
        const bool active = std::binary_search(net.active_set.begin(), net.active_set.end(), b);
        nonzero += !net.channels[b].paths.empty();
        CHECK(net.channels[b].paths.empty() == !active);
      }
      CHECK(nonzero == 4);
      for (int b : net.los_set) CHECK(std::binary_search(net.active_set.begin(), net.active_set.end(), b));
    }
  }

  TEST_CASE("BS b sits in cell b mod 16") {
    NetworkConfig cfg;
    cfg.n_bs = 32;
    Rng rng = make_rng(5);
    const NetworkRealization net = build_network(50.0, cfg, rng);
    for (int b = 0; b < 32; ++b) {
      const int cell = b % 16;
      const double x0 = (cell % 4) * 50.0, y0 = (cell / 4) * 50.0;
      CHECK(net.bs_positions[b].x >= x0);
      CHECK(net.bs_positions[b].x <= x0 + 50.0);
      CHECK(net.bs_positions[b].y >= y0);
      CHECK(net.bs_positions[b].y <= y0 + 50.0);
    }
  }

  TEST_CASE("fixed seed gives a bit-identical realization") {
    NetworkConfig cfg;
    Rng a = make_rng(77), b = make_rng(77);
    const NetworkRealization x = build_network(120.0, cfg, a);
    const NetworkRealization y = build_network(120.0, cfg, b);
    CHECK(x.ue_position.x == y.ue_position.x);
    CHECK(x.active_set == y.active_set);
    for (int k = 0; k < 16; ++k) {
      REQUIRE(x.channels[k].paths.size() == y.channels[k].paths.size());
      for (std::size_t j = 0; j < x.channels[k].paths.size(); ++j)
        CHECK(x.channels[k].paths[j].gain == y.channels[k].paths[j].gain);
    }
  }

  TEST_CASE("nearest active BS distance scales with R") {
    NetworkConfig cfg;
    auto quantiles = [&](double r) {
      Rng rng = make_rng(9);
      std::vector<double> d;
      for (int t = 0; t < 10000; ++t) d.push_back(nearest_active_distance(build_network(r, cfg, rng)));
      std::sort(d.begin(), d.end());
      return std::vector<double>{d[2500], d[5000], d[7500]};
    };
    const auto a = quantiles(50.0);
    const auto b = quantiles(200.0);
    for (int k = 0; k < 3; ++k) CHECK(b[k] / a[k] == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("bad network settings") {
    NetworkConfig cfg;
    cfg.los = 5;
    Rng rng = make_rng(1);
    CHECK_THROWS_AS(build_network(50.0, cfg, rng), Error);
    CHECK_THROWS_AS(build_network(0.0, NetworkConfig{}, rng), Error);
  }
}
