// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace celldisc {

double thermal_noise_variance(double temperature_k, double bandwidth_hz) {
  require(temperature_k >= 0.0 && bandwidth_hz >= 0.0, ErrorCode::InvalidArgument,
          "temperature and bandwidth must be non-negative");
  return kBoltzmann * temperature_k * bandwidth_hz;
}

namespace {

std::vector<int> choose(int n, int k, Rng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int j = 0; j < k; ++j) {
    std::uniform_int_distribution<int> pick(j, n - 1);
    std::swap(idx[j], idx[pick(rng)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Point2 point_in_cell(int cell, int grid, double r, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double x = (cell % grid + u(rng)) * r;
  const double y = (cell / grid + u(rng)) * r;
  return {x, y};
}

}  // namespace

NetworkRealization build_network(double cell_length_m, const NetworkConfig& cfg, Rng& rng) {
  require(cell_length_m > 0.0, ErrorCode::InvalidArgument, "cell length must be positive");
  require(cfg.grid >= 1 && cfg.n_bs >= 1, ErrorCode::InvalidArgument, "empty network");
  require(cfg.active >= 0 && cfg.active <= cfg.n_bs && cfg.los >= 0 && cfg.los <= cfg.active,
          ErrorCode::InvalidArgument, "need los <= active <= n_bs");
  const int cells = cfg.grid * cfg.grid;
  NetworkRealization net;
  net.cell_length_m = cell_length_m;
  for (int b = 0; b < cfg.n_bs; ++b) net.bs_positions.push_back(point_in_cell(b % cells, cfg.grid, cell_length_m, rng));
  std::uniform_int_distribution<int> ue_cell(0, cells - 1);
  net.ue_position = point_in_cell(ue_cell(rng), cfg.grid, cell_length_m, rng);
  net.active_set = choose(cfg.n_bs, cfg.active, rng);
  for (int j : choose(cfg.active, cfg.los, rng)) net.los_set.push_back(net.active_set[j]);
  std::sort(net.los_set.begin(), net.los_set.end());

  net.channels.resize(cfg.n_bs);
  for (int b = 0; b < cfg.n_bs; ++b) {
    MultipathChannel& ch = net.channels[b];
    ch.n_r = cfg.n_r;
    ch.n_t = cfg.n_t;
    ch.d_over_lambda = cfg.d_over_lambda;
  }
  for (int b : net.active_set) {
    LinkGeometry link;
    link.bs = net.bs_positions[b];
    link.ue = net.ue_position;
    const double d = distance(link.bs, link.ue);
    if (d < 1.0) {
      // Push the UE out along the BS-UE direction (or along x when co-located).
      const double dx = d > 0.0 ? (link.ue.x - link.bs.x) / d : 1.0;
      const double dy = d > 0.0 ? (link.ue.y - link.bs.y) / d : 0.0;
      link.ue = {link.bs.x + dx, link.bs.y + dy};
    }
    link.los = std::binary_search(net.los_set.begin(), net.los_set.end(), b);
    net.channels[b] = sample_geometric_channel(link, cfg.path_loss, cfg.n_r, cfg.n_t, rng, cfg.d_over_lambda);
  }
  return net;
}

}  // namespace celldisc
