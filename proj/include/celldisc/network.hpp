// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <vector>

#include "celldisc/channel.hpp"
#include "celldisc/common.hpp"

namespace celldisc {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

/// k T B in watts.
double thermal_noise_variance(double temperature_k, double bandwidth_hz);

struct NetworkConfig {
  int grid = 4;           ///< grid x grid square cells of side R
  int n_bs = 16;          ///< BS b sits in cell b % (grid * grid)
  int active = 4;
  int los = 2;            ///< LOS links among the active BSs
  int n_r = 8;
  int n_t = 64;
  double d_over_lambda = 0.5;
  PathLossModel path_loss;
};

struct NetworkRealization {
  double cell_length_m = 0.0;
  std::vector<Point2> bs_positions;
  Point2 ue_position;
  std::vector<int> active_set;  ///< ascending
  std::vector<int> los_set;     ///< ascending, subset of active_set
  std::vector<MultipathChannel> channels;  ///< one per BS, empty paths when inactive
};

/// One drop: BSs uniform in their cells, UE uniform in a uniformly chosen cell, a uniform
/// active subset with a uniform LOS subset. BS-UE distances below 1 m are raised to 1 m.
NetworkRealization build_network(double cell_length_m, const NetworkConfig& cfg, Rng& rng);

}  // namespace celldisc
