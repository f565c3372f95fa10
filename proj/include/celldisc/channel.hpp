// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <compare>
#include <span>
#include <vector>

#include "celldisc/common.hpp"

namespace celldisc {

/// One propagation path. Angles are in radians, in [-pi/2, pi/2).
struct PathComponent {
  cd gain{0.0, 0.0};
  double aoa = 0.0;
  double aod = 0.0;
  double variance = 0.0;  ///< prior variance of `gain`
};

struct MultipathChannel {
  std::vector<PathComponent> paths;
  int n_r = 1;
  int n_t = 1;
  double d_over_lambda = 0.5;
};

/// (receive bin, transmit bin) position in the 2D DFT grid.
struct AngularBin {
  int rx = 0;
  int tx = 0;
  auto operator<=>(const AngularBin&) const = default;
};

struct AngularChannel {
  CMatrix g;
  std::vector<AngularBin> support;  ///< bins with |g|^2 > delta, column-major order
  double delta = 0.0;
};

/// Spatial frequency 2 pi (d/lambda) sin(theta).
double spatial_frequency(double theta, double d_over_lambda);

/// Angle whose spatial frequency lands exactly on DFT bin `l` of an n-element array.
double angle_for_bin(int l, int n, double d_over_lambda);

/// H = sum_k gain_k a_r(w_rk) a_t(w_tk)^*, size n_r x n_t.
CMatrix synthesize_channel(const MultipathChannel& ch);

/// G = F_{n_r}^* H F_{n_t}; the support is every entry with |G|^2 > delta.
AngularChannel angular_transform(const CMatrix& h, double delta);

/// Support threshold used by the network experiments: half the peak bin energy.
double peak_relative_delta(const CMatrix& g);

/// Inverse of angular_transform: H = F_{n_r} G F_{n_t}^*.
CMatrix from_angular(const CMatrix& g);

/// DFT bin hit by a path, assuming it is on-grid.
AngularBin on_grid_bin(const PathComponent& path, int n_r, int n_t, double d_over_lambda);

/// Draws k distinct on-grid bins (avoiding `excluded`) with CN(0, variances[k]) gains.
MultipathChannel sample_ideal_channel(int k, std::span<const double> variances, int n_r, int n_t, Rng& rng,
                                      std::span<const AngularBin> excluded = {}, double d_over_lambda = 0.5);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

/// Log-distance path loss referenced to free space at 1 m.
struct PathLossModel {
  double carrier_ghz = 28.0;
  double exponent_los = 2.0;
  double exponent_nlos = 3.2;
  int max_paths = 6;
  double power_decay = 1.0;  ///< path k carries power proportional to exp(-power_decay * k)
};

double free_space_loss_1m_db(double carrier_ghz);
double path_loss_db(double distance_m, bool los, const PathLossModel& model);

struct LinkGeometry {
  Point2 bs;
  Point2 ue;
  bool los = false;
  bool blocked = false;
};

/// Off-grid channel with 1..max_paths paths whose variances sum to n_r n_t 10^(-PL/10).
MultipathChannel sample_geometric_channel(const LinkGeometry& link, const PathLossModel& model, int n_r, int n_t,
                                          Rng& rng, double d_over_lambda = 0.5);

/// Sum of path variances, i.e. the expected ||H||_F^2.
double mean_channel_power(const MultipathChannel& ch);

}  // namespace celldisc
