// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "celldisc/dft.hpp"

namespace celldisc {

double spatial_frequency(double theta, double d_over_lambda) {
  return 2.0 * kPi * d_over_lambda * std::sin(theta);
}

double angle_for_bin(int l, int n, double d_over_lambda) {
  const double s = bin_frequency(l, n) / (2.0 * kPi * d_over_lambda);
  require(s >= -1.0 && s < 1.0, ErrorCode::InvalidArgument, "DFT bin not reachable with this antenna spacing");
  return std::asin(s);
}

CMatrix synthesize_channel(const MultipathChannel& ch) {
  require(ch.n_r >= 1 && ch.n_t >= 1, ErrorCode::InvalidDimension, "array sizes must be positive");
  CMatrix h = CMatrix::Zero(ch.n_r, ch.n_t);
  for (const auto& path : ch.paths) {
    require(std::isfinite(path.aoa) && std::isfinite(path.aod), ErrorCode::InvalidArgument, "non-finite path angle");
    const CVector ar = array_response(spatial_frequency(path.aoa, ch.d_over_lambda), ch.n_r);
    const CVector at = array_response(spatial_frequency(path.aod, ch.d_over_lambda), ch.n_t);
    h.noalias() += path.gain * ar * at.adjoint();
  }
  return h;
}

AngularChannel angular_transform(const CMatrix& h, double delta) {
  const CMatrix& fr = cached_dft_matrix(static_cast<int>(h.rows()));
  const CMatrix& ft = cached_dft_matrix(static_cast<int>(h.cols()));
  AngularChannel out;
  out.g = fr.adjoint() * h * ft;
  out.delta = delta;
  for (Eigen::Index b = 0; b < out.g.cols(); ++b)
    for (Eigen::Index a = 0; a < out.g.rows(); ++a)
      if (std::norm(out.g(a, b)) > delta) out.support.push_back({static_cast<int>(a), static_cast<int>(b)});
  return out;
}

double peak_relative_delta(const CMatrix& g) {
  return g.size() == 0 ? 0.0 : 0.5 * g.cwiseAbs2().maxCoeff();
}

CMatrix from_angular(const CMatrix& g) {
  const CMatrix& fr = cached_dft_matrix(static_cast<int>(g.rows()));
  const CMatrix& ft = cached_dft_matrix(static_cast<int>(g.cols()));
  return fr * g * ft.adjoint();
}

AngularBin on_grid_bin(const PathComponent& path, int n_r, int n_t, double d_over_lambda) {
  auto to_bin = [](double omega, int n) {
    const long long l = std::llround(omega * n / (2.0 * kPi));
    return static_cast<int>(((l % n) + n) % n);
  };
  return {to_bin(spatial_frequency(path.aoa, d_over_lambda), n_r),
          to_bin(spatial_frequency(path.aod, d_over_lambda), n_t)};
}

MultipathChannel sample_ideal_channel(int k, std::span<const double> variances, int n_r, int n_t, Rng& rng,
                                      std::span<const AngularBin> excluded, double d_over_lambda) {
  require(n_r >= 1 && n_t >= 1, ErrorCode::InvalidDimension, "array sizes must be positive");
  require(k >= 0 && static_cast<std::size_t>(k) == variances.size(), ErrorCode::InvalidArgument,
          "one variance per path required");
  const std::set<AngularBin> taken(excluded.begin(), excluded.end());
  std::vector<int> free_bins;
  free_bins.reserve(static_cast<std::size_t>(n_r) * n_t);
  for (int idx = 0; idx < n_r * n_t; ++idx)
    if (!taken.contains({idx % n_r, idx / n_r})) free_bins.push_back(idx);
  require(k <= static_cast<int>(free_bins.size()), ErrorCode::InfeasibleSupport,
          "more paths than free DFT bins");

  // Partial Fisher-Yates: the first k entries become a uniform draw without replacement.
  for (int j = 0; j < k; ++j) {
    std::uniform_int_distribution<int> pick(j, static_cast<int>(free_bins.size()) - 1);
    std::swap(free_bins[j], free_bins[pick(rng)]);
  }

  MultipathChannel ch;
  ch.n_r = n_r;
  ch.n_t = n_t;
  ch.d_over_lambda = d_over_lambda;
  for (int j = 0; j < k; ++j) {
    require(variances[j] >= 0.0, ErrorCode::InvalidArgument, "negative path variance");
    const int rx = free_bins[j] % n_r;
    const int tx = free_bins[j] / n_r;
    PathComponent path;
    path.aoa = angle_for_bin(rx, n_r, d_over_lambda);
    path.aod = angle_for_bin(tx, n_t, d_over_lambda);
    path.variance = variances[j];
    path.gain = complex_normal(rng, variances[j]);
    ch.paths.push_back(path);
  }
  return ch;
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double free_space_loss_1m_db(double carrier_ghz) {
  constexpr double kSpeedOfLight = 299792458.0;
  return 20.0 * std::log10(4.0 * kPi * carrier_ghz * 1e9 / kSpeedOfLight);
}

double path_loss_db(double distance_m, bool los, const PathLossModel& model) {
  require(distance_m > 0.0, ErrorCode::DegenerateGeometry, "BS-UE distance must be positive");
  const double exponent = los ? model.exponent_los : model.exponent_nlos;
  return free_space_loss_1m_db(model.carrier_ghz) + 10.0 * exponent * std::log10(distance_m);
}

MultipathChannel sample_geometric_channel(const LinkGeometry& link, const PathLossModel& model, int n_r, int n_t,
                                          Rng& rng, double d_over_lambda) {
  require(n_r >= 1 && n_t >= 1, ErrorCode::InvalidDimension, "array sizes must be positive");
  MultipathChannel ch;
  ch.n_r = n_r;
  ch.n_t = n_t;
  ch.d_over_lambda = d_over_lambda;
  const double d = distance(link.bs, link.ue);
  require(d > 0.0, ErrorCode::DegenerateGeometry, "BS and UE are co-located");
  if (link.blocked) return ch;

  const double total = static_cast<double>(n_r) * n_t * std::pow(10.0, -path_loss_db(d, link.los, model) / 10.0);
  std::uniform_int_distribution<int> path_count(1, std::max(1, model.max_paths));
  const int k = path_count(rng);
  std::vector<double> weights(k);
  for (int j = 0; j < k; ++j) weights[j] = std::exp(-model.power_decay * j);
  const double norm = std::accumulate(weights.begin(), weights.end(), 0.0);

  std::uniform_real_distribution<double> angle(-kPi / 2.0, kPi / 2.0);
  for (int j = 0; j < k; ++j) {
    PathComponent path;
    path.aoa = angle(rng);
    path.aod = angle(rng);
    path.variance = total * weights[j] / norm;
    path.gain = complex_normal(rng, path.variance);
    ch.paths.push_back(path);
  }
  return ch;
}

double mean_channel_power(const MultipathChannel& ch) {
  double total = 0.0;
  for (const auto& path : ch.paths) total += path.variance;
  return total;
}

}  // namespace celldisc
