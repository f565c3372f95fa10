// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "celldisc/dft.hpp"

namespace celldisc {

namespace {

DetectionResult from_metrics(RVector metrics, double tau) {
  require(tau >= 0.0, ErrorCode::InvalidArgument, "threshold must be non-negative");
  DetectionResult out;
  for (Eigen::Index k = 0; k < metrics.size(); ++k) {
    if (metrics[k] > tau) out.active.push_back(static_cast<int>(k));
    if (!out.strongest || metrics[k] > out.metric_max) {
      out.strongest = static_cast<int>(k);
      out.metric_max = metrics[k];
    }
  }
  out.metrics = std::move(metrics);
  return out;
}

double wrapped_distance(double a, double b) {
  double d = std::remainder(a - b, 2.0 * kPi);
  return std::abs(d);
}

}  // namespace

DetectionResult threshold_detect(const ObservationSet& obs, double tau) {
  return from_metrics(obs.y.head(obs.per_phase()).cwiseAbs2(), tau);
}

DetectionResult matched_filter_detect(const CVector& y, const SensingMatrix& sm, double tau) {
  return from_metrics(sm.metrics(y), tau);
}

int identify_bs(cd y1, cd y2, int n_bs) {
  require(n_bs >= 1, ErrorCode::InvalidArgument, "need at least one BS");
  const double phase = std::arg(y2 * std::conj(y1));
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_bs; ++i) {
    const double d = wrapped_distance(phase, 2.0 * kPi * (i + 1) / (n_bs + 1));
    if (d < best_d - 1e-12) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

DetectionResult differential_detect(const CVector& y1, const CVector& y2, double tau, int n_bs) {
  require(y1.size() == y2.size(), ErrorCode::DimensionMismatch, "differential passes differ in length");
  RVector m = (y1.cwiseAbs() + y2.cwiseAbs()).cwiseAbs2();
  DetectionResult out = from_metrics(std::move(m), tau);
  for (int k : out.active) out.identities.emplace_back(k, identify_bs(y1[k], y2[k], n_bs));
  return out;
}

double fixed_threshold_for_pf(double pf, double sigma_n2, int slots) {
  require(pf > 0.0 && pf < 1.0, ErrorCode::InvalidArgument, "target P_F must lie in (0, 1)");
  require(slots >= 1 && sigma_n2 > 0.0, ErrorCode::InvalidArgument, "need slots >= 1 and positive noise");
  // 1 - (1-pf)^(1/slots), computed without cancellation.
  const double per_slot = -std::expm1(std::log1p(-pf) / slots);
  return -sigma_n2 * std::log(per_slot);
}

double bisect_threshold(std::span<const double> samples, double target, double lo, double hi, int steps) {
  require(!samples.empty(), ErrorCode::CalibrationFailure, "no calibration samples");
  require(target > 0.0 && target < 1.0, ErrorCode::InvalidArgument, "target rate must lie in (0, 1)");
  auto rate = [&](double t) {
    const auto n = std::count_if(samples.begin(), samples.end(), [t](double s) { return s > t; });
    return static_cast<double>(n) / static_cast<double>(samples.size());
  };
  require(rate(hi) <= target, ErrorCode::CalibrationFailure, "target rate not reachable below the upper bracket");
  if (rate(lo) <= target) return lo;
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    (rate(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

double calibrate_null_threshold(std::span<const double> null_max, double target_pf, int steps) {
  require(!null_max.empty(), ErrorCode::CalibrationFailure, "no null trials");
  const double hi = *std::max_element(null_max.begin(), null_max.end());
  return bisect_threshold(null_max, target_pf, 0.0, hi, steps);
}

double calibrate_kappa(std::span<const double> ratios, double target_pf, int steps) {
  require(!ratios.empty(), ErrorCode::CalibrationFailure, "no calibration trials");
  const auto atom = std::count_if(ratios.begin(), ratios.end(), [](double r) { return r >= 1.0 - 1e-12; });
  const double atom_rate = static_cast<double>(atom) / static_cast<double>(ratios.size());
  require(atom_rate <= target_pf, ErrorCode::CalibrationFailure,
          "an off-support metric is the maximum in " + std::to_string(atom_rate) +
              " of trials, above the target false-alarm rate");
  return bisect_threshold(ratios, target_pf, 0.0, 1.0 - 1e-12, steps);
}

StrongestBs strongest_bs(const RVector& metrics, const SensingMatrix& sm) {
  require(metrics.size() == sm.cols() && metrics.size() > 0, ErrorCode::DimensionMismatch,
          "metric vector does not match the sensing matrix");
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < metrics.size(); ++k)
    if (metrics[k] > metrics[best]) best = k;
  const ColumnRef ref = sm.column_ref(static_cast<int>(best));
  return {ref.bs, ref.bin, static_cast<int>(best)};
}

double beamforming_gain(const CMatrix& h, const CellHypothesis& hyp) {
  const int n_r = static_cast<int>(h.rows());
  const int n_t = static_cast<int>(h.cols());
  require(hyp.first.rx >= 0 && hyp.first.rx + hyp.rx_span <= n_r && hyp.first.tx >= 0 &&
              hyp.first.tx + hyp.tx_span <= n_t,
          ErrorCode::InvalidArgument, "beam indices out of range");
  const CVector w_r = combined_dft_beam(n_r, hyp.first.rx, hyp.rx_span);
  const CVector w_t = combined_dft_beam(n_t, hyp.first.tx, hyp.tx_span);
  return std::abs(w_r.dot(h * w_t));
}

CellDetector::CellDetector(const SchemeCodebook& cb)
    : scheme_(cb.scheme), n_bs_(cb.n_bs()), receive_beams_(cb.receive_beams()) {
  if (is_compressive(scheme_)) {
    sensing_ = sensing_matrix(cb);
    cells_ = sensing_->cols();
  } else {
    cells_ = cb.observations_per_phase();
    beta_r_ = cb.params.beta_r;
    beta_t_ = cb.params.beta_t;
  }
}

RVector CellDetector::metrics(const ObservationSet& obs) const {
  if (sensing_) return sensing_->metrics(observation_vector(obs));
  const int n = obs.per_phase();
  if (is_differential(scheme_)) return (obs.y.head(n).cwiseAbs() + obs.y.segment(n, n).cwiseAbs()).cwiseAbs2();
  return obs.y.head(n).cwiseAbs2();
}

CellHypothesis CellDetector::decode(const ObservationSet& obs, int cell) const {
  require(cell >= 0 && cell < cells_, ErrorCode::InvalidArgument, "cell index out of range");
  CellHypothesis hyp;
  if (sensing_) {
    const ColumnRef ref = sensing_->column_ref(cell);
    hyp.bs = ref.bs;
    hyp.first = ref.bin;
    return hyp;
  }
  const int p = cell % receive_beams_;
  const int q = cell / receive_beams_;
  hyp.first = {p * beta_r_, q * beta_t_};
  hyp.rx_span = beta_r_;
  hyp.tx_span = beta_t_;
  if (is_differential(scheme_)) hyp.bs = identify_bs(obs.y[cell], obs.y[obs.per_phase() + cell], n_bs_);
  return hyp;
}

int CellDetector::cell_of(int bs, AngularBin bin) const {
  if (sensing_) return sensing_->column_index(bs, bin);
  return (bin.tx / beta_t_) * receive_beams_ + bin.rx / beta_r_;
}

}  // namespace celldisc
