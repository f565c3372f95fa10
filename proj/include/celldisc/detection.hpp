// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "celldisc/channel.hpp"
#include "celldisc/codebook.hpp"
#include "celldisc/measurement.hpp"

namespace celldisc {

/// Indices are slot positions (threshold and differential detectors) or Psi columns
/// (matched filter).
struct DetectionResult {
  std::vector<int> active;                       ///< ascending
  std::vector<std::pair<int, int>> identities;   ///< (active index, 0-based BS), differential only
  std::optional<int> strongest;                  ///< argmax of the metric, lowest index on ties
  double metric_max = 0.0;
  RVector metrics;
};

/// |y|^2 > tau over the slots of the first pass.
DetectionResult threshold_detect(const ObservationSet& obs, double tau);

/// |psi_l^* y|^2 > tau over all columns of Psi.
DetectionResult matched_filter_detect(const CVector& y, const SensingMatrix& sm, double tau);

/// 0-based BS whose pilot phase 2 pi (i + 1) / (n_bs + 1) is closest on the unit circle to
/// arg(y2 y1^*). Ties go to the lower index.
int identify_bs(cd y1, cd y2, int n_bs);

/// (|y1| + |y2|)^2 > tau, then identify_bs on every active slot.
DetectionResult differential_detect(const CVector& y1, const CVector& y2, double tau, int n_bs);

/// tau with P(any of `slots` Exp(sigma_n2) samples > tau) = pf.
double fixed_threshold_for_pf(double pf, double sigma_n2, int slots);

/// Smallest threshold t in [lo, hi] (to bisection resolution) whose exceedance rate
/// #{s > t} / n is at most `target`. Throws a calibration failure if even `hi` is too low.
double bisect_threshold(std::span<const double> samples, double target, double lo, double hi, int steps = 12);

/// Absolute threshold from the per-trial maximum metric of signal-free trials.
double calibrate_null_threshold(std::span<const double> null_max, double target_pf, int steps = 12);

/// kappa for the relative rule tau = kappa * max. `ratios` holds, per trial, the largest
/// off-support metric over the largest metric. Trials where an off-support metric is the
/// maximum fire for every kappa < 1; if those alone exceed the target there is no solution.
double calibrate_kappa(std::span<const double> ratios, double target_pf, int steps = 12);

struct StrongestBs {
  int bs = 0;
  AngularBin bin;
  int column = 0;
};

/// Argmax column of `metrics` mapped back to (BS, bin). Lowest index wins ties.
StrongestBs strongest_bs(const RVector& metrics, const SensingMatrix& sm);

/// What one detector output claims: a BS (or -1 if unknown) and a block of DFT bins.
struct CellHypothesis {
  int bs = -1;
  AngularBin first;
  int rx_span = 1;
  int tx_span = 1;

  bool covers(AngularBin b) const {
    return b.rx >= first.rx && b.rx < first.rx + rx_span && b.tx >= first.tx && b.tx < first.tx + tx_span;
  }
};

/// |w_r^* H w_t| with DFT beams pointed at the hypothesis; blocks wider than one bin use the
/// unit-norm combined beam over the block.
double beamforming_gain(const CMatrix& h, const CellHypothesis& hyp);

/// Per-scheme detection front end: one metric per "cell" (slot or Psi column) and the map
/// from cells back to BS and bins.
class CellDetector {
 public:
  explicit CellDetector(const SchemeCodebook& cb);

  Scheme scheme() const { return scheme_; }
  int cells() const { return cells_; }
  bool compressive() const { return sensing_.has_value(); }
  const SensingMatrix& sensing() const { return *sensing_; }

  RVector metrics(const ObservationSet& obs) const;
  CellHypothesis decode(const ObservationSet& obs, int cell) const;
  /// Cell that collects energy from `bin` of BS `bs`.
  int cell_of(int bs, AngularBin bin) const;

 private:
  Scheme scheme_;
  int cells_ = 0;
  int n_bs_ = 1;
  int receive_beams_ = 0;
  int beta_r_ = 1;
  int beta_t_ = 1;
  std::optional<SensingMatrix> sensing_;
};

}  // namespace celldisc
