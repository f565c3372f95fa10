// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "celldisc/config.hpp"
#include "celldisc/csv.hpp"
#include "celldisc/detection.hpp"

namespace celldisc {

struct PreparedScheme {
  std::string label;
  SchemeCodebook codebook;
  CellDetector detector;
  int n_rf = 1;
  std::optional<double> mu;  ///< set for RBF (coherence of the retained draw)
};

/// Codebook and detector for one scheme section. RBF keeps the lowest-coherence codebook of
/// cfg.rbf_draws seeded draws.
PreparedScheme prepare_scheme(const ExperimentConfig& cfg, const SchemeEntry& entry, int n_rf);

/// Lowest-coherence RBF codebook among `draws` seeded draws; ties keep the earliest draw.
SchemeCodebook best_rbf_codebook(const SchemeParams& params, int draws, std::uint64_t seed, double* mu_out = nullptr);

/// One channel drop with ground truth.
struct Realization {
  std::vector<CMatrix> h;                        ///< per BS
  std::vector<int> active;                       ///< ascending
  std::vector<std::vector<AngularBin>> support;  ///< per BS, empty when inactive
  int strongest_bs = -1;
  AngularBin strongest_bin;
};

/// Geometric mode: network drop with cell length r, support |G|^2 > max|G|^2 / 2 per BS.
/// Ideal mode: cfg.paths on-grid paths for a uniform subset of BSs, exact support.
Realization draw_realization(const ExperimentConfig& cfg, double r, Rng& rng);

/// Absolute threshold calibrated on signal-free trials (null_cfar rule).
double calibrate_null_cfar(const ExperimentConfig& cfg, const PreparedScheme& scheme);

/// kappa for tau = kappa * max metric, calibrated on active trials at cell length r.
double calibrate_relative_max(const ExperimentConfig& cfg, const PreparedScheme& scheme, int r_index, double r);

/// Counts and gains of one scheme at one R point.
struct PointOutcome {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  std::vector<double> gains;  ///< per trial, only when requested
};

/// Runs cfg.trials drops at cell length r and scores every scheme on the same drops and noise.
/// `thresholds` holds tau (null_cfar) or kappa (relative_max) per scheme.
std::vector<PointOutcome> run_point(const ExperimentConfig& cfg, std::span<const PreparedScheme> schemes,
                                    std::span<const double> thresholds, int r_index, double r, bool collect_gains);

/// Columns: label, scheme, n_rf, observations, r_m, pd_hat, pd_stderr, kappa, trials.
CsvTable run_detection_curve(const ExperimentConfig& cfg);

/// The same table for every n_rf in cfg.n_rf_grid.
CsvTable run_rf_chain_study(const ExperimentConfig& cfg);

struct GainSamples {
  std::string label;
  double r = 0.0;
  int observations = 0;
  std::vector<double> samples;  ///< ascending
};

/// Beamforming gain at the strongest detector output, per scheme and R.
std::vector<GainSamples> bfgain_samples(const ExperimentConfig& cfg);

/// Columns: label, scheme, r_m, observations, gain_value, cdf (100 quantile points each).
CsvTable run_bfgain_cdf(const ExperimentConfig& cfg);

/// Columns: label, scheme, n_bs, n_rf, observations, mu_numeric, mu_closed_form.
CsvTable coherence_table(const ExperimentConfig& cfg);

}  // namespace celldisc
