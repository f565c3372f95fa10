// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "celldisc/codebook.hpp"
#include "celldisc/network.hpp"

namespace celldisc {

enum class ChannelMode { Ideal, Geometric };
enum class Criterion { AnyBs, StrongestBs };
/// null_cfar: absolute tau from signal-free trials. relative_max: tau = kappa * max metric.
enum class ThresholdRule { NullCfar, RelativeMax };

struct SchemeEntry {
  std::string label;
  Scheme scheme = Scheme::Mubb;
  SchemeParams params;  ///< n_t, n_r, n_bs, n_rf and rho come from the experiment section
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int trials = 500;
  std::vector<double> r_grid{50.0, 100.0, 150.0, 200.0, 250.0};
  double target_pf = 0.1;
  double rho = 1.0;  ///< transmit power per pilot, W
  int n_t = 64;
  int n_r = 8;
  int n_bs = 16;
  int n_rf = 1;
  std::vector<int> n_rf_grid{1, 2, 4};
  ChannelMode channel = ChannelMode::Geometric;
  Criterion criterion = Criterion::AnyBs;
  ThresholdRule threshold_rule = ThresholdRule::NullCfar;
  int calibration_trials = 0;  ///< 0 means ceil(100 / target_pf)
  double temperature_k = 293.0;
  double bandwidth_hz = 8e8;
  std::optional<double> sigma_n2;  ///< overrides k T B when set
  double gain_alpha = 0.5;
  std::vector<int> paths{3, 4, 2, 2};  ///< ideal mode: path count per active BS
  int active_bs = 4;
  int los_bs = 2;
  double carrier_ghz = 28.0;
  double exponent_los = 2.0;
  double exponent_nlos = 3.2;
  int max_paths = 6;
  double power_decay = 1.0;
  double d_over_lambda = 0.5;
  int rbf_draws = 1;  ///< RBF keeps the lowest-coherence codebook out of this many draws
  int threads = 1;
  std::vector<SchemeEntry> schemes;

  double noise_variance() const;
  int resolved_calibration_trials() const;
  NetworkConfig network() const;
  SchemeParams scheme_params(const SchemeEntry& entry, int n_rf_override = 0) const;
};

/// Parses `key = value` lines. Keys before any section, or in [experiment], are global;
/// [scheme LABEL] opens a scheme whose `type` defaults to LABEL. `#` starts a comment.
/// Unknown keys, bad values and duplicate keys raise a config error.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Every setting, one per line, in a fixed order with round-trip precision.
std::string canonical_text(const ExperimentConfig& cfg);

/// 64-bit FNV-1a of canonical_text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace celldisc
