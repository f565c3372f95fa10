// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "celldisc/codebook.hpp"
#include "celldisc/csv.hpp"

namespace celldisc {

struct CheckRow {
  std::string preset;
  std::string check;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckRow> rows;

  bool all_pass() const;
  std::size_t failures() const;
  void add(std::string preset, std::string check, double observed, double expected, double tolerance);
  /// Records a check whose pass/fail was decided by the caller.
  void add_decided(std::string preset, std::string check, double observed, double expected, double tolerance,
                   bool pass);
  void append(const VerificationReport& other);
  /// Columns: preset, check, observed, expected, delta, tolerance, pass.
  CsvTable table(const std::string& config_hash) const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::int64_t trials = 10000;     ///< Monte Carlo trials per point (fig1)
  std::int64_t oracle_draws = 1000000;  ///< brute-force draws per instance (theorem2_small)
  int instances = 8;               ///< random instances (theorem2_small)
  int rbf_draws = 2000;            ///< RBF seeds searched (table1)
};

/// Preset names accepted by run_theorem_verification.
const std::vector<std::string>& verification_presets();

/// fig1, table1, theorem2_small or theorem3_grid; anything else is a config error.
VerificationReport run_theorem_verification(const std::string& preset, const VerifyOptions& opt);

/// Index of the first of `draws` seeded RBF draws whose coherence is at most `bound`, or -1.
/// `mu_out` receives that draw's coherence, or the smallest one seen when none qualifies.
int first_rbf_draw_at_most(const SchemeParams& params, int draws, std::uint64_t seed, double bound, double* mu_out);

}  // namespace celldisc
