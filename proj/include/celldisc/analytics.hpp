// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "celldisc/channel.hpp"
#include "celldisc/codebook.hpp"
#include "celldisc/common.hpp"

namespace celldisc {

/// 1 - (1 - exp(-tau / sigma_n2))^(slots - support_size).
double pf_beam_sweep(double tau, double sigma_n2, int slots, int support_size);

/// 1 - prod_k (1 - exp(-tau / (sigma_n2 + rho var_k))), disjoint supports.
double pd_nonoverlap(double tau, double sigma_n2, double rho, std::span<const double> variances);

/// exp(-tau / (sigma_n2 + rho max_variance)), valid with overlapping supports.
double pd_overlap_bound(double tau, double sigma_n2, double rho, double max_variance);

/// 1 - prod_k (1 - exp(-tau / lambda_k)) over the eigenvalues of
/// C = rho T D T + sigma_n2 T, T = psi_t^* psi_t.
double pd_cs_exact(const CMatrix& psi_t, std::span<const double> d_diag, double rho, double sigma_n2, double tau);

struct LowerBound {
  double value = 0.0;
  bool vacuous = false;  ///< (|T| - 1) mu >= 1
};

/// Gershgorin bound with mubar = 1 - (|T| - 1) mu.
LowerBound pd_cs_lower_bound(int support_size, double mu, double sigma_min2, double rho, double sigma_n2, double tau);

/// Closed-form coherence; empty for RBF.
std::optional<double> scheme_mu_closed_form(Scheme scheme, const SchemeParams& params);

struct ProbabilityReport {
  std::optional<double> pf_analytic;
  std::optional<double> pd_analytic;
  std::optional<double> pd_lower_bound;
  std::int64_t trials = 0;
  std::int64_t pd_hits = 0;         ///< active trials where a true-support metric fired
  std::int64_t pf_hits = 0;         ///< null trials where any metric fired
  std::int64_t pf_offsupport_hits = 0;  ///< active trials where an off-support metric fired

  double pd_mc() const { return rate(pd_hits); }
  double pf_mc() const { return rate(pf_hits); }
  double pf_offsupport_mc() const { return rate(pf_offsupport_hits); }
  double pd_stderr() const { return stderr_of(pd_mc()); }
  double pf_stderr() const { return stderr_of(pf_mc()); }
  double pf_offsupport_stderr() const { return stderr_of(pf_offsupport_mc()); }

  void merge(const ProbabilityReport& other);

 private:
  double rate(std::int64_t hits) const { return trials == 0 ? 0.0 : static_cast<double>(hits) / trials; }
  double stderr_of(double p) const;
};

/// Ideal-channel scenario with a fixed support and Gaussian gains.
struct ProbeScenario {
  std::vector<std::vector<AngularBin>> support;  ///< per BS
  std::vector<std::vector<double>> variances;    ///< per BS, one per support bin
  double sigma_n2 = 1.0;
  int n_rf = 1;
  bool null_trials = true;  ///< also run the signal-free twin of every trial
};

/// Monte Carlo P_D / P_F with a fixed threshold. Each trial draws fresh gains and noise for
/// the active scenario, and fresh noise for the matching null scenario. Deterministic in
/// (seed, trials) for any thread count.
ProbabilityReport monte_carlo_probe(const SchemeCodebook& cb, const ProbeScenario& scenario, double tau,
                                    std::int64_t trials, std::uint64_t seed, int threads = 1);

/// Draws a support of the given size per BS. With `disjoint`, no bin is used by two BSs.
std::vector<std::vector<AngularBin>> draw_support(std::span<const int> paths_per_bs, int n_r, int n_t, bool disjoint,
                                                  Rng& rng);

}  // namespace celldisc
