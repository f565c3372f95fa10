// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "celldisc/detection.hpp"
#include "celldisc/measurement.hpp"
#include "celldisc/parallel.hpp"

namespace celldisc {

namespace {

// 1 - prod_k (1 - exp(-tau / lambda_k)) evaluated as -expm1(sum log1p(-exp(-tau/lambda_k))).
double one_minus_product(double tau, std::span<const double> lambdas) {
  double log_miss = 0.0;
  for (double lam : lambdas) {
    if (lam <= 0.0) continue;
    const double fire = std::exp(-tau / lam);
    if (fire >= 1.0) return 1.0;
    log_miss += std::log1p(-fire);
  }
  return -std::expm1(log_miss);
}

}  // namespace

double pf_beam_sweep(double tau, double sigma_n2, int slots, int support_size) {
  require(tau >= 0.0 && sigma_n2 > 0.0, ErrorCode::InvalidArgument, "need tau >= 0 and positive noise");
  require(support_size >= 0 && support_size <= slots, ErrorCode::InvalidArgument, "support larger than slot count");
  const int free_slots = slots - support_size;
  if (free_slots == 0) return 0.0;
  const double per_slot = std::exp(-tau / sigma_n2);
  if (per_slot >= 1.0) return 1.0;
  return -std::expm1(free_slots * std::log1p(-per_slot));
}

double pd_nonoverlap(double tau, double sigma_n2, double rho, std::span<const double> variances) {
  require(tau >= 0.0 && sigma_n2 >= 0.0 && rho >= 0.0, ErrorCode::InvalidArgument, "negative parameter");
  std::vector<double> lambdas;
  for (double v : variances) lambdas.push_back(sigma_n2 + rho * v);
  if (tau == 0.0) return lambdas.empty() ? 0.0 : 1.0;
  return one_minus_product(tau, lambdas);
}

double pd_overlap_bound(double tau, double sigma_n2, double rho, double max_variance) {
  require(tau >= 0.0 && sigma_n2 >= 0.0 && rho >= 0.0 && max_variance >= 0.0, ErrorCode::InvalidArgument,
          "negative parameter");
  const double lam = sigma_n2 + rho * max_variance;
  if (tau == 0.0) return 1.0;
  return lam > 0.0 ? std::exp(-tau / lam) : 0.0;
}

double pd_cs_exact(const CMatrix& psi_t, std::span<const double> d_diag, double rho, double sigma_n2, double tau) {
  require(psi_t.cols() >= 1, ErrorCode::InvalidArgument, "empty support");
  require(static_cast<Eigen::Index>(d_diag.size()) == psi_t.cols(), ErrorCode::DimensionMismatch,
          "one variance per support column required");
  require(tau >= 0.0, ErrorCode::InvalidArgument, "threshold must be non-negative");
  const CMatrix t = psi_t.adjoint() * psi_t;
  RVector d(psi_t.cols());
  for (Eigen::Index k = 0; k < d.size(); ++k) d[k] = d_diag[k];
  CMatrix c = rho * t * d.asDiagonal() * t + sigma_n2 * t;
  c = 0.5 * (c + c.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(c, Eigen::EigenvaluesOnly);
  require(eig.info() == Eigen::Success, ErrorCode::NumericalFailure, "eigensolver did not converge");
  const RVector& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<double> lambdas;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    require(ev[k] >= -1e-9 * scale, ErrorCode::NumericalFailure, "covariance has a negative eigenvalue");
    lambdas.push_back(std::max(0.0, ev[k]));
  }
  if (tau == 0.0) return 1.0;
  return one_minus_product(tau, lambdas);
}

LowerBound pd_cs_lower_bound(int support_size, double mu, double sigma_min2, double rho, double sigma_n2, double tau) {
  require(support_size >= 1 && mu >= 0.0, ErrorCode::InvalidArgument, "need |T| >= 1 and mu >= 0");
  const double mubar = 1.0 - (support_size - 1) * mu;
  if (mubar <= 0.0) return {0.0, true};
  const double lam = rho * sigma_min2 * mubar * mubar + sigma_n2 * mubar;
  if (tau == 0.0) return {1.0, false};
  const std::vector<double> lambdas(support_size, lam);
  return {one_minus_product(tau, lambdas), false};
}

std::optional<double> scheme_mu_closed_form(Scheme scheme, const SchemeParams& p) {
  const bool combined = p.beta_t * p.beta_r > 1;
  switch (scheme) {
    case Scheme::BeamSweep:
    case Scheme::BeamCombine:
      return (p.n_bs >= 2 || (scheme == Scheme::BeamCombine && combined)) ? 1.0 : 0.0;
    case Scheme::DiffBeamSweep:
    case Scheme::DiffBeamCombine:
      if (scheme == Scheme::DiffBeamCombine && combined) return 1.0;
      return p.n_bs >= 2 ? std::sqrt(0.5 * (1.0 + std::cos(2.0 * kPi / (p.n_bs + 1)))) : 0.0;
    case Scheme::Mubb:
      // A single unitary block has orthogonal columns.
      return (p.n_bs << p.u) >= 2 ? std::sqrt(static_cast<double>(1 << p.u) / p.n_t) : 0.0;
    case Scheme::Rbf:
      return std::nullopt;
  }
  return std::nullopt;
}

void ProbabilityReport::merge(const ProbabilityReport& other) {
  trials += other.trials;
  pd_hits += other.pd_hits;
  pf_hits += other.pf_hits;
  pf_offsupport_hits += other.pf_offsupport_hits;
}

double ProbabilityReport::stderr_of(double p) const {
  return trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<std::vector<AngularBin>> draw_support(std::span<const int> paths_per_bs, int n_r, int n_t, bool disjoint,
                                                  Rng& rng) {
  std::vector<std::vector<AngularBin>> out;
  std::vector<AngularBin> used;
  for (int k : paths_per_bs) {
    const std::vector<double> unit(k, 1.0);
    const MultipathChannel ch =
        sample_ideal_channel(k, unit, n_r, n_t, rng, disjoint ? std::span<const AngularBin>(used) : std::span<const AngularBin>());
    std::vector<AngularBin> bins;
    for (const auto& path : ch.paths) bins.push_back(on_grid_bin(path, n_r, n_t, ch.d_over_lambda));
    used.insert(used.end(), bins.begin(), bins.end());
    out.push_back(std::move(bins));
  }
  return out;
}

ProbabilityReport monte_carlo_probe(const SchemeCodebook& cb, const ProbeScenario& sc, double tau,
                                    std::int64_t trials, std::uint64_t seed, int threads) {
  require(trials >= 1, ErrorCode::InvalidArgument, "need at least one trial");
  require(static_cast<int>(sc.support.size()) == cb.n_bs() && sc.variances.size() == sc.support.size(),
          ErrorCode::DimensionMismatch, "scenario must list support and variances for every BS");
  const int n_r = static_cast<int>(cb.w_r.rows());
  const int n_t = static_cast<int>(cb.w_t.front().rows());
  const CellDetector detector(cb);

  std::vector<char> true_cell(detector.cells(), 0);
  for (int i = 0; i < cb.n_bs(); ++i) {
    require(sc.variances[i].size() == sc.support[i].size(), ErrorCode::DimensionMismatch,
            "one variance per support bin required");
    for (const auto& b : sc.support[i]) true_cell[detector.cell_of(i, b)] = 1;
  }

  const int workers = resolve_threads(threads);
  std::vector<ProbabilityReport> partial(workers);
  parallel_chunks(trials, workers, [&](int w, std::int64_t begin, std::int64_t end) {
    std::vector<CMatrix> h(cb.n_bs());
    const std::vector<CMatrix> zero(cb.n_bs(), CMatrix::Zero(n_r, n_t));
    ProbabilityReport& acc = partial[w];
    for (std::int64_t k = begin; k < end; ++k) {
      Rng gains = make_rng(derive_seed(seed, static_cast<std::uint64_t>(k), 0));
      for (int i = 0; i < cb.n_bs(); ++i) {
        CMatrix g = CMatrix::Zero(n_r, n_t);
        for (std::size_t j = 0; j < sc.support[i].size(); ++j)
          g(sc.support[i][j].rx, sc.support[i][j].tx) += complex_normal(gains, sc.variances[i][j]);
        h[i] = from_angular(g);
      }
      Rng noise = make_rng(derive_seed(seed, static_cast<std::uint64_t>(k), 1));
      const RVector m = detector.metrics(simulate_observations(std::span<const CMatrix>(h), cb, sc.sigma_n2, sc.n_rf, noise));
      bool on = false, off = false;
      for (Eigen::Index c = 0; c < m.size(); ++c)
        if (m[c] > tau) (true_cell[c] ? on : off) = true;
      acc.trials += 1;
      acc.pd_hits += on;
      acc.pf_offsupport_hits += off;
      if (sc.null_trials) {
        Rng null_noise = make_rng(derive_seed(seed, static_cast<std::uint64_t>(k), 2));
        const RVector mn =
            detector.metrics(simulate_observations(std::span<const CMatrix>(zero), cb, sc.sigma_n2, sc.n_rf, null_noise));
        acc.pf_hits += (mn.maxCoeff() > tau);
      }
    }
  });
  ProbabilityReport out;
  for (const auto& p : partial) out.merge(p);
  return out;
}

}  // namespace celldisc
