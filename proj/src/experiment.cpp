// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "celldisc/analytics.hpp"
#include "celldisc/network.hpp"
#include "celldisc/parallel.hpp"

namespace celldisc {

namespace {

// Stream tags for derive_seed; arbitrary but fixed.
constexpr std::uint64_t kRbfStream = 0x524246;
constexpr std::uint64_t kNullStream = 0x4e554c4c;
constexpr std::uint64_t kKappaStream = 0x4b415050;

SchemeCodebook build_codebook(const ExperimentConfig& cfg, const SchemeEntry& entry, int n_rf, double* mu) {
  const SchemeParams p = cfg.scheme_params(entry, n_rf);
  if (entry.scheme == Scheme::Rbf)
    return best_rbf_codebook(p, cfg.rbf_draws, derive_seed(cfg.seed, kRbfStream, p.u, p.n_rf), mu);
  Rng unused(0);
  return make_codebook(entry.scheme, p, unused);
}

std::vector<CMatrix> zero_channels(const ExperimentConfig& cfg) {
  return std::vector<CMatrix>(cfg.n_bs, CMatrix::Zero(cfg.n_r, cfg.n_t));
}

// Detector cells that see a support bin of an active BS, as a mask.
std::vector<char> true_cells(const PreparedScheme& s, const Realization& real) {
  std::vector<char> mask(s.detector.cells(), 0);
  for (int i : real.active)
    for (const auto& b : real.support[i]) mask[s.detector.cell_of(i, b)] = 1;
  return mask;
}

bool hypothesis_correct(const CellHypothesis& hyp, const Realization& real) {
  if (hyp.bs < 0) {
    for (int i : real.active)
      for (const auto& b : real.support[i])
        if (hyp.covers(b)) return true;
    return false;
  }
  if (hyp.bs >= static_cast<int>(real.support.size())) return false;
  for (const auto& b : real.support[hyp.bs])
    if (hyp.covers(b)) return true;
  return false;
}

int argmax_lowest(const RVector& m) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < m.size(); ++k)
    if (m[k] > m[best]) best = k;
  return static_cast<int>(best);
}

double reported_threshold(const ExperimentConfig& cfg, double value) {
  if (cfg.threshold_rule == ThresholdRule::RelativeMax) return value;
  const double s2 = cfg.noise_variance();
  return s2 > 0.0 ? value / s2 : 0.0;
}

void check_criterion(const ExperimentConfig& cfg) {
  if (cfg.criterion != Criterion::StrongestBs) return;
  for (const auto& s : cfg.schemes)
    if (!identifies_bs(s.scheme))
      throw Error(ErrorCode::ConfigError,
                  "strongest_bs needs BS identities; scheme " + s.label + " cannot provide them");
}

std::vector<double> thresholds_for(const ExperimentConfig& cfg, std::span<const PreparedScheme> prepared,
                                   int r_index, double r) {
  std::vector<double> out;
  for (const auto& s : prepared)
    out.push_back(cfg.threshold_rule == ThresholdRule::NullCfar ? calibrate_null_cfar(cfg, s)
                                                                : calibrate_relative_max(cfg, s, r_index, r));
  return out;
}

CsvTable curve_table(const ExperimentConfig& cfg, std::span<const int> n_rf_values) {
  check_criterion(cfg);
  require(!cfg.schemes.empty(), ErrorCode::ConfigError, "no [scheme ...] sections in the config");
  CsvTable table({"label", "scheme", "n_rf", "observations", "r_m", "pd_hat", "pd_stderr", "kappa", "trials"},
                 config_hash(cfg));
  for (int n_rf : n_rf_values) {
    std::vector<PreparedScheme> prepared;
    for (const auto& e : cfg.schemes) prepared.push_back(prepare_scheme(cfg, e, n_rf));
    std::vector<double> null_tau;
    if (cfg.threshold_rule == ThresholdRule::NullCfar) null_tau = thresholds_for(cfg, prepared, 0, cfg.r_grid.front());
    for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
      const double r = cfg.r_grid[ri];
      const std::vector<double> th =
          cfg.threshold_rule == ThresholdRule::NullCfar ? null_tau : thresholds_for(cfg, prepared, static_cast<int>(ri), r);
      const auto out = run_point(cfg, prepared, th, static_cast<int>(ri), r, false);
      for (std::size_t s = 0; s < prepared.size(); ++s) {
        const double p = static_cast<double>(out[s].successes) / static_cast<double>(out[s].trials);
        table.add_row({prepared[s].label, std::string(scheme_tag(prepared[s].codebook.scheme)), std::to_string(n_rf),
                       std::to_string(prepared[s].codebook.total_observations()), format_double(r), format_double(p),
                       format_double(std::sqrt(p * (1.0 - p) / static_cast<double>(out[s].trials))),
                       format_double(reported_threshold(cfg, th[s])), std::to_string(out[s].trials)});
      }
    }
  }
  return table;
}

}  // namespace

SchemeCodebook best_rbf_codebook(const SchemeParams& params, int draws, std::uint64_t seed, double* mu_out) {
  require(draws >= 1, ErrorCode::InvalidArgument, "need at least one draw");
  const int m_obs = params.n_t * params.n_r / (1 << params.u);
  std::optional<SchemeCodebook> best;
  double best_mu = 0.0;
  for (int d = 0; d < draws; ++d) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(d)));
    SchemeCodebook cb = rbf_codebook(params.n_t, params.n_r, params.u, params.n_bs, m_obs, params.rho, rng, params.n_rf);
    if (draws == 1 && !mu_out) return cb;
    const SensingMatrix sm = sensing_matrix(cb);
    if (!best) {
      best_mu = mutual_coherence(sm);
      best = std::move(cb);
      continue;
    }
    // Strictly better only: the early-exit check runs against a bound just below the best.
    if (coherence_at_most(sm, best_mu - 0.5 / m_obs)) {
      best_mu = mutual_coherence(sm);
      best = std::move(cb);
    }
  }
  if (mu_out) *mu_out = best_mu;
  return *best;
}

PreparedScheme prepare_scheme(const ExperimentConfig& cfg, const SchemeEntry& entry, int n_rf) {
  double mu = 0.0;
  SchemeCodebook cb = build_codebook(cfg, entry, n_rf, entry.scheme == Scheme::Rbf ? &mu : nullptr);
  CellDetector det(cb);
  PreparedScheme out{entry.label, std::move(cb), std::move(det), n_rf, std::nullopt};
  if (entry.scheme == Scheme::Rbf) out.mu = mu;
  return out;
}

Realization draw_realization(const ExperimentConfig& cfg, double r, Rng& rng) {
  Realization real;
  real.support.assign(cfg.n_bs, {});
  if (cfg.channel == ChannelMode::Geometric) {
    NetworkRealization net = build_network(r, cfg.network(), rng);
    real.active = net.active_set;
    for (const auto& ch : net.channels) real.h.push_back(synthesize_channel(ch));
  } else {
    const int n_active = static_cast<int>(cfg.paths.size());
    std::vector<int> idx(cfg.n_bs);
    std::iota(idx.begin(), idx.end(), 0);
    for (int j = 0; j < n_active; ++j) {
      std::uniform_int_distribution<int> pick(j, cfg.n_bs - 1);
      std::swap(idx[j], idx[pick(rng)]);
    }
    std::vector<int> active(idx.begin(), idx.begin() + n_active);
    real.h.assign(cfg.n_bs, CMatrix::Zero(cfg.n_r, cfg.n_t));
    for (int j = 0; j < n_active; ++j) {
      const int k = cfg.paths[j];
      const std::vector<double> var(k, static_cast<double>(cfg.n_t) * cfg.n_r * cfg.gain_alpha / k);
      const MultipathChannel ch = sample_ideal_channel(k, var, cfg.n_r, cfg.n_t, rng, {}, cfg.d_over_lambda);
      real.h[active[j]] = synthesize_channel(ch);
      for (const auto& path : ch.paths) real.support[active[j]].push_back(on_grid_bin(path, cfg.n_r, cfg.n_t, cfg.d_over_lambda));
    }
    std::sort(active.begin(), active.end());
    real.active = active;
  }
  double peak = -1.0;
  for (int i : real.active) {
    const double delta = peak_relative_delta(angular_transform(real.h[i], 0.0).g);
    const AngularChannel ang = angular_transform(real.h[i], delta);
    if (cfg.channel == ChannelMode::Geometric) real.support[i] = ang.support;
    for (Eigen::Index b = 0; b < ang.g.cols(); ++b)
      for (Eigen::Index a = 0; a < ang.g.rows(); ++a)
        if (std::norm(ang.g(a, b)) > peak) {
          peak = std::norm(ang.g(a, b));
          real.strongest_bs = i;
          real.strongest_bin = {static_cast<int>(a), static_cast<int>(b)};
        }
  }
  return real;
}

double calibrate_null_cfar(const ExperimentConfig& cfg, const PreparedScheme& s) {
  const int n = cfg.resolved_calibration_trials();
  const std::vector<CMatrix> zero = zero_channels(cfg);
  std::vector<double> maxima(n);
  const int workers = resolve_threads(cfg.threads);
  parallel_chunks(n, workers, [&](int, std::int64_t begin, std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      Rng rng = make_rng(derive_seed(cfg.seed, kNullStream, static_cast<std::uint64_t>(k)));
      const ObservationSet obs =
          simulate_observations(std::span<const CMatrix>(zero), s.codebook, cfg.noise_variance(), s.n_rf, rng);
      maxima[k] = s.detector.metrics(obs).maxCoeff();
    }
  });
  return calibrate_null_threshold(maxima, cfg.target_pf);
}

double calibrate_relative_max(const ExperimentConfig& cfg, const PreparedScheme& s, int r_index, double r) {
  const int n = cfg.resolved_calibration_trials();
  std::vector<double> ratios(n);
  const int workers = resolve_threads(cfg.threads);
  parallel_chunks(n, workers, [&](int, std::int64_t begin, std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      Rng rng = make_rng(derive_seed(cfg.seed, kKappaStream, static_cast<std::uint64_t>(r_index), static_cast<std::uint64_t>(k)));
      const Realization real = draw_realization(cfg, r, rng);
      const ObservationSet obs =
          simulate_observations(std::span<const CMatrix>(real.h), s.codebook, cfg.noise_variance(), s.n_rf, rng);
      const RVector m = s.detector.metrics(obs);
      const std::vector<char> mask = true_cells(s, real);
      double off = 0.0;
      for (Eigen::Index c = 0; c < m.size(); ++c)
        if (!mask[c]) off = std::max(off, m[c]);
      const double top = m.maxCoeff();
      ratios[k] = top > 0.0 ? off / top : 0.0;
    }
  });
  try {
    return calibrate_kappa(ratios, cfg.target_pf);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (scheme " + s.label + ", R = " + format_double(r) + ")");
  }
}

std::vector<PointOutcome> run_point(const ExperimentConfig& cfg, std::span<const PreparedScheme> schemes,
                                    std::span<const double> thresholds, int r_index, double r, bool collect_gains) {
  require(thresholds.size() == schemes.size(), ErrorCode::InvalidArgument, "one threshold per scheme required");
  const int workers = resolve_threads(cfg.threads);
  const std::int64_t trials = cfg.trials;
  std::vector<std::vector<PointOutcome>> partial(workers, std::vector<PointOutcome>(schemes.size()));
  std::vector<std::vector<double>> gains(schemes.size(), std::vector<double>(collect_gains ? trials : 0));
  const double sigma_n2 = cfg.noise_variance();

  parallel_chunks(trials, workers, [&](int w, std::int64_t begin, std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      Rng chan_rng = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r_index), static_cast<std::uint64_t>(k), 0));
      const Realization real = draw_realization(cfg, r, chan_rng);
      for (std::size_t s = 0; s < schemes.size(); ++s) {
        const PreparedScheme& ps = schemes[s];
        Rng noise = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r_index), static_cast<std::uint64_t>(k), 1));
        const ObservationSet obs = simulate_observations(std::span<const CMatrix>(real.h), ps.codebook, sigma_n2, ps.n_rf, noise);
        const RVector m = ps.detector.metrics(obs);
        const int top = argmax_lowest(m);
        const double tau =
            cfg.threshold_rule == ThresholdRule::NullCfar ? thresholds[s] : thresholds[s] * m[top];
        bool ok = false;
        if (cfg.criterion == Criterion::StrongestBs) {
          if (m[top] > tau) {
            const CellHypothesis hyp = ps.detector.decode(obs, top);
            ok = hyp.bs == real.strongest_bs && hyp.covers(real.strongest_bin);
          }
        } else {
          const std::vector<char> mask = true_cells(ps, real);
          for (Eigen::Index c = 0; c < m.size() && !ok; ++c)
            if (mask[c] && m[c] > tau) ok = hypothesis_correct(ps.detector.decode(obs, static_cast<int>(c)), real);
        }
        partial[w][s].trials += 1;
        partial[w][s].successes += ok;
        if (collect_gains) {
          const CellHypothesis hyp = ps.detector.decode(obs, top);
          gains[s][k] = (hyp.bs >= 0 && hyp.bs < cfg.n_bs) ? beamforming_gain(real.h[hyp.bs], hyp) : 0.0;
        }
      }
    }
  });
  std::vector<PointOutcome> out(schemes.size());
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    for (const auto& p : partial) {
      out[s].trials += p[s].trials;
      out[s].successes += p[s].successes;
    }
    out[s].gains = std::move(gains[s]);
  }
  return out;
}

CsvTable run_detection_curve(const ExperimentConfig& cfg) {
  const int n_rf[] = {cfg.n_rf};
  return curve_table(cfg, n_rf);
}

CsvTable run_rf_chain_study(const ExperimentConfig& cfg) { return curve_table(cfg, cfg.n_rf_grid); }

std::vector<GainSamples> bfgain_samples(const ExperimentConfig& cfg) {
  for (const auto& e : cfg.schemes)
    if (!(e.scheme == Scheme::Mubb || e.scheme == Scheme::Rbf || e.scheme == Scheme::DiffBeamCombine))
      throw Error(ErrorCode::ConfigError, "beamforming gain needs mubb, rbf or dbc; got " + e.label);
  require(!cfg.schemes.empty(), ErrorCode::ConfigError, "no [scheme ...] sections in the config");
  std::vector<PreparedScheme> prepared;
  for (const auto& e : cfg.schemes) prepared.push_back(prepare_scheme(cfg, e, cfg.n_rf));
  const std::vector<double> th(prepared.size(), 0.0);
  std::vector<GainSamples> out;
  for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
    auto point = run_point(cfg, prepared, th, static_cast<int>(ri), cfg.r_grid[ri], true);
    for (std::size_t s = 0; s < prepared.size(); ++s) {
      GainSamples g{prepared[s].label, cfg.r_grid[ri], prepared[s].codebook.total_observations(),
                    std::move(point[s].gains)};
      std::sort(g.samples.begin(), g.samples.end());
      out.push_back(std::move(g));
    }
  }
  return out;
}

CsvTable run_bfgain_cdf(const ExperimentConfig& cfg) {
  CsvTable table({"label", "scheme", "r_m", "observations", "gain_value", "cdf"}, config_hash(cfg));
  const auto samples = bfgain_samples(cfg);
  for (const auto& g : samples) {
    const SchemeEntry* entry = nullptr;
    for (const auto& e : cfg.schemes)
      if (e.label == g.label) entry = &e;
    const std::size_t n = g.samples.size();
    for (int k = 1; k <= 100; ++k) {
      const std::size_t idx = static_cast<std::size_t>(std::ceil(k / 100.0 * static_cast<double>(n))) - 1;
      table.add_row({g.label, std::string(scheme_tag(entry->scheme)), format_double(g.r), std::to_string(g.observations),
                     format_double(g.samples[std::min(idx, n - 1)]), format_double(k / 100.0)});
    }
  }
  return table;
}

CsvTable coherence_table(const ExperimentConfig& cfg) {
  require(!cfg.schemes.empty(), ErrorCode::ConfigError, "no [scheme ...] sections in the config");
  CsvTable table({"label", "scheme", "n_bs", "n_rf", "observations", "mu_numeric", "mu_closed_form"}, config_hash(cfg));
  for (const auto& e : cfg.schemes) {
    const PreparedScheme ps = prepare_scheme(cfg, e, cfg.n_rf);
    const double mu = ps.mu ? *ps.mu : mutual_coherence(sensing_matrix(ps.codebook));
    const auto closed = scheme_mu_closed_form(e.scheme, cfg.scheme_params(e));
    table.add_row({e.label, std::string(scheme_tag(e.scheme)), std::to_string(cfg.n_bs), std::to_string(cfg.n_rf),
                   std::to_string(ps.codebook.total_observations()), format_double(mu),
                   closed ? format_double(*closed) : ""});
  }
  return table;
}

}  // namespace celldisc
