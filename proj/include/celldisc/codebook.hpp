// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "celldisc/common.hpp"

namespace celldisc {

enum class Scheme { BeamSweep, BeamCombine, DiffBeamSweep, DiffBeamCombine, Mubb, Rbf };

/// Short lowercase tag: bs, bc, dbs, dbc, mubb, rbf.
std::string_view scheme_tag(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view tag);

bool is_differential(Scheme scheme);
/// Schemes detected with the matched filter over the whole sensing matrix.
bool is_compressive(Scheme scheme);
/// Schemes whose detections reveal the transmitting BS.
bool identifies_bs(Scheme scheme);

struct SchemeParams {
  int n_t = 64;
  int n_r = 8;
  int n_bs = 1;
  int beta_t = 1;
  int beta_r = 1;
  int u = 0;
  int n_rf = 1;  ///< only changes the RBF design; other schemes accept any n_rf at simulation time
  double rho = 1.0;
};

/// Training-phase beamformers and pilots for one scheme.
///
/// Grid schemes pair every receive column p < P with every transmit column q < Q; the
/// observation of pass `phase` sits at flat index phase*P*Q + q*P + p. RBF instead uses
/// one (receive, transmit) column pair per observation m.
struct SchemeCodebook {
  Scheme scheme = Scheme::BeamSweep;
  SchemeParams params;
  CMatrix w_r;                           ///< N_r x P (RBF: N_r x M)
  std::vector<CMatrix> w_t;              ///< per BS, N_t x Q (RBF: N_t x M)
  std::vector<std::vector<cd>> pilots;   ///< [phase][bs], each of magnitude sqrt(rho)
  bool per_observation = false;

  int phases() const { return static_cast<int>(pilots.size()); }
  int n_bs() const { return static_cast<int>(w_t.size()); }
  int receive_beams() const { return static_cast<int>(w_r.cols()); }
  int transmit_beams() const { return w_t.empty() ? 0 : static_cast<int>(w_t.front().cols()); }
  int observations_per_phase() const;
  int total_observations() const { return phases() * observations_per_phase(); }
};

/// Squared transmit-beam norm summed over one observation pass of BS `bs`.
double training_power(const SchemeCodebook& cb, int bs);

SchemeCodebook beam_sweep_codebook(int n_t, int n_r, int n_bs, double rho = 1.0);

SchemeCodebook beam_combine_codebook(int n_t, int n_r, int beta_t, int beta_r, int n_bs, double rho = 1.0);

/// Second-pass pilots exp(j 2 pi i / (n_bs + 1)) for BS i = 1..n_bs (returned 0-based).
std::vector<cd> differential_pilots(int n_bs);

SchemeCodebook diff_beam_sweep_codebook(int n_t, int n_r, int n_bs, double rho = 1.0);

SchemeCodebook diff_beam_combine_codebook(int n_t, int n_r, int beta_t, int beta_r, int n_bs, double rho = 1.0);

/// Largest BS count the MUB design supports: every BS needs 2^u non-identity bases of
/// dimension n_t / 2^u, and there are n_t / 2^u of them.
int mubb_capacity(int n_t, int u);

SchemeCodebook mubb_codebook(int n_t, int n_r, int u, int n_bs, double rho = 1.0);

/// Rademacher beams in the DFT domain. With n_rf > 1, the n_rf observations of one slot share
/// the transmit beams and draw independent receive beams.
SchemeCodebook rbf_codebook(int n_t, int n_r, int u, int n_bs, int m_obs, double rho, Rng& rng, int n_rf = 1);

/// Builds the codebook for `scheme`; `rng` is only used by RBF.
SchemeCodebook make_codebook(Scheme scheme, const SchemeParams& params, Rng& rng);

}  // namespace celldisc
