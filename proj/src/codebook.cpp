// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/codebook.hpp"

#include <cmath>

#include "celldisc/dft.hpp"
#include "celldisc/galois.hpp"
#include "celldisc/mub.hpp"

namespace celldisc {

std::string_view scheme_tag(Scheme scheme) {
  switch (scheme) {
    case Scheme::BeamSweep: return "bs";
    case Scheme::BeamCombine: return "bc";
    case Scheme::DiffBeamSweep: return "dbs";
    case Scheme::DiffBeamCombine: return "dbc";
    case Scheme::Mubb: return "mubb";
    case Scheme::Rbf: return "rbf";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view tag) {
  for (Scheme s : {Scheme::BeamSweep, Scheme::BeamCombine, Scheme::DiffBeamSweep, Scheme::DiffBeamCombine,
                   Scheme::Mubb, Scheme::Rbf})
    if (scheme_tag(s) == tag) return s;
  return std::nullopt;
}

bool is_differential(Scheme scheme) {
  return scheme == Scheme::DiffBeamSweep || scheme == Scheme::DiffBeamCombine;
}

bool is_compressive(Scheme scheme) { return scheme == Scheme::Mubb || scheme == Scheme::Rbf; }

bool identifies_bs(Scheme scheme) { return is_differential(scheme) || is_compressive(scheme); }

int SchemeCodebook::observations_per_phase() const {
  return per_observation ? receive_beams() : receive_beams() * transmit_beams();
}

double training_power(const SchemeCodebook& cb, int bs) {
  require(bs >= 0 && bs < cb.n_bs(), ErrorCode::InvalidArgument, "BS index out of range");
  const double per_beam_sum = cb.w_t[bs].colwise().squaredNorm().sum();
  return cb.per_observation ? per_beam_sum : per_beam_sum * cb.receive_beams();
}

namespace {

void check_sizes(int n_t, int n_r, int n_bs) {
  require(n_t >= 1 && n_r >= 1, ErrorCode::InvalidDimension, "array sizes must be positive");
  require(n_bs >= 1, ErrorCode::InvalidDimension, "need at least one BS");
}

std::vector<std::vector<cd>> single_pass_pilots(int n_bs, double rho) {
  return {std::vector<cd>(n_bs, cd(std::sqrt(rho), 0.0))};
}

std::vector<std::vector<cd>> two_pass_pilots(int n_bs, double rho) {
  auto pilots = single_pass_pilots(n_bs, rho);
  std::vector<cd> second = differential_pilots(n_bs);
  for (auto& x : second) x *= std::sqrt(rho);
  pilots.push_back(std::move(second));
  return pilots;
}

// Combined beams: column p sums DFT columns [p*beta, (p+1)*beta) with the given scale.
CMatrix combined_beams(int n, int beta, double scale) {
  const CMatrix& f = cached_dft_matrix(n);
  CMatrix w(n, n / beta);
  for (int p = 0; p < n / beta; ++p) w.col(p) = scale * f.middleCols(p * beta, beta).rowwise().sum();
  return w;
}

SchemeCodebook combining_codebook(Scheme scheme, int n_t, int n_r, int beta_t, int beta_r, int n_bs, double rho) {
  check_sizes(n_t, n_r, n_bs);
  require(beta_t >= 1 && beta_r >= 1 && n_t % beta_t == 0 && n_r % beta_r == 0, ErrorCode::InvalidPartition,
          "combining factors must divide the array sizes");
  SchemeCodebook cb;
  cb.scheme = scheme;
  cb.params.n_t = n_t;
  cb.params.n_r = n_r;
  cb.params.n_bs = n_bs;
  cb.params.beta_t = beta_t;
  cb.params.beta_r = beta_r;
  cb.params.rho = rho;
  cb.w_r = combined_beams(n_r, beta_r, 1.0 / std::sqrt(static_cast<double>(beta_r)));
  const CMatrix wt = combined_beams(n_t, beta_t, std::sqrt(static_cast<double>(beta_r)));
  cb.w_t.assign(n_bs, wt);
  cb.pilots = is_differential(scheme) ? two_pass_pilots(n_bs, rho) : single_pass_pilots(n_bs, rho);
  return cb;
}

}  // namespace

SchemeCodebook beam_sweep_codebook(int n_t, int n_r, int n_bs, double rho) {
  return combining_codebook(Scheme::BeamSweep, n_t, n_r, 1, 1, n_bs, rho);
}

SchemeCodebook beam_combine_codebook(int n_t, int n_r, int beta_t, int beta_r, int n_bs, double rho) {
  return combining_codebook(Scheme::BeamCombine, n_t, n_r, beta_t, beta_r, n_bs, rho);
}

std::vector<cd> differential_pilots(int n_bs) {
  require(n_bs >= 1, ErrorCode::InvalidDimension, "need at least one BS");
  std::vector<cd> x(n_bs);
  for (int i = 0; i < n_bs; ++i) x[i] = std::polar(1.0, 2.0 * kPi * (i + 1) / (n_bs + 1));
  return x;
}

SchemeCodebook diff_beam_sweep_codebook(int n_t, int n_r, int n_bs, double rho) {
  return combining_codebook(Scheme::DiffBeamSweep, n_t, n_r, 1, 1, n_bs, rho);
}

SchemeCodebook diff_beam_combine_codebook(int n_t, int n_r, int beta_t, int beta_r, int n_bs, double rho) {
  return combining_codebook(Scheme::DiffBeamCombine, n_t, n_r, beta_t, beta_r, n_bs, rho);
}

int mubb_capacity(int n_t, int u) {
  require(u >= 0 && u < 31 && n_t % (1 << u) == 0, ErrorCode::InvalidPartition, "2^u must divide n_t");
  const int d = n_t >> u;
  return d >> u;
}

SchemeCodebook mubb_codebook(int n_t, int n_r, int u, int n_bs, double rho) {
  check_sizes(n_t, n_r, n_bs);
  require(u >= 0 && u < 31 && n_t % (1 << u) == 0, ErrorCode::InvalidPartition, "2^u must divide n_t");
  const int blocks = 1 << u;
  const int d_t = n_t / blocks;
  require(prime_power(d_t).has_value(), ErrorCode::UnsupportedDimension,
          "n_t / 2^u = " + std::to_string(d_t) + " is not a prime power");
  require(n_r == 1 || prime_power(n_r).has_value(), ErrorCode::UnsupportedDimension,
          "n_r = " + std::to_string(n_r) + " is not a prime power");
  require(n_bs <= mubb_capacity(n_t, u), ErrorCode::CapacityExceeded,
          "at most " + std::to_string(mubb_capacity(n_t, u)) + " BSs fit with u = " + std::to_string(u));

  const MubFamily tx_family = mub_family(d_t, blocks * n_bs + 1);
  const CMatrix rx_basis = n_r == 1 ? CMatrix::Identity(1, 1) : mub_family(n_r, 2).bases[1];

  SchemeCodebook cb;
  cb.scheme = Scheme::Mubb;
  cb.params.n_t = n_t;
  cb.params.n_r = n_r;
  cb.params.n_bs = n_bs;
  cb.params.u = u;
  cb.params.rho = rho;
  // w_r^(p) = F (row p of Mbar)^*, i.e. W_r = F Mbar^H.
  cb.w_r = cached_dft_matrix(n_r) * rx_basis.adjoint();
  const CMatrix& ft = cached_dft_matrix(n_t);
  for (int i = 0; i < n_bs; ++i) {
    CMatrix concat(d_t, n_t);
    for (int j = 0; j < blocks; ++j) concat.middleCols(j * d_t, d_t) = tx_family.bases[1 + i * blocks + j];
    // w_t^(q) = F (row q of M^(i))^T, i.e. W_t = F M^(i)T.
    cb.w_t.push_back(ft * concat.transpose());
  }
  cb.pilots = single_pass_pilots(n_bs, rho);
  return cb;
}

SchemeCodebook rbf_codebook(int n_t, int n_r, int u, int n_bs, int m_obs, double rho, Rng& rng, int n_rf) {
  check_sizes(n_t, n_r, n_bs);
  require(u >= 0 && u < 31 && (static_cast<long long>(n_t) * n_r) % (1LL << u) == 0, ErrorCode::InvalidPartition,
          "2^u must divide n_t n_r");
  require(m_obs == n_t * n_r / (1 << u), ErrorCode::InvalidArgument, "RBF uses M = n_t n_r / 2^u observations");
  require(n_rf >= 1 && m_obs % n_rf == 0, ErrorCode::InvalidArgument, "RF chains must divide the observation count");

  SchemeCodebook cb;
  cb.scheme = Scheme::Rbf;
  cb.params.n_t = n_t;
  cb.params.n_r = n_r;
  cb.params.n_bs = n_bs;
  cb.params.u = u;
  cb.params.n_rf = n_rf;
  cb.params.rho = rho;
  cb.per_observation = true;

  const double tx_amp = std::sqrt(static_cast<double>(1 << u) / n_t);
  const double rx_amp = 1.0 / std::sqrt(static_cast<double>(n_r));
  std::bernoulli_distribution coin(0.5);
  CMatrix rx_dft_domain(n_r, m_obs);
  std::vector<CMatrix> tx_dft_domain(n_bs, CMatrix(n_t, m_obs));
  for (int slot = 0; slot < m_obs / n_rf; ++slot) {
    for (int i = 0; i < n_bs; ++i) {
      CVector v(n_t);
      for (int b = 0; b < n_t; ++b) v[b] = coin(rng) ? tx_amp : -tx_amp;
      for (int s = 0; s < n_rf; ++s) tx_dft_domain[i].col(slot * n_rf + s) = v;
    }
    for (int s = 0; s < n_rf; ++s)
      for (int a = 0; a < n_r; ++a) rx_dft_domain(a, slot * n_rf + s) = coin(rng) ? rx_amp : -rx_amp;
  }
  cb.w_r = cached_dft_matrix(n_r) * rx_dft_domain;
  const CMatrix& ft = cached_dft_matrix(n_t);
  for (int i = 0; i < n_bs; ++i) cb.w_t.push_back(ft * tx_dft_domain[i]);
  cb.pilots = single_pass_pilots(n_bs, rho);
  return cb;
}

SchemeCodebook make_codebook(Scheme scheme, const SchemeParams& p, Rng& rng) {
  switch (scheme) {
    case Scheme::BeamSweep: return beam_sweep_codebook(p.n_t, p.n_r, p.n_bs, p.rho);
    case Scheme::BeamCombine: return beam_combine_codebook(p.n_t, p.n_r, p.beta_t, p.beta_r, p.n_bs, p.rho);
    case Scheme::DiffBeamSweep: return diff_beam_sweep_codebook(p.n_t, p.n_r, p.n_bs, p.rho);
    case Scheme::DiffBeamCombine: return diff_beam_combine_codebook(p.n_t, p.n_r, p.beta_t, p.beta_r, p.n_bs, p.rho);
    case Scheme::Mubb: return mubb_codebook(p.n_t, p.n_r, p.u, p.n_bs, p.rho);
    case Scheme::Rbf: return rbf_codebook(p.n_t, p.n_r, p.u, p.n_bs, p.n_t * p.n_r / (1 << p.u), p.rho, rng, p.n_rf);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scheme");
}

}  // namespace celldisc
