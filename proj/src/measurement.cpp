// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/measurement.hpp"

#include <cmath>

#include "celldisc/dft.hpp"

namespace celldisc {

namespace {

void check_channels(std::span<const CMatrix> channels, const SchemeCodebook& cb) {
  require(static_cast<int>(channels.size()) == cb.n_bs(), ErrorCode::DimensionMismatch,
          "expected one channel per BS in the codebook");
  for (const auto& h : channels)
    require(h.rows() == cb.w_r.rows() && h.cols() == cb.w_t.front().rows(), ErrorCode::DimensionMismatch,
            "channel size does not match the codebook arrays");
}

// Adds w_r^* n to the observations of one slot; `beams` lists (flat index, receive column).
void add_slot_noise(const CMatrix& w_r, std::span<const std::pair<int, int>> beams, double sigma_n2, Rng& rng,
                    CVector& noise_buf, CVector& y) {
  if (beams.size() == 1) {
    const auto [flat, col] = beams.front();
    y[flat] += complex_normal(rng, sigma_n2 * w_r.col(col).squaredNorm());
    return;
  }
  fill_complex_normal(rng, sigma_n2, noise_buf);
  for (const auto& [flat, col] : beams) y[flat] += w_r.col(col).dot(noise_buf);
}

}  // namespace

ObservationSet simulate_observations(std::span<const CMatrix> channels, const SchemeCodebook& cb, double sigma_n2,
                                     int n_rf, Rng& rng) {
  check_channels(channels, cb);
  require(sigma_n2 >= 0.0, ErrorCode::InvalidArgument, "noise variance must be non-negative");
  require(n_rf >= 1, ErrorCode::InvalidArgument, "need at least one RF chain");
  if (cb.per_observation)
    require(n_rf == cb.params.n_rf, ErrorCode::InvalidArgument, "RF chain count differs from the RBF design");
  else
    require(n_rf <= cb.receive_beams(), ErrorCode::InvalidArgument, "more RF chains than receive beams");

  ObservationSet obs;
  obs.phases = cb.phases();
  obs.receive_beams = cb.receive_beams();
  obs.transmit_beams = cb.per_observation ? 1 : cb.transmit_beams();
  obs.per_observation = cb.per_observation;
  obs.n_rf = n_rf;
  obs.sigma_n2 = sigma_n2;
  const int per_phase = obs.per_phase();
  obs.y = CVector::Zero(obs.m_total());

  for (int i = 0; i < cb.n_bs(); ++i) {
    const CMatrix& h = channels[i];
    if (h.squaredNorm() == 0.0) continue;
    CVector base(per_phase);
    if (cb.per_observation) {
      const CMatrix hw = h * cb.w_t[i];
      base = cb.w_r.cwiseProduct(hw.conjugate()).colwise().sum().adjoint();
    } else {
      const CMatrix b = cb.w_r.adjoint() * h * cb.w_t[i];
      base = Eigen::Map<const CVector>(b.data(), b.size());
    }
    for (int ph = 0; ph < obs.phases; ++ph) obs.y.segment(ph * per_phase, per_phase) += cb.pilots[ph][i] * base;
  }

  if (sigma_n2 == 0.0) return obs;
  CVector noise_buf(cb.w_r.rows());
  std::vector<std::pair<int, int>> beams;
  for (int ph = 0; ph < obs.phases; ++ph) {
    if (cb.per_observation) {
      for (int m0 = 0; m0 < per_phase; m0 += n_rf) {
        beams.clear();
        for (int s = 0; s < n_rf; ++s) beams.emplace_back(ph * per_phase + m0 + s, m0 + s);
        add_slot_noise(cb.w_r, beams, sigma_n2, rng, noise_buf, obs.y);
      }
    } else {
      const int p_count = obs.receive_beams;
      for (int q = 0; q < obs.transmit_beams; ++q)
        for (int p0 = 0; p0 < p_count; p0 += n_rf) {
          beams.clear();
          for (int p = p0; p < std::min(p0 + n_rf, p_count); ++p) beams.emplace_back(obs.flat_index(ph, p, q), p);
          add_slot_noise(cb.w_r, beams, sigma_n2, rng, noise_buf, obs.y);
        }
    }
  }
  return obs;
}

ObservationSet simulate_observations(std::span<const MultipathChannel> channels, const SchemeCodebook& cb,
                                     double sigma_n2, int n_rf, Rng& rng) {
  std::vector<CMatrix> h;
  h.reserve(channels.size());
  for (const auto& ch : channels) h.push_back(synthesize_channel(ch));
  return simulate_observations(std::span<const CMatrix>(h), cb, sigma_n2, n_rf, rng);
}

SensingMatrix SensingMatrix::kronecker(std::vector<CMatrix> left, CMatrix right) {
  require(!left.empty(), ErrorCode::InvalidDimension, "need at least one BS block");
  for (const auto& l : left)
    require(l.rows() == left.front().rows() && l.cols() == left.front().cols(), ErrorCode::DimensionMismatch,
            "BS blocks differ in size");
  SensingMatrix sm;
  sm.structure_ = Structure::Kronecker;
  sm.n_t_ = static_cast<int>(left.front().cols());
  sm.n_r_ = static_cast<int>(right.cols());
  sm.left_ = std::move(left);
  sm.right_ = std::move(right);
  return sm;
}

SensingMatrix SensingMatrix::row_kronecker(std::vector<CMatrix> v, CMatrix u, int slot_size) {
  require(!v.empty(), ErrorCode::InvalidDimension, "need at least one BS block");
  for (const auto& x : v)
    require(x.rows() == u.rows() && x.cols() == v.front().cols(), ErrorCode::DimensionMismatch,
            "row-Kronecker factors differ in size");
  require(slot_size >= 1 && u.rows() % slot_size == 0, ErrorCode::InvalidArgument, "slot size must divide M");
  SensingMatrix sm;
  sm.structure_ = Structure::RowKronecker;
  sm.n_t_ = static_cast<int>(v.front().cols());
  sm.n_r_ = static_cast<int>(u.cols());
  sm.left_ = std::move(v);
  sm.right_ = std::move(u);
  sm.slot_size_ = slot_size;
  return sm;
}

int SensingMatrix::rows() const {
  if (structure_ == Structure::RowKronecker) return static_cast<int>(right_.rows());
  return static_cast<int>(left_.front().rows() * right_.rows());
}

ColumnRef SensingMatrix::column_ref(int l) const {
  require(l >= 0 && l < cols(), ErrorCode::InvalidArgument, "column index out of range");
  const int per_bs = n_t_ * n_r_;
  const int within = l % per_bs;
  return {l / per_bs, {within % n_r_, within / n_r_}};
}

CVector SensingMatrix::column(int l) const {
  const ColumnRef ref = column_ref(l);
  const CMatrix& lf = left_[ref.bs];
  if (structure_ == Structure::RowKronecker) return lf.col(ref.bin.tx).cwiseProduct(right_.col(ref.bin.rx));
  const Eigen::Index p_count = right_.rows();
  CVector out(rows());
  for (Eigen::Index r = 0; r < lf.rows(); ++r) out.segment(r * p_count, p_count) = lf(r, ref.bin.tx) * right_.col(ref.bin.rx);
  return out;
}

CMatrix SensingMatrix::columns(std::span<const int> idx) const {
  CMatrix out(rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = column(idx[k]);
  return out;
}

CMatrix SensingMatrix::dense() const {
  CMatrix out(rows(), cols());
  for (int l = 0; l < cols(); ++l) out.col(l) = column(l);
  return out;
}

CVector SensingMatrix::apply(const CVector& g) const {
  require(g.size() == cols(), ErrorCode::DimensionMismatch, "g length differs from the column count");
  const int per_bs = n_t_ * n_r_;
  if (structure_ == Structure::RowKronecker) {
    CVector y = CVector::Zero(rows());
    for (int i = 0; i < n_bs(); ++i) {
      Eigen::Map<const CMatrix> gi(g.data() + static_cast<Eigen::Index>(i) * per_bs, n_r_, n_t_);
      y += (right_ * gi).cwiseProduct(left_[i]).rowwise().sum();
    }
    return y;
  }
  CMatrix y = CMatrix::Zero(right_.rows(), left_.front().rows());
  for (int i = 0; i < n_bs(); ++i) {
    Eigen::Map<const CMatrix> gi(g.data() + static_cast<Eigen::Index>(i) * per_bs, n_r_, n_t_);
    y.noalias() += right_ * gi * left_[i].transpose();
  }
  return Eigen::Map<const CVector>(y.data(), y.size());
}

CVector SensingMatrix::correlate(const CVector& y) const {
  require(y.size() == rows(), ErrorCode::DimensionMismatch, "observation length differs from the row count");
  const int per_bs = n_t_ * n_r_;
  CVector out(cols());
  if (structure_ == Structure::RowKronecker) {
    const CMatrix a = (right_.conjugate().array().colwise() * y.array()).matrix();
    for (int i = 0; i < n_bs(); ++i) {
      Eigen::Map<CMatrix> oi(out.data() + static_cast<Eigen::Index>(i) * per_bs, n_r_, n_t_);
      oi.noalias() = a.transpose() * left_[i].conjugate();
    }
    return out;
  }
  Eigen::Map<const CMatrix> ym(y.data(), right_.rows(), left_.front().rows());
  const CMatrix z = right_.adjoint() * ym;
  for (int i = 0; i < n_bs(); ++i) {
    Eigen::Map<CMatrix> oi(out.data() + static_cast<Eigen::Index>(i) * per_bs, n_r_, n_t_);
    oi.noalias() = z * left_[i].conjugate();
  }
  return out;
}

RVector SensingMatrix::metrics(const CVector& y) const { return correlate(y).cwiseAbs2(); }

SensingMatrix sensing_matrix(const SchemeCodebook& cb) {
  require(cb.params.rho > 0.0, ErrorCode::InvalidArgument, "rho must be positive");
  require(cb.n_bs() >= 1, ErrorCode::InvalidDimension, "codebook has no BS");
  const int n_r = static_cast<int>(cb.w_r.rows());
  const int n_t = static_cast<int>(cb.w_t.front().rows());
  const CMatrix right = cb.w_r.adjoint() * cached_dft_matrix(n_r);
  const CMatrix& ft = cached_dft_matrix(n_t);
  const double amp = 1.0 / std::sqrt(cb.params.rho * cb.phases());

  std::vector<CMatrix> left;
  for (int i = 0; i < cb.n_bs(); ++i) {
    const CMatrix t = (ft.adjoint() * cb.w_t[i]).transpose();
    CMatrix li(cb.phases() * t.rows(), n_t);
    for (int ph = 0; ph < cb.phases(); ++ph) li.middleRows(ph * t.rows(), t.rows()) = (cb.pilots[ph][i] * amp) * t;
    left.push_back(std::move(li));
  }
  if (cb.per_observation) {
    require(cb.phases() == 1, ErrorCode::InvalidArgument, "per-observation codebooks use a single pass");
    return SensingMatrix::row_kronecker(std::move(left), right, cb.params.n_rf);
  }
  return SensingMatrix::kronecker(std::move(left), right);
}

CVector stack_angular(std::span<const CMatrix> g) {
  Eigen::Index total = 0;
  for (const auto& gi : g) total += gi.size();
  CVector out(total);
  Eigen::Index pos = 0;
  for (const auto& gi : g) {
    out.segment(pos, gi.size()) = Eigen::Map<const CVector>(gi.data(), gi.size());
    pos += gi.size();
  }
  return out;
}

CVector observation_vector(const ObservationSet& obs) {
  require(obs.y.size() == obs.m_total(), ErrorCode::DimensionMismatch, "observation layout is inconsistent");
  return obs.y / std::sqrt(static_cast<double>(obs.phases));
}

}  // namespace celldisc
