// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <span>
#include <vector>

#include "celldisc/channel.hpp"
#include "celldisc/codebook.hpp"
#include "celldisc/common.hpp"

namespace celldisc {

/// Raw training observations.
///
/// Flat layout: phase * per_phase + q * P + p for grid schemes, phase * per_phase + m for
/// per-observation schemes. Several RF chains share slots but never change the count.
struct ObservationSet {
  CVector y;
  int phases = 1;
  int receive_beams = 0;   ///< P (M for per-observation schemes)
  int transmit_beams = 0;  ///< Q (1 for per-observation schemes)
  bool per_observation = false;
  int n_rf = 1;
  double sigma_n2 = 0.0;

  int per_phase() const { return per_observation ? receive_beams : receive_beams * transmit_beams; }
  int m_total() const { return phases * per_phase(); }
  int flat_index(int phase, int p, int q) const { return phase * per_phase() + q * receive_beams + p; }
  cd at(int phase, int p, int q) const { return y[flat_index(phase, p, q)]; }
};

/// y = sum_i w_r^* H_i w_t^(i) x^(i) + w_r^* n for every slot.
///
/// With n_rf == 1 each observation gets its own noise sample. With n_rf > 1 one N_r-dim noise
/// vector per slot is projected on the receive beams of that slot. Grid schemes fill a slot
/// with up to n_rf consecutive receive beams of the same transmit beam; RBF codebooks fix the
/// slot size at construction and n_rf must match it. All-zero channels are skipped.
ObservationSet simulate_observations(std::span<const CMatrix> channels, const SchemeCodebook& cb, double sigma_n2,
                                     int n_rf, Rng& rng);
ObservationSet simulate_observations(std::span<const MultipathChannel> channels, const SchemeCodebook& cb,
                                     double sigma_n2, int n_rf, Rng& rng);

/// Column position inside Psi.
struct ColumnRef {
  int bs = 0;
  AngularBin bin;
};

/// Psi, the map from stacked angular channels g = [vec G_1; ...; vec G_Nbs] to observations.
///
/// Column l = bs * N_t N_r + tx * N_r + rx. Stored in factored form:
///   Kronecker:     Psi_i = L_i (x) R, L_i rows indexed phase * Q + q, R rows indexed p;
///   RowKronecker:  Psi[m, (i, b, a)] = V_i[m, b] U[m, a].
class SensingMatrix {
 public:
  enum class Structure { Kronecker, RowKronecker };

  static SensingMatrix kronecker(std::vector<CMatrix> left, CMatrix right);
  static SensingMatrix row_kronecker(std::vector<CMatrix> v, CMatrix u, int slot_size = 1);

  Structure structure() const { return structure_; }
  int rows() const;
  int cols() const { return n_bs() * n_t_ * n_r_; }
  int n_bs() const { return static_cast<int>(left_.size()); }
  int n_t() const { return n_t_; }
  int n_r() const { return n_r_; }
  /// Observations sharing transmit beams (RBF with several RF chains).
  int slot_size() const { return slot_size_; }

  /// L_i (Kronecker) or V_i (RowKronecker).
  const CMatrix& left(int bs) const { return left_.at(bs); }
  /// R (Kronecker) or U (RowKronecker).
  const CMatrix& right() const { return right_; }

  int column_index(int bs, AngularBin bin) const { return (bs * n_t_ + bin.tx) * n_r_ + bin.rx; }
  ColumnRef column_ref(int l) const;

  CVector column(int l) const;
  CMatrix columns(std::span<const int> idx) const;
  CMatrix dense() const;

  /// Psi g.
  CVector apply(const CVector& g) const;
  /// Psi^* y.
  CVector correlate(const CVector& y) const;
  /// |psi_l^* y|^2 for every column.
  RVector metrics(const CVector& y) const;

 private:
  Structure structure_ = Structure::Kronecker;
  std::vector<CMatrix> left_;
  CMatrix right_;
  int n_t_ = 0;
  int n_r_ = 0;
  int slot_size_ = 1;
};

/// Psi for a codebook, pilot phases folded in and each pass scaled by 1/sqrt(phases).
SensingMatrix sensing_matrix(const SchemeCodebook& cb);

/// Stacked angular channels, matching Psi's column order.
CVector stack_angular(std::span<const CMatrix> g);

/// Observations in Psi's row order, scaled by 1/sqrt(phases) so that y = sqrt(rho) Psi g + n.
CVector observation_vector(const ObservationSet& obs);

/// Exact mutual coherence. Uses the factor structure: for Kronecker matrices the answer is the
/// larger of the two factor coherences, for +-1 row-Kronecker matrices the Gram entries are
/// computed with packed sign bits.
double mutual_coherence(const SensingMatrix& sm);

/// Reference route: blocked Gram of the dense matrix.
double mutual_coherence_dense(const CMatrix& psi);

/// True iff mutual_coherence(sm) <= bound; stops at the first pair above it.
bool coherence_at_most(const SensingMatrix& sm, double bound);

/// Exact coherence when it is at most `bound`, otherwise the first pair value found above it.
double coherence_bounded(const SensingMatrix& sm, double bound);

}  // namespace celldisc
