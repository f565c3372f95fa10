// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "celldisc/measurement.hpp"

namespace celldisc {

namespace {

constexpr Eigen::Index kGramBlock = 256;
constexpr double kSlack = 1e-12;

// Largest |<a_j, a_k>| / (|a_j| |a_k|) over j < k. Returns early once `bound` is exceeded.
double max_offdiag_normalized(const CMatrix& a, double bound = std::numeric_limits<double>::infinity()) {
  const Eigen::Index n = a.cols();
  if (n <= 1) return 0.0;
  const RVector norms = a.colwise().norm();
  require(norms.minCoeff() > 0.0, ErrorCode::DegenerateMatrix, "sensing matrix has a zero column");
  const CMatrix an = a * norms.cwiseInverse().asDiagonal();
  double best = 0.0;
  for (Eigen::Index j0 = 0; j0 < n; j0 += kGramBlock) {
    const Eigen::Index bj = std::min(kGramBlock, n - j0);
    const CMatrix g = an.middleCols(j0, bj).adjoint() * an.rightCols(n - j0);
    for (Eigen::Index k = 0; k < g.cols(); ++k)
      for (Eigen::Index r = 0; r < std::min(bj, k); ++r) best = std::max(best, std::abs(g(r, k)));
    if (best > bound + kSlack) return best;
  }
  return best;
}

// Sign bits of a +-c matrix, column by column; empty if the entries are not all +-c.
struct PackedSigns {
  int words = 0;
  std::vector<std::uint64_t> bits;  // column j occupies [j * words, (j + 1) * words)

  const std::uint64_t* col(std::size_t j) const { return bits.data() + j * words; }
};

bool pack_signs(const CMatrix& m, PackedSigns& out, Eigen::Index row_step = 1) {
  if (m.size() == 0) return false;
  const double c = std::abs(m(0, 0));
  if (c == 0.0) return false;
  const Eigen::Index rows = m.rows() / row_step;
  out.words = static_cast<int>((rows + 63) / 64);
  out.bits.assign(static_cast<std::size_t>(out.words) * m.cols(), 0);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const cd x = m(r, j);
      if (std::abs(std::abs(x.real()) - c) > 1e-9 * c || std::abs(x.imag()) > 1e-9 * c) return false;
      const bool neg = x.real() < 0.0;
      if (r % row_step != 0) {
        if (neg != (m(r - r % row_step, j).real() < 0.0)) return false;
        continue;
      }
      if (neg) out.bits[j * out.words + (r / row_step) / 64] |= std::uint64_t{1} << ((r / row_step) % 64);
    }
  return true;
}

int popcount_xor(const std::uint64_t* a, const std::uint64_t* b, int words) {
  int s = 0;
  for (int w = 0; w < words; ++w) s += std::popcount(a[w] ^ b[w]);
  return s;
}

int popcount_xor3(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* c, int words) {
  int s = 0;
  for (int w = 0; w < words; ++w) s += std::popcount(a[w] ^ b[w] ^ c[w]);
  return s;
}

// Coherence of a row-Kronecker matrix with +-c factors. Columns (t, a) have sign vector
// s_t * s_a, so <(t1,a1),(t2,a2)> is proportional to M - 2 popcount(t1 ^ t2 ^ (a1 ^ a2)).
// Returns a negative value when the factors are not of that form.
double rademacher_coherence(const SensingMatrix& sm, double bound) {
  CMatrix tx(sm.rows(), static_cast<Eigen::Index>(sm.n_bs()) * sm.n_t());
  for (int i = 0; i < sm.n_bs(); ++i) tx.middleCols(static_cast<Eigen::Index>(i) * sm.n_t(), sm.n_t()) = sm.left(i);
  PackedSigns t, u;
  if (!pack_signs(tx, t) || !pack_signs(sm.right(), u)) return -1.0;
  const int m = sm.rows();
  const std::size_t nt = static_cast<std::size_t>(tx.cols());
  const int nr = sm.n_r();
  const int words = t.words;
  const double limit = std::min(bound, 1.0) * m + kSlack;
  int worst = 0;

  // a1 == a2: only the transmit signs matter. With shared transmit beams per slot the sum
  // collapses to slot_size times a shorter one.
  PackedSigns ts;
  const int slot = sm.slot_size();
  const bool compact = slot > 1 && pack_signs(tx, ts, slot);
  const PackedSigns& tp = compact ? ts : t;
  const int scale = compact ? slot : 1;
  const int len = compact ? m / slot : m;
  for (std::size_t j1 = 0; j1 < nt; ++j1)
    for (std::size_t j2 = j1 + 1; j2 < nt; ++j2) {
      const int ip = scale * std::abs(len - 2 * popcount_xor(tp.col(j1), tp.col(j2), tp.words));
      if (ip > worst) {
        worst = ip;
        if (worst > limit) return static_cast<double>(worst) / m;
      }
    }

  std::vector<std::uint64_t> masks;
  for (int a1 = 0; a1 < nr; ++a1)
    for (int a2 = a1 + 1; a2 < nr; ++a2)
      for (int w = 0; w < words; ++w) masks.push_back(u.col(a1)[w] ^ u.col(a2)[w]);
  const std::size_t n_masks = masks.size() / std::max(words, 1);
  const std::vector<std::uint64_t> zeros(words, 0);
  for (std::size_t k = 0; k < n_masks; ++k) {
    const int ip = std::abs(m - 2 * popcount_xor(masks.data() + k * words, zeros.data(), words));
    worst = std::max(worst, ip);
  }
  if (worst > limit) return static_cast<double>(worst) / m;
  for (std::size_t j1 = 0; j1 < nt; ++j1)
    for (std::size_t j2 = j1 + 1; j2 < nt; ++j2)
      for (std::size_t k = 0; k < n_masks; ++k) {
        const int ip = std::abs(m - 2 * popcount_xor3(t.col(j1), t.col(j2), masks.data() + k * words, words));
        if (ip > worst) {
          worst = ip;
          if (worst > limit) return static_cast<double>(worst) / m;
        }
      }
  return static_cast<double>(worst) / m;
}

double coherence_impl(const SensingMatrix& sm, double bound) {
  if (sm.structure() == SensingMatrix::Structure::Kronecker) {
    CMatrix lcat(sm.left(0).rows(), static_cast<Eigen::Index>(sm.n_bs()) * sm.n_t());
    for (int i = 0; i < sm.n_bs(); ++i)
      lcat.middleCols(static_cast<Eigen::Index>(i) * sm.n_t(), sm.n_t()) = sm.left(i);
    // Normalized Gram of L (x) R is the Kronecker product of the normalized factor Grams,
    // whose diagonals are 1, so the off-diagonal peak is the larger factor peak.
    const double mu_r = max_offdiag_normalized(sm.right(), bound);
    if (mu_r > bound + kSlack) return mu_r;
    return std::max(mu_r, max_offdiag_normalized(lcat, bound));
  }
  const double mu = rademacher_coherence(sm, bound);
  if (mu >= 0.0) return mu;
  return max_offdiag_normalized(sm.dense(), bound);
}

}  // namespace

double mutual_coherence(const SensingMatrix& sm) {
  return coherence_impl(sm, std::numeric_limits<double>::infinity());
}

double mutual_coherence_dense(const CMatrix& psi) { return max_offdiag_normalized(psi); }

bool coherence_at_most(const SensingMatrix& sm, double bound) { return coherence_impl(sm, bound) <= bound + kSlack; }

double coherence_bounded(const SensingMatrix& sm, double bound) { return coherence_impl(sm, bound); }

}  // namespace celldisc
