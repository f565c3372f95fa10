// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include <set>

#include "celldisc/channel.hpp"
#include "celldisc/dft.hpp"
#include "celldisc/measurement.hpp"
#include "celldisc/mub.hpp"

using namespace celldisc;
using celldisc::test::random_complex;

namespace {

std::vector<SchemeCodebook> all_schemes(int n_t, int n_r, int n_bs, Rng& rng, double rho = 1.0) {
  return {beam_sweep_codebook(n_t, n_r, n_bs, rho),
          beam_combine_codebook(n_t, n_r, 2, 2, n_bs, rho),
          diff_beam_sweep_codebook(n_t, n_r, n_bs, rho),
          diff_beam_combine_codebook(n_t, n_r, 2, 1, n_bs, rho),
          mubb_codebook(n_t, n_r, 1, n_bs, rho),
          rbf_codebook(n_t, n_r, 1, n_bs, n_t * n_r / 2, rho, rng)};
}

}  // namespace

TEST_SUITE("measurement") {
  TEST_CASE("zero channels without noise give zero observations") {
    Rng rng = make_rng(1);
    for (const auto& cb : all_schemes(8, 4, 2, rng)) {
      const std::vector<CMatrix> h(2, CMatrix::Zero(4, 8));
      const ObservationSet obs = simulate_observations(std::span<const CMatrix>(h), cb, 0.0, 1, rng);
      CHECK(obs.y.size() == cb.total_observations());
      CHECK(obs.y.cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("beam sweep single on-grid path lands in its slot") {
    Rng rng = make_rng(2);
    const int n_t = 8, n_r = 4;
    const SchemeCodebook cb = beam_sweep_codebook(n_t, n_r, 1);
    const cd alpha(0.6, 0.2);
    CMatrix g = CMatrix::Zero(n_r, n_t);
    g(1, 6) = alpha;
    const std::vector<CMatrix> h{from_angular(g)};
    const ObservationSet obs = simulate_observations(std::span<const CMatrix>(h), cb, 0.0, 1, rng);
    for (int q = 0; q < n_t; ++q)
      for (int p = 0; p < n_r; ++p) CHECK(std::abs(obs.at(0, p, q) - (p == 1 && q == 6 ? alpha : cd(0.0))) < 1e-12);
    CHECK(obs.flat_index(0, 1, 6) == 6 * n_r + 1);
  }

  TEST_CASE("noise across RF chains is white for orthonormal receive beams") {
    Rng rng = make_rng(3);
    const SchemeCodebook cb = beam_sweep_codebook(64, 4, 1);
    const std::vector<CMatrix> h{CMatrix::Zero(4, 64)};
    CMatrix acc = CMatrix::Zero(4, 4);
    std::int64_t slots = 0;
    while (slots < 100000) {
      const ObservationSet obs = simulate_observations(std::span<const CMatrix>(h), cb, 1.0, 4, rng);
      for (int q = 0; q < 64; ++q) {
        CVector v(4);
        for (int p = 0; p < 4; ++p) v[p] = obs.at(0, p, q);
        acc += v * v.adjoint();
        ++slots;
      }
    }
    acc /= static_cast<double>(slots);
    const double bound = 3.0 / std::sqrt(static_cast<double>(slots));
    for (int a = 0; a < 4; ++a) {
      CHECK(acc(a, a).real() == doctest::Approx(1.0).epsilon(0.02));
      for (int b = a + 1; b < 4; ++b) CHECK(std::abs(acc(a, b)) < bound);
    }
  }

  TEST_CASE("RF chain count checks") {
    Rng rng = make_rng(4);
    const SchemeCodebook rbf = rbf_codebook(8, 4, 0, 1, 32, 1.0, rng, 2);
    const std::vector<CMatrix> h{CMatrix::Zero(4, 8)};
    CHECK_THROWS_AS(simulate_observations(std::span<const CMatrix>(h), rbf, 1.0, 1, rng), Error);
    CHECK_NOTHROW(simulate_observations(std::span<const CMatrix>(h), rbf, 1.0, 2, rng));
    const SchemeCodebook bs = beam_sweep_codebook(8, 4, 1);
    CHECK_THROWS_AS(simulate_observations(std::span<const CMatrix>(h), bs, 1.0, 5, rng), Error);
  }

  TEST_CASE("beam sweep sensing matrix is a row of identities") {
    const SensingMatrix sm = sensing_matrix(beam_sweep_codebook(4, 2, 3));
    const CMatrix psi = sm.dense();
    CMatrix expect(8, 24);
    for (int i = 0; i < 3; ++i) expect.middleCols(i * 8, 8) = CMatrix::Identity(8, 8);
    CHECK((psi - expect).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("beam combining sensing matrix has the block-ones structure") {
    const int n_t = 8, n_r = 4, bt = 2, br = 2;
    const SensingMatrix sm = sensing_matrix(beam_combine_codebook(n_t, n_r, bt, br, 2));
    auto block = [](int n, int beta) {
      CMatrix m = CMatrix::Zero(n / beta, n);
      for (int k = 0; k < n; ++k) m(k / beta, k) = 1.0;
      return m;
    };
    const CMatrix lt = block(n_t, bt), lr = block(n_r, br);
    CMatrix kron(lt.rows() * lr.rows(), lt.cols() * lr.cols());
    for (Eigen::Index a = 0; a < lt.rows(); ++a)
      for (Eigen::Index b = 0; b < lt.cols(); ++b)
        kron.block(a * lr.rows(), b * lr.cols(), lr.rows(), lr.cols()) = lt(a, b) * lr;
    const CMatrix psi = sm.dense();
    CHECK((psi.leftCols(32) - kron).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((psi.rightCols(32) - kron).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("MUBB sensing matrix is a row of Kronecker unitary blocks") {
    const int n_t = 16, n_r = 4, u = 1;
    const SensingMatrix sm = sensing_matrix(mubb_codebook(n_t, n_r, u, 3));
    const CMatrix psi = sm.dense();
    const int m = n_t * n_r >> u;
    CHECK(psi.rows() == m);
    for (int b = 0; b < 3 * (1 << u); ++b) {
      const CMatrix blk = psi.middleCols(b * m, m);
      CHECK((blk.adjoint() * blk - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-10);
    }
    // Row-side factor is a unitary MUB matrix.
    CHECK((sm.right().adjoint() * sm.right() - CMatrix::Identity(n_r, n_r)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("column map is a bijection") {
    Rng rng = make_rng(5);
    for (const auto& cb : all_schemes(16, 4, 3, rng)) {
      const SensingMatrix sm = sensing_matrix(cb);
      std::set<int> seen;
      for (int i = 0; i < 3; ++i)
        for (int tx = 0; tx < 16; ++tx)
          for (int rx = 0; rx < 4; ++rx) {
            const int l = sm.column_index(i, {rx, tx});
            seen.insert(l);
            const ColumnRef ref = sm.column_ref(l);
            CHECK(ref.bs == i);
            CHECK(ref.bin == AngularBin{rx, tx});
          }
      CHECK(seen.size() == static_cast<std::size_t>(sm.cols()));
      CHECK(*seen.rbegin() == sm.cols() - 1);
    }
  }

  TEST_CASE("factored products agree with the dense matrix") {
    Rng rng = make_rng(6);
    for (const auto& cb : all_schemes(8, 4, 2, rng)) {
      const SensingMatrix sm = sensing_matrix(cb);
      const CMatrix psi = sm.dense();
      const CVector g = random_complex(sm.cols(), 1, rng);
      const CVector y = random_complex(sm.rows(), 1, rng);
      CHECK((sm.apply(g) - psi * g).norm() < 1e-10 * (psi * g).norm());
      CHECK((sm.correlate(y) - psi.adjoint() * y).norm() < 1e-10 * (psi.adjoint() * y).norm());
      CHECK((sm.metrics(y) - (psi.adjoint() * y).cwiseAbs2()).norm() < 1e-9 * y.squaredNorm());
      const std::vector<int> idx{3, 0, 17};
      const CMatrix cols = sm.columns(idx);
      for (int k = 0; k < 3; ++k) CHECK((cols.col(k) - psi.col(idx[k])).norm() < 1e-14);
      CHECK((sm.column(5) - psi.col(5)).norm() < 1e-14);
    }
  }

  TEST_CASE("noiseless observations equal sqrt(rho) Psi g") {
    Rng rng = make_rng(7);
    for (double rho : {1.0, 2.5}) {
      for (const auto& cb : all_schemes(16, 4, 3, rng, rho)) {
        CAPTURE(scheme_tag(cb.scheme));
        const SensingMatrix sm = sensing_matrix(cb);
        for (int t = 0; t < 20; ++t) {
          std::vector<CMatrix> h, g;
          for (int i = 0; i < 3; ++i) {
            const MultipathChannel ch = sample_ideal_channel(2, std::vector<double>{1.0, 0.5}, 4, 16, rng);
            h.push_back(synthesize_channel(ch));
            g.push_back(angular_transform(h.back(), 0.0).g);
          }
          const ObservationSet obs = simulate_observations(std::span<const CMatrix>(h), cb, 0.0, 1, rng);
          const CVector expect = std::sqrt(rho) * sm.apply(stack_angular(g));
          CHECK((observation_vector(obs) - expect).norm() <= 1e-9 * expect.norm());
        }
      }
    }
  }

  TEST_CASE("differential observations stack phase one then phase two") {
    Rng rng = make_rng(8);
    const SchemeCodebook cb = diff_beam_sweep_codebook(4, 2, 2);
    CMatrix g = CMatrix::Zero(2, 4);
    g(0, 1) = 1.0;
    const std::vector<CMatrix> h{from_angular(g), CMatrix::Zero(2, 4)};
    const ObservationSet obs = simulate_observations(std::span<const CMatrix>(h), cb, 0.0, 1, rng);
    const int slot = obs.flat_index(0, 0, 1);
    CHECK(std::abs(obs.y[slot] - cd(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(obs.y[obs.per_phase() + slot] - differential_pilots(2)[0]) < 1e-12);
    CHECK(obs.m_total() == 2 * 8);
  }

  TEST_CASE("multipath overload matches the matrix overload") {
    Rng rng = make_rng(9);
    const SchemeCodebook cb = mubb_codebook(16, 4, 0, 2);
    std::vector<MultipathChannel> chans;
    std::vector<CMatrix> h;
    for (int i = 0; i < 2; ++i) {
      chans.push_back(sample_ideal_channel(3, std::vector<double>(3, 1.0), 4, 16, rng));
      h.push_back(synthesize_channel(chans.back()));
    }
    Rng a = make_rng(10), b = make_rng(10);
    const ObservationSet x = simulate_observations(std::span<const MultipathChannel>(chans), cb, 0.3, 1, a);
    const ObservationSet y = simulate_observations(std::span<const CMatrix>(h), cb, 0.3, 1, b);
    CHECK((x.y - y.y).norm() == 0.0);
  }
}
