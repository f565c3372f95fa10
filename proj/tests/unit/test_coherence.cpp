// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include "celldisc/analytics.hpp"
#include "celldisc/measurement.hpp"

using namespace celldisc;

TEST_SUITE("coherence") {
  TEST_CASE("beam sweep with several BSs has coherence one") {
    for (int n_bs : {2, 3, 5}) CHECK(mutual_coherence(sensing_matrix(beam_sweep_codebook(8, 4, n_bs))) == doctest::Approx(1.0));
    CHECK(mutual_coherence(sensing_matrix(beam_sweep_codebook(8, 4, 1))) == doctest::Approx(0.0));
  }

  TEST_CASE("MUBB at n_t = 256, u = 0") {
    CHECK(mutual_coherence(sensing_matrix(mubb_codebook(256, 4, 0, 2))) == doctest::Approx(0.0625).epsilon(1e-9));
  }

  TEST_CASE("DBS coherence for 16 BSs") {
    const double mu = mutual_coherence(sensing_matrix(diff_beam_sweep_codebook(8, 2, 16)));
    CHECK(std::abs(mu - 0.9830) < 1e-4);
    CHECK(mu == doctest::Approx(*scheme_mu_closed_form(Scheme::DiffBeamSweep, diff_beam_sweep_codebook(8, 2, 16).params)));
  }

  TEST_CASE("factored coherence equals the dense reference") {
    Rng rng = make_rng(4);
    std::vector<SchemeCodebook> cbs = {beam_sweep_codebook(8, 4, 2), beam_combine_codebook(8, 4, 2, 1, 2),
                                       diff_beam_sweep_codebook(8, 4, 3), diff_beam_combine_codebook(8, 4, 2, 2, 2),
                                       mubb_codebook(16, 4, 1, 3)};
    for (int n_rf : {1, 2, 4})
      for (int u : {0, 1}) cbs.push_back(rbf_codebook(8, 4, u, 3, 32 >> u, 1.0, rng, n_rf));
    for (const auto& cb : cbs) {
      CAPTURE(scheme_tag(cb.scheme));
      const SensingMatrix sm = sensing_matrix(cb);
      const double mu = mutual_coherence(sm);
      CHECK(mu == doctest::Approx(mutual_coherence_dense(sm.dense())).epsilon(1e-12));
      CHECK(coherence_at_most(sm, mu));
      CHECK_FALSE(coherence_at_most(sm, mu - 1e-6));
      CHECK(coherence_bounded(sm, 2.0) == doctest::Approx(mu));
      CHECK(coherence_bounded(sm, mu * 0.5) > mu * 0.5);
    }
  }

  TEST_CASE("dense coherence of simple matrices") {
    CMatrix a = CMatrix::Identity(3, 3);
    CHECK(mutual_coherence_dense(a) == 0.0);
    a(0, 1) = 1.0;  // columns (1,0,0) and (1,1,0)
    CHECK(mutual_coherence_dense(a) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CMatrix z = CMatrix::Identity(2, 2);
    z(1, 1) = 0.0;
    CHECK_THROWS_AS(mutual_coherence_dense(z), Error);
  }

  TEST_CASE("closed forms match numeric coherence on a small grid") {
    for (int n_t : {8, 16})
      for (int u : {0, 1})
        for (int n_bs : {1, 2}) {
          const SchemeCodebook cb = mubb_codebook(n_t, 4, u, n_bs);
          CHECK(mutual_coherence(sensing_matrix(cb)) ==
                doctest::Approx(*scheme_mu_closed_form(Scheme::Mubb, cb.params)).epsilon(1e-9));
        }
    for (int n_bs : {1, 2, 4}) {
      const SchemeCodebook bs = beam_sweep_codebook(8, 2, n_bs);
      CHECK(mutual_coherence(sensing_matrix(bs)) == doctest::Approx(*scheme_mu_closed_form(Scheme::BeamSweep, bs.params)));
      const SchemeCodebook dbs = diff_beam_sweep_codebook(8, 2, n_bs);
      CHECK(mutual_coherence(sensing_matrix(dbs)) ==
            doctest::Approx(*scheme_mu_closed_form(Scheme::DiffBeamSweep, dbs.params)));
      const SchemeCodebook dbc = diff_beam_combine_codebook(8, 2, 2, 1, n_bs);
      CHECK(mutual_coherence(sensing_matrix(dbc)) ==
            doctest::Approx(*scheme_mu_closed_form(Scheme::DiffBeamCombine, dbc.params)));
    }
  }
}
