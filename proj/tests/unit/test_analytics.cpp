// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include <set>

#include "celldisc/analytics.hpp"
#include "celldisc/detection.hpp"
#include "celldisc/measurement.hpp"

using namespace celldisc;

TEST_SUITE("analytics") {
  TEST_CASE("beam sweep false alarm") {
    CHECK(pf_beam_sweep(0.0, 1.0, 10, 3) == 1.0);
    CHECK(pf_beam_sweep(4.0, 1.0, 10, 10) == 0.0);
    CHECK(pf_beam_sweep(5.0, 1.0, 107, 7) == doctest::Approx(0.4914).epsilon(1e-3));
  }

  TEST_CASE("beam sweep false alarm against Monte Carlo") {
    Rng rng = make_rng(1);
    int fired = 0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
      bool any = false;
      for (int s = 0; s < 100; ++s) any |= std::norm(complex_normal(rng, 1.0)) > 5.0;
      fired += any;
    }
    CHECK(std::abs(static_cast<double>(fired) / trials - 0.4914) < 0.01);
  }

  TEST_CASE("non-overlapping detection probability limits") {
    const std::vector<double> one{1.0};
    CHECK(pd_nonoverlap(0.0, 1.0, 1.0, one) == 1.0);
    CHECK(pd_nonoverlap(1.0, 1e-12, 1.0, one) == doctest::Approx(std::exp(-1.0)));
    CHECK(pd_nonoverlap(1e-6, 1e-12, 1.0, one) > 0.999);
    const std::vector<double> v{1.0, 2.0, 0.5};
    const double expect = 1.0 - (1.0 - std::exp(-2.0 / 1.5)) * (1.0 - std::exp(-2.0 / 2.5)) * (1.0 - std::exp(-2.0 / 1.0));
    CHECK(pd_nonoverlap(2.0, 0.5, 1.0, v) == doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("overlap bound limits") {
    CHECK(pd_overlap_bound(0.0, 1.0, 1.0, 2.0) == 1.0);
    CHECK(pd_overlap_bound(3.0, 1e-14, 1.0, 2.0) == doctest::Approx(std::exp(-1.5)));
  }

  TEST_CASE("overlap bound is below Monte Carlo with colliding paths") {
    // Two BSs on the same bin under beam sweep.
    const SchemeCodebook cb = beam_sweep_codebook(8, 4, 2);
    ProbeScenario sc;
    sc.support = {{{1, 2}}, {{1, 2}}};
    sc.variances = {{2.0}, {1.0}};
    sc.sigma_n2 = 0.5;
    sc.null_trials = false;
    const double tau = 4.0;
    const ProbabilityReport r = monte_carlo_probe(cb, sc, tau, 10000, 3);
    CHECK(pd_overlap_bound(tau, 0.5, 1.0, 2.0) <= r.pd_mc() + 3.0 * r.pd_stderr());
  }

  TEST_CASE("exact CS probability reduces to the scalar case") {
    CMatrix col = CMatrix::Zero(5, 1);
    col(2, 0) = 1.0;
    const std::vector<double> d{1.7};
    CHECK(pd_cs_exact(col, d, 1.3, 0.4, 2.0) == doctest::Approx(std::exp(-2.0 / (1.3 * 1.7 + 0.4))).epsilon(1e-12));
    const LowerBound lb = pd_cs_lower_bound(1, 0.3, 1.7, 1.3, 0.4, 2.0);
    CHECK_FALSE(lb.vacuous);
    CHECK(lb.value == doctest::Approx(pd_cs_exact(col, d, 1.3, 0.4, 2.0)).epsilon(1e-12));
  }

  TEST_CASE("exact CS probability with orthonormal support equals the product form") {
    Rng rng = make_rng(2);
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(test::random_complex(8, 3, rng)).householderQ() * CMatrix::Identity(8, 3);
    const std::vector<double> d{0.5, 1.0, 3.0};
    CHECK(pd_cs_exact(q, d, 2.0, 0.7, 2.5) == doctest::Approx(pd_nonoverlap(2.5, 0.7, 2.0, d)).epsilon(1e-10));
  }

  TEST_CASE("lower bound is vacuous past the Gershgorin limit") {
    CHECK(pd_cs_lower_bound(5, 0.25, 1.0, 1.0, 1.0, 1.0).vacuous);
    CHECK_FALSE(pd_cs_lower_bound(4, 0.25, 1.0, 1.0, 1.0, 1.0).vacuous);
  }

  TEST_CASE("lower bound never exceeds the exact value on small random instances") {
    Rng rng = make_rng(3);
    std::uniform_int_distribution<int> size(1, 4);
    std::uniform_real_distribution<double> var(0.2, 3.0), tau(0.1, 6.0), noise(0.05, 2.0);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
      SchemeCodebook cb = t % 2 ? mubb_codebook(4, 4, 0, 4) : rbf_codebook(4, 4, 0, 4, 16, 1.0, rng);
      const SensingMatrix sm = sensing_matrix(cb);
      const double mu = mutual_coherence(sm);
      const int k = size(rng);
      std::set<int> cols;
      std::uniform_int_distribution<int> pick(0, sm.cols() - 1);
      while (static_cast<int>(cols.size()) < k) cols.insert(pick(rng));
      const std::vector<int> idx(cols.begin(), cols.end());
      std::vector<double> d(k);
      for (auto& x : d) x = var(rng);
      const double s2 = noise(rng), th = tau(rng);
      const LowerBound lb = pd_cs_lower_bound(k, mu, *std::min_element(d.begin(), d.end()), 1.0, s2, th);
      if (lb.vacuous) continue;
      ++checked;
      CHECK(lb.value <= pd_cs_exact(sm.columns(idx), d, 1.0, s2, th) + 1e-12);
    }
    CHECK(checked > 100);
  }

  TEST_CASE("closed-form coherence values") {
    SchemeParams p;
    p.n_t = 256;
    p.n_r = 4;
    p.n_bs = 16;
    for (auto [u, mu] : {std::pair{0, 0.0625}, {1, 0.0884}, {2, 0.125}}) {
      p.u = u;
      CHECK(std::abs(*scheme_mu_closed_form(Scheme::Mubb, p) - mu) < 1e-4);
    }
    CHECK(std::abs(*scheme_mu_closed_form(Scheme::DiffBeamSweep, p) - 0.9830) < 1e-4);
    p.n_bs = 32;
    CHECK(std::abs(*scheme_mu_closed_form(Scheme::DiffBeamSweep, p) - 0.9955) < 1e-4);
    CHECK(*scheme_mu_closed_form(Scheme::BeamSweep, p) == 1.0);
    CHECK_FALSE(scheme_mu_closed_form(Scheme::Rbf, p).has_value());
  }

  TEST_CASE("Monte Carlo probe: noiseless detection and null false alarm") {
    const SchemeCodebook cb = beam_sweep_codebook(8, 4, 1);
    ProbeScenario sc;
    sc.support = {{{0, 1}, {2, 3}}};
    sc.variances = {{1.0, 1.0}};
    sc.sigma_n2 = 1e-300;
    const ProbabilityReport quiet = monte_carlo_probe(cb, sc, 1e-200, 500, 4);
    CHECK(quiet.pd_mc() == 1.0);

    sc.sigma_n2 = 1.0;
    const double tau = fixed_threshold_for_pf(0.1, 1.0, 32);
    const ProbabilityReport r = monte_carlo_probe(cb, sc, tau, 20000, 5, 4);
    CHECK(std::abs(r.pf_mc() - 0.1) <= 3.0 * std::sqrt(0.1 * 0.9 / 20000));
    CHECK(r.pf_stderr() == doctest::Approx(std::sqrt(r.pf_mc() * (1 - r.pf_mc()) / 20000)));
  }

  TEST_CASE("Monte Carlo counts do not depend on the worker count") {
    const SchemeCodebook cb = mubb_codebook(16, 4, 0, 2);
    ProbeScenario sc;
    sc.support = {{{1, 1}}, {{2, 5}, {3, 9}}};
    sc.variances = {{1.0}, {0.5, 0.5}};
    sc.sigma_n2 = 0.8;
    const ProbabilityReport a = monte_carlo_probe(cb, sc, 3.0, 3001, 9, 1);
    for (int w : {2, 3, 7}) {
      const ProbabilityReport b = monte_carlo_probe(cb, sc, 3.0, 3001, 9, w);
      CHECK(a.pd_hits == b.pd_hits);
      CHECK(a.pf_hits == b.pf_hits);
      CHECK(a.pf_offsupport_hits == b.pf_offsupport_hits);
    }
  }

  TEST_CASE("Theorem-1 curve matches Monte Carlo at one SNR") {
    const SchemeCodebook cb = beam_sweep_codebook(16, 4, 2);
    Rng rng = make_rng(6);
    const std::vector<int> paths{3, 4};
    ProbeScenario sc;
    sc.support = draw_support(paths, 4, 16, true, rng);
    sc.variances = {std::vector<double>(3, 64 * 0.5 / 3), std::vector<double>(4, 64 * 0.5 / 4)};
    sc.sigma_n2 = 30.0;
    std::vector<double> all;
    for (const auto& v : sc.variances) all.insert(all.end(), v.begin(), v.end());
    const double tau = fixed_threshold_for_pf(0.01, sc.sigma_n2, 64 - 7);
    const ProbabilityReport r = monte_carlo_probe(cb, sc, tau, 10000, 7);
    const double pa = pd_nonoverlap(tau, sc.sigma_n2, 1.0, all);
    CHECK(std::abs(r.pd_mc() - pa) <= 3.0 * std::sqrt(std::max(pa * (1 - pa), 1e-4) / 10000));
  }

  TEST_CASE("disjoint support draws never collide") {
    Rng rng = make_rng(8);
    const std::vector<int> paths{3, 4, 2, 2};
    for (int t = 0; t < 100; ++t) {
      const auto s = draw_support(paths, 2, 8, true, rng);
      std::set<AngularBin> all;
      std::size_t total = 0;
      for (const auto& b : s) {
        all.insert(b.begin(), b.end());
        total += b.size();
      }
      CHECK(all.size() == total);
      CHECK(total == 11);
    }
  }
}
