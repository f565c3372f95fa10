// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include <sstream>

#include "celldisc/experiment.hpp"

using namespace celldisc;

namespace {

ExperimentConfig small(const std::string& extra = "") {
  return parse_config_text(R"(
seed = 5
trials = 60
r_grid = 40, 120
n_t = 16
n_r = 4
n_bs = 4
paths = 2, 1
active_bs = 2
los_bs = 1
calibration_trials = 300
)" + extra + R"(
[scheme mubb]
[scheme rbf]
[scheme dbc]
beta_t = 2
)");
}

std::string text_of(const CsvTable& t) {
  std::ostringstream s;
  t.write(s);
  return s.str();
}

double cell(const CsvTable& t, std::size_t row, const std::string& col) { return std::stod(t.rows()[row][t.column(col)]); }

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("noise-free ideal channels are always found") {
    const ExperimentConfig cfg = small("channel = ideal\nsigma_n2 = 0\n");
    const CsvTable t = run_detection_curve(cfg);
    REQUIRE(t.rows().size() == 6);
    for (std::size_t r = 0; r < t.rows().size(); ++r) CHECK(cell(t, r, "pd_hat") == 1.0);
  }

  TEST_CASE("identical config and seed give byte-identical output") {
    ExperimentConfig a = small();
    ExperimentConfig b = small();
    b.threads = 3;
    CHECK(text_of(run_detection_curve(a)) == text_of(run_detection_curve(b)));
    ExperimentConfig c = small();
    c.seed = 6;
    CHECK(text_of(run_detection_curve(a)) != text_of(run_detection_curve(c)));
  }

  TEST_CASE("one RF chain reproduces the detection curve") {
    ExperimentConfig cfg = small();
    cfg.n_rf_grid = {1};
    const CsvTable rf = run_rf_chain_study(cfg);
    const CsvTable curve = run_detection_curve(cfg);
    CHECK(text_of(rf) == text_of(curve));
  }

  TEST_CASE("rf chain study covers the grid") {
    ExperimentConfig cfg = small();
    cfg.n_rf_grid = {1, 2};
    const CsvTable rf = run_rf_chain_study(cfg);
    CHECK(rf.rows().size() == 12);
  }

  TEST_CASE("relative-max rule and strongest-BS criterion run") {
    const ExperimentConfig cfg = small("threshold_rule = relative_max\ncriterion = strongest_bs\ntarget_pf = 0.3\n");
    const CsvTable t = run_detection_curve(cfg);
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
      CHECK(cell(t, r, "pd_hat") >= 0.0);
      CHECK(cell(t, r, "pd_hat") <= 1.0);
      CHECK(cell(t, r, "kappa") > 0.0);
      CHECK(cell(t, r, "kappa") < 1.0);
    }
  }

  TEST_CASE("strongest-BS criterion rejects schemes without identities") {
    ExperimentConfig cfg = small("criterion = strongest_bs\n");
    cfg.schemes.push_back({"bs", Scheme::BeamSweep, {}});
    try {
      run_detection_curve(cfg);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }

  TEST_CASE("beamforming-gain CDF") {
    const ExperimentConfig cfg = small();
    const CsvTable t = run_bfgain_cdf(cfg);
    CHECK(t.rows().size() == 3 * 2 * 100);
    double prev = 0.0;
    for (std::size_t r = 0; r < 100; ++r) {
      const double c = cell(t, r, "cdf");
      CHECK(c > prev);
      prev = c;
    }
    CHECK(prev == doctest::Approx(1.0));
    ExperimentConfig bad = cfg;
    bad.schemes.push_back({"bs", Scheme::BeamSweep, {}});
    CHECK_THROWS_AS(run_bfgain_cdf(bad), Error);
  }

  TEST_CASE("coherence table") {
    const CsvTable t = coherence_table(small());
    REQUIRE(t.rows().size() == 3);
    CHECK(cell(t, 0, "mu_numeric") == doctest::Approx(0.25));
    CHECK(cell(t, 0, "mu_closed_form") == doctest::Approx(0.25));
    CHECK(t.rows()[1][t.column("mu_closed_form")].empty());
    for (const auto& row : t.rows()) CHECK(row[0] == config_hash(small()));
  }

  TEST_CASE("best RBF draw is the least coherent") {
    SchemeParams p;
    p.n_t = 8;
    p.n_r = 2;
    p.n_bs = 2;
    double best = 0.0;
    const SchemeCodebook cb = best_rbf_codebook(p, 20, 3, &best);
    CHECK(mutual_coherence(sensing_matrix(cb)) == doctest::Approx(best));
    for (int d = 0; d < 20; ++d) {
      Rng rng = make_rng(derive_seed(3, static_cast<std::uint64_t>(d)));
      const double mu = mutual_coherence(sensing_matrix(rbf_codebook(8, 2, 0, 2, 16, 1.0, rng)));
      CHECK(best <= mu + 1e-12);
    }
  }

  TEST_CASE("realizations respect ideal-mode path counts") {
    const ExperimentConfig cfg = small("channel = ideal\n");
    Rng rng = make_rng(1);
    for (int t = 0; t < 50; ++t) {
      const Realization r = draw_realization(cfg, 100.0, rng);
      CHECK(r.h.size() == 4);
      CHECK(r.active.size() == 2);
      std::size_t paths = 0;
      for (const auto& s : r.support) paths += s.size();
      CHECK(paths == 3);
      CHECK(std::find(r.active.begin(), r.active.end(), r.strongest_bs) != r.active.end());
    }
  }
}
