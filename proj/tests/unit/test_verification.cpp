// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include "celldisc/verification.hpp"

using namespace celldisc;

TEST_SUITE("verification") {
  TEST_CASE("presets are listed and unknown ones rejected") {
    CHECK(verification_presets().size() == 4);
    try {
      run_theorem_verification("nope", {});
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }

  TEST_CASE("report bookkeeping") {
    VerificationReport r;
    r.add("p", "close", 1.0, 1.05, 0.1);
    r.add("p", "far", 1.0, 2.0, 0.1);
    r.add_decided("p", "forced", 0.0, 0.0, 0.0, false);
    CHECK(r.failures() == 2);
    CHECK_FALSE(r.all_pass());
    const CsvTable t = r.table("abc");
    CHECK(t.rows().size() == 3);
    CHECK(t.rows()[0][t.column("pass")] == "true");
    CHECK(t.rows()[1][t.column("delta")] == "-1");
  }

  TEST_CASE("first RBF draw under a loose bound is draw zero") {
    SchemeParams p;
    p.n_t = 8;
    p.n_r = 2;
    p.n_bs = 2;
    double mu = 0.0;
    CHECK(first_rbf_draw_at_most(p, 5, 1, 1.0, &mu) == 0);
    CHECK(mu <= 1.0);
    CHECK(first_rbf_draw_at_most(p, 5, 1, 0.0, &mu) == -1);
    CHECK(mu > 0.0);
  }

  TEST_CASE("MUBB structure grid passes") {
    const VerificationReport r = run_theorem_verification("theorem3_grid", {});
    CHECK(r.rows.size() > 20);
    for (const auto& row : r.rows) {
      CAPTURE(row.check);
      CHECK(row.pass);
    }
  }
}
