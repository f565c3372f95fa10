// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "helpers.hpp"

#include "celldisc/config.hpp"

using namespace celldisc;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("parses globals and scheme sections") {
    const ExperimentConfig c = parse_config_text(R"(
# comment
seed = 42
[experiment]
trials = 100   # trailing comment
r_grid = 50, 75.5
channel = ideal
criterion = strongest_bs
threshold_rule = relative_max
sigma_n2 = 0.25

[scheme mubb]
u = 1

[scheme wide]
type = dbc
beta_t = 2
)");
    CHECK(c.seed == 42);
    CHECK(c.trials == 100);
    CHECK(c.r_grid == std::vector<double>{50.0, 75.5});
    CHECK(c.channel == ChannelMode::Ideal);
    CHECK(c.criterion == Criterion::StrongestBs);
    CHECK(c.threshold_rule == ThresholdRule::RelativeMax);
    CHECK(c.noise_variance() == 0.25);
    REQUIRE(c.schemes.size() == 2);
    CHECK(c.schemes[0].scheme == Scheme::Mubb);
    CHECK(c.schemes[0].params.u == 1);
    CHECK(c.schemes[1].label == "wide");
    CHECK(c.schemes[1].scheme == Scheme::DiffBeamCombine);
    CHECK(c.schemes[1].params.beta_t == 2);
  }

  TEST_CASE("defaults") {
    const ExperimentConfig c = parse_config_text("");
    CHECK(c.n_t == 64);
    CHECK(c.n_r == 8);
    CHECK(c.resolved_calibration_trials() == 1000);
    CHECK(c.noise_variance() == doctest::Approx(thermal_noise_variance(293.0, 8e8)));
    const SchemeParams p = c.scheme_params(SchemeEntry{"x", Scheme::Rbf, {}}, 4);
    CHECK(p.n_rf == 4);
    CHECK(p.n_t == 64);
    CHECK(p.n_bs == 16);
  }

  TEST_CASE("errors are config errors") {
    CHECK(code_of("bogus = 1") == ErrorCode::ConfigError);
    CHECK(code_of("trials = ten") == ErrorCode::ConfigError);
    CHECK(code_of("trials = 1\ntrials = 2") == ErrorCode::ConfigError);
    CHECK(code_of("[scheme mubb]\nfoo = 1") == ErrorCode::ConfigError);
    CHECK(code_of("[scheme custom]\nu = 1") == ErrorCode::ConfigError);
    CHECK(code_of("[scheme a]\ntype = zzz") == ErrorCode::ConfigError);
    CHECK(code_of("[weird]") == ErrorCode::ConfigError);
    CHECK(code_of("no equals sign") == ErrorCode::ConfigError);
    CHECK(code_of("target_pf = 1.5") == ErrorCode::ConfigError);
    CHECK(code_of("[scheme mubb]\n[scheme mubb]") == ErrorCode::ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), Error);
  }

  TEST_CASE("error messages carry the line number") {
    try {
      parse_config_text("seed = 1\n\nbogus = 2\n");
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("hash is stable, ignores threads and tracks settings") {
    const ExperimentConfig a = parse_config_text("seed = 1\n[scheme mubb]\n");
    ExperimentConfig b = a;
    b.threads = 8;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    // Hashing sees resolved values, so spelling out a default changes nothing.
    const ExperimentConfig c = parse_config_text("seed = 1\ncalibration_trials = 1000\n[scheme mubb]\ntype = mubb\n");
    CHECK(canonical_text(c) == canonical_text(a));
    CHECK(config_hash(c) == config_hash(a));
  }
}
