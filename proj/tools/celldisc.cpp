// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

// Command-line front end. Exit codes: 0 ok, 2 a verification check failed, 3 bad config.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "celldisc/config.hpp"
#include "celldisc/csv.hpp"
#include "celldisc/experiment.hpp"
#include "celldisc/verification.hpp"

using namespace celldisc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 2;
constexpr int kExitConfig = 3;
constexpr int kExitOther = 1;

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> threads;
};

ExperimentConfig resolve(const Globals& g) {
  ExperimentConfig cfg = g.config.empty() ? ExperimentConfig{} : load_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (g.threads) {
    if (*g.threads < 0) throw Error(ErrorCode::ConfigError, "--threads must be >= 0");
    cfg.threads = *g.threads;
  }
  return cfg;
}

void emit(const Globals& g, const CsvTable& t) {
  if (g.out.empty() || g.out == "-") {
    t.write(std::cout);
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigError, "cannot open output file '" + g.out + "'");
  t.write(f);
}

// w_r and every w_t^(i), column-major, one "re,im" cell per entry.
CsvTable dump_codebook(const ExperimentConfig& cfg, const std::string& which) {
  SchemeEntry entry;
  bool found = false;
  for (const auto& e : cfg.schemes)
    if (e.label == which) {
      entry = e;
      found = true;
    }
  if (!found) {
    const auto s = parse_scheme(which);
    if (!s) throw Error(ErrorCode::ConfigError, "unknown scheme '" + which + "'");
    entry.label = which;
    entry.scheme = *s;
  }
  const SchemeCodebook cb = prepare_scheme(cfg, entry, cfg.n_rf).codebook;
  CsvTable t({"matrix", "row", "col", "value"}, config_hash(cfg));
  auto put = [&](const std::string& name, const CMatrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        t.add_row({name, std::to_string(r), std::to_string(c),
                   format_double(m(r, c).real()) + "," + format_double(m(r, c).imag())});
  };
  put("w_r", cb.w_r);
  for (std::size_t i = 0; i < cb.w_t.size(); ++i) put("w_t_" + std::to_string(i), cb.w_t[i]);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell-discovery training simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", g.config, "experiment config file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "base seed, overrides the config");
  app.add_option("--out", g.out, "CSV output path (stdout when omitted)");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads, 0 = all cores");

  auto* coherence = app.add_subcommand("coherence", "mutual coherence of every configured scheme");
  auto* curve = app.add_subcommand("curve", "detection probability against cell size");
  auto* rfchains = app.add_subcommand("rfchains", "detection curves for every n_rf in n_rf_grid");
  auto* bfgain = app.add_subcommand("bfgain", "beamforming-gain CDF");

  auto* verify = app.add_subcommand("verify", "analytic cross-checks");
  std::vector<std::string> presets;
  VerifyOptions vopt;
  verify->add_option("--preset", presets, "fig1, table1, theorem2_small, theorem3_grid (default: all)")
      ->check(CLI::IsMember(verification_presets()));
  verify->add_option("--trials", vopt.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
  verify->add_option("--oracle-draws", vopt.oracle_draws, "brute-force draws per tiny instance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--instances", vopt.instances, "tiny instances")->check(CLI::PositiveNumber);
  verify->add_option("--rbf-draws", vopt.rbf_draws, "RBF draws searched per table entry")
      ->check(CLI::PositiveNumber);

  auto* dump = app.add_subcommand("dump", "write a codebook's beamformers");
  std::string dump_scheme = "mubb";
  std::string dump_format = "csv";
  dump->add_option("--scheme", dump_scheme, "scheme label or type");
  dump->add_option("--format", dump_format, "output format")->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  if (*seed_opt) g.seed = seed;
  if (*threads_opt) g.threads = threads;

  try {
    const ExperimentConfig cfg = resolve(g);
    const std::string hash = config_hash(cfg);
    if (*coherence) emit(g, coherence_table(cfg));
    else if (*curve) emit(g, run_detection_curve(cfg));
    else if (*rfchains) emit(g, run_rf_chain_study(cfg));
    else if (*bfgain) emit(g, run_bfgain_cdf(cfg));
    else if (*dump) emit(g, dump_codebook(cfg, dump_scheme));
    else if (*verify) {
      vopt.seed = cfg.seed;
      vopt.threads = cfg.threads;
      if (presets.empty()) presets = verification_presets();
      VerificationReport report;
      for (const auto& p : presets) report.append(run_theorem_verification(p, vopt));
      emit(g, report.table(hash));
      if (!report.all_pass()) {
        std::cerr << report.failures() << " check(s) failed\n";
        for (const auto& r : report.rows)
          if (!r.pass)
            std::cerr << "  " << r.preset << ": " << r.check << " observed " << format_double(r.observed)
                      << " expected " << format_double(r.expected) << " delta "
                      << format_double(r.observed - r.expected) << '\n';
        return kExitVerify;
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? kExitConfig : kExitOther;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
}
