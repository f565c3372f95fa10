// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/common.hpp"

#include <cmath>

namespace celldisc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid dimension";
    case ErrorCode::InfeasibleSupport: return "infeasible support";
    case ErrorCode::DegenerateGeometry: return "degenerate geometry";
    case ErrorCode::UnsupportedDimension: return "unsupported dimension";
    case ErrorCode::FamilySize: return "family size";
    case ErrorCode::InvalidPartition: return "invalid partition";
    case ErrorCode::CapacityExceeded: return "capacity exceeded";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::DegenerateMatrix: return "degenerate matrix";
    case ErrorCode::NumericalFailure: return "numerical failure";
    case ErrorCode::CalibrationFailure: return "calibration failure";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ConfigError: return "config error";
  }
  return "error";
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ mix64(a + 0x1000193ULL));
  h = mix64(h ^ mix64(b + 0x2000327ULL));
  h = mix64(h ^ mix64(c + 0x30004A3ULL));
  return h;
}

cd complex_normal(Rng& rng, double variance) {
  if (variance <= 0.0) return {0.0, 0.0};
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

void fill_complex_normal(Rng& rng, double variance, CVector& out) {
  if (variance <= 0.0) {
    out.setZero();
    return;
  }
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    const double re = n(rng);
    const double im = n(rng);
    out[k] = cd(re, im);
  }
}

}  // namespace celldisc
