// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace celldisc {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Random engine used everywhere; state is always passed explicitly.
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
  InvalidDimension,
  InfeasibleSupport,
  DegenerateGeometry,
  UnsupportedDimension,
  FamilySize,
  InvalidPartition,
  CapacityExceeded,
  DimensionMismatch,
  DegenerateMatrix,
  NumericalFailure,
  CalibrationFailure,
  InvalidArgument,
  ConfigError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic child seed for the stream identified by (base, a, b, c).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
cd complex_normal(Rng& rng, double variance);

/// Fill `out` with i.i.d. CN(0, variance) samples.
void fill_complex_normal(Rng& rng, double variance, CVector& out);

}  // namespace celldisc
