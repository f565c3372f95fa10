// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/dft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace celldisc {

namespace {

// exp(-j 2 pi k / n) with the exponent reduced mod n first, so large m*l products stay exact.
cd unit_root(long long k, int n) {
  const long long r = ((k % n) + n) % n;
  const double angle = -2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

CMatrix dft_matrix(int n) {
  require(n >= 1, ErrorCode::InvalidDimension, "DFT size must be positive");
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) f(m, l) = scale * unit_root(static_cast<long long>(m) * l, n);
  return f;
}

const CMatrix& cached_dft_matrix(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const CMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const CMatrix>(dft_matrix(n));
  return *slot;
}

CVector array_response(double omega, int n) {
  require(n >= 1, ErrorCode::InvalidDimension, "array size must be positive");
  CVector a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) a[m] = scale * std::polar(1.0, -static_cast<double>(m) * omega);
  return a;
}

CVector combined_dft_beam(int n, int first, int count) {
  require(n >= 1 && count >= 1 && first >= 0 && first + count <= n, ErrorCode::InvalidDimension,
          "combined beam outside the DFT grid");
  CVector w = CVector::Zero(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = first; l < first + count; ++l)
    for (int m = 0; m < n; ++m) w[m] += scale * unit_root(static_cast<long long>(m) * l, n);
  return w / std::sqrt(static_cast<double>(count));
}

double bin_frequency(int l, int n) {
  double omega = 2.0 * kPi * static_cast<double>(l) / static_cast<double>(n);
  if (omega >= kPi) omega -= 2.0 * kPi;
  return omega;
}

}  // namespace celldisc
