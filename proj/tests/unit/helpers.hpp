// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "celldisc/common.hpp"

namespace celldisc::test {

inline double rel_err(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

inline CMatrix random_complex(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = complex_normal(rng, 1.0);
  return m;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace celldisc::test
