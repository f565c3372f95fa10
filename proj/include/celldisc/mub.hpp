// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <vector>

#include "celldisc/common.hpp"

namespace celldisc {

/// A set of mutually unbiased orthonormal bases of C^dim, each stored with its vectors as columns.
struct MubFamily {
  int dim = 0;
  std::vector<CMatrix> bases;
};

/// Galois-field construction of `count` mutually unbiased bases in dimension d = p^n.
///
/// Index 0 is the identity. Index 1 + k, for field element k, is
///   odd p:  [B]_{l,m} = w^{tr(k l^2 + m l)} / sqrt(d),  w = exp(j 2 pi / p)
///   p = 2:  [B]_{l,m} = j^{Q_k(l)} (-1)^{<m,l>} / sqrt(d)
/// where Q_k(x) = sum_{a,b} tr(k e_a e_b) x_a x_b is evaluated over the integers mod 4 on the
/// coordinate bits of l in the polynomial basis e_a = x^a, and <m,l> is the bitwise dot product.
/// Index 1 (k = 0) is the Fourier-type basis: the DFT for prime d, Walsh-Hadamard for d = 2^n.
/// Output is deterministic for fixed (d, count).
MubFamily mub_family(int d, int count);

/// Largest |<b1_l, b2_k>| deviation from 1/sqrt(d) over all pairs of distinct bases, and the
/// worst unitarity residual; used by tests and the verification presets.
struct MubCheck {
  double max_unitarity_error = 0.0;
  double max_unbiasedness_error = 0.0;
};
MubCheck check_mub_family(const MubFamily& family);

}  // namespace celldisc
