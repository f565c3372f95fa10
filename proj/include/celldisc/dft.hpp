// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include "celldisc/common.hpp"

namespace celldisc {

/// Unitary DFT matrix, [F]_{m,l} = exp(-j 2 pi m l / n) / sqrt(n).
CMatrix dft_matrix(int n);

/// Process-wide cached copy of dft_matrix(n); safe to call from several threads.
const CMatrix& cached_dft_matrix(int n);

/// ULA response for spatial frequency `omega`: element m is exp(-j m omega) / sqrt(n).
CVector array_response(double omega, int n);

/// Sum of DFT columns [first, first + count) scaled to unit norm.
CVector combined_dft_beam(int n, int first, int count);

/// Spatial frequency of DFT bin `l`, wrapped to [-pi, pi).
double bin_frequency(int l, int n);

}  // namespace celldisc
