// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/mub.hpp"

#include <bit>
#include <cmath>

#include "celldisc/galois.hpp"

namespace celldisc {

namespace {

CMatrix odd_characteristic_basis(const GaloisField& field, int k) {
  const int d = field.size();
  const int p = field.prime();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<cd> roots(p);
  for (int r = 0; r < p; ++r) roots[r] = std::polar(scale, 2.0 * kPi * r / p);
  CMatrix b(d, d);
  for (int l = 0; l < d; ++l) {
    const int kl2 = field.mul(k, field.mul(l, l));
    for (int m = 0; m < d; ++m) b(l, m) = roots[field.trace(field.add(kl2, field.mul(m, l)))];
  }
  return b;
}

CMatrix even_characteristic_basis(const GaloisField& field, int k) {
  const int d = field.size();
  const int n = field.exponent();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  // Symmetric binary matrix of the bilinear form (x, y) -> tr(k x y) in the polynomial basis.
  std::vector<int> form(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) form[a * n + c] = field.trace(field.mul(k, field.mul(field.basis(a), field.basis(c))));

  const cd quarter[4] = {{scale, 0.0}, {0.0, scale}, {-scale, 0.0}, {0.0, -scale}};
  CMatrix b(d, d);
  for (int l = 0; l < d; ++l) {
    int q = 0;
    for (int a = 0; a < n; ++a) {
      if (((l >> a) & 1) == 0) continue;
      for (int c = 0; c < n; ++c)
        if ((l >> c) & 1) q += form[a * n + c];
    }
    q &= 3;
    for (int m = 0; m < d; ++m) {
      const int parity = std::popcount(static_cast<unsigned>(m & l)) & 1;
      b(l, m) = quarter[(q + 2 * parity) & 3];
    }
  }
  return b;
}

}  // namespace

MubFamily mub_family(int d, int count) {
  const auto pp = prime_power(d);
  require(pp.has_value(), ErrorCode::UnsupportedDimension, std::to_string(d) + " is not a prime power");
  require(count >= 0 && count <= d + 1, ErrorCode::FamilySize,
          "at most d + 1 = " + std::to_string(d + 1) + " bases exist");

  MubFamily family;
  family.dim = d;
  if (count == 0) return family;
  family.bases.push_back(CMatrix::Identity(d, d));
  if (count == 1) return family;

  const GaloisField field(pp->prime, pp->exponent);
  for (int k = 0; k + 1 < count; ++k)
    family.bases.push_back(pp->prime == 2 ? even_characteristic_basis(field, k) : odd_characteristic_basis(field, k));
  return family;
}

MubCheck check_mub_family(const MubFamily& family) {
  MubCheck check;
  const double target = 1.0 / std::sqrt(static_cast<double>(family.dim));
  for (const auto& b : family.bases) {
    const CMatrix residual = b.adjoint() * b - CMatrix::Identity(family.dim, family.dim);
    check.max_unitarity_error = std::max(check.max_unitarity_error, residual.cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < family.bases.size(); ++i) {
    for (std::size_t j = i + 1; j < family.bases.size(); ++j) {
      const RMatrix mags = (family.bases[i].adjoint() * family.bases[j]).cwiseAbs();
      check.max_unbiasedness_error =
          std::max(check.max_unbiasedness_error, (mags.array() - target).abs().maxCoeff());
    }
  }
  return check;
}

}  // namespace celldisc
