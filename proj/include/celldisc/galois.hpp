// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#pragma once

#include <optional>
#include <vector>

namespace celldisc {

struct PrimePower {
  int prime = 0;
  int exponent = 0;
};

/// Decomposes d = p^n with n >= 1; empty otherwise.
std::optional<PrimePower> prime_power(int d);

/// Arithmetic in GF(p^n).
///
/// Elements are integers in [0, p^n); digit j (base p) is the coefficient of x^j in the
/// polynomial representation. The modulus is the monic irreducible of degree n with the
/// smallest base-p encoding, so every table is reproducible. For p = 2 this is
/// x, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x+1.
class GaloisField {
 public:
  GaloisField(int prime, int exponent);

  int prime() const { return prime_; }
  int exponent() const { return exponent_; }
  int size() const { return size_; }

  /// Coefficients of the modulus, lowest degree first (length n + 1, leading 1).
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[index(a, b)]; }
  int mul(int a, int b) const { return mul_[index(a, b)]; }
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }

  /// Absolute trace to GF(p): a + a^p + ... + a^(p^(n-1)).
  int trace(int a) const { return trace_[a]; }

  /// Element x^j of the polynomial basis.
  int basis(int j) const;

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * size_ + b; }

  int prime_;
  int exponent_;
  int size_;
  std::vector<int> modulus_;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> trace_;
};

}  // namespace celldisc
