// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The celldisc authors

#include "celldisc/galois.hpp"

#include "celldisc/common.hpp"

namespace celldisc {

namespace {

constexpr int kMaxFieldSize = 2048;

using Poly = std::vector<int>;  // lowest degree first

Poly digits(int value, int p, int length) {
  Poly out(length, 0);
  for (int j = 0; j < length; ++j) {
    out[j] = value % p;
    value /= p;
  }
  return out;
}

int encode(const Poly& poly, int p) {
  int value = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) value = value * p + *it;
  return value;
}

int degree(const Poly& poly) {
  for (int j = static_cast<int>(poly.size()) - 1; j >= 0; --j)
    if (poly[j] != 0) return j;
  return -1;
}

int inverse_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  return 0;
}

// Remainder of num modulo the monic-or-not divisor den over GF(p).
Poly poly_mod(Poly num, const Poly& den, int p) {
  const int dd = degree(den);
  const int lead_inv = inverse_mod(den[dd], p);
  for (int k = degree(num); k >= dd; --k) {
    const int c = (num[k] * lead_inv) % p;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) num[k - dd + j] = ((num[k - dd + j] - c * den[j]) % p + p) % p;
  }
  num.resize(std::max(dd, 1));
  return num;
}

bool is_irreducible(const Poly& f, int p) {
  const int n = degree(f);
  if (n <= 1) return n == 1;
  for (int d = 1; d <= n / 2; ++d) {
    int count = 1;
    for (int j = 0; j < d; ++j) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly g = digits(low, p, d);
      g.push_back(1);
      const Poly r = poly_mod(f, g, p);
      if (degree(r) < 0) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<PrimePower> prime_power(int d) {
  if (d < 2) return std::nullopt;
  int p = 2;
  while (p * p <= d && d % p != 0) ++p;
  if (d % p != 0) p = d;
  int n = 0;
  int rest = d;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) return std::nullopt;
  return PrimePower{p, n};
}

GaloisField::GaloisField(int prime, int exponent) : prime_(prime), exponent_(exponent), size_(1) {
  const auto pp = prime_power(prime);
  require(pp && pp->exponent == 1, ErrorCode::UnsupportedDimension, "field characteristic must be prime");
  require(exponent >= 1, ErrorCode::UnsupportedDimension, "field degree must be positive");
  for (int j = 0; j < exponent; ++j) {
    size_ *= prime;
    require(size_ <= kMaxFieldSize, ErrorCode::UnsupportedDimension, "field too large for table arithmetic");
  }

  for (int low = 0; low < size_; ++low) {
    Poly f = digits(low, prime, exponent);
    f.push_back(1);
    if (is_irreducible(f, prime)) {
      modulus_ = f;
      break;
    }
  }
  require(!modulus_.empty(), ErrorCode::NumericalFailure, "no irreducible polynomial found");

  const auto q = static_cast<std::size_t>(size_);
  add_.resize(q * q);
  mul_.resize(q * q);
  std::vector<Poly> polys(q);
  for (int a = 0; a < size_; ++a) polys[a] = digits(a, prime, exponent);
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      Poly sum(exponent);
      for (int j = 0; j < exponent; ++j) sum[j] = (polys[a][j] + polys[b][j]) % prime;
      add_[index(a, b)] = encode(sum, prime);

      Poly prod(2 * exponent - 1, 0);
      for (int i = 0; i < exponent; ++i)
        for (int j = 0; j < exponent; ++j) prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % prime;
      Poly r = poly_mod(prod, modulus_, prime);
      r.resize(exponent, 0);
      mul_[index(a, b)] = encode(r, prime);
    }
  }

  trace_.resize(q);
  for (int a = 0; a < size_; ++a) {
    int acc = 0;
    int power = a;
    for (int j = 0; j < exponent; ++j) {
      acc = add(acc, power);
      int next = 1;
      for (int k = 0; k < prime; ++k) next = mul(next, power);
      power = next;
    }
    require(acc < prime, ErrorCode::NumericalFailure, "trace left the prime subfield");
    trace_[a] = acc;
  }
}

int GaloisField::neg(int a) const {
  int out = 0;
  int scale = 1;
  for (int j = 0; j < exponent_; ++j) {
    const int digit = a % prime_;
    a /= prime_;
    out += ((prime_ - digit) % prime_) * scale;
    scale *= prime_;
  }
  return out;
}

int GaloisField::basis(int j) const {
  require(j >= 0 && j < exponent_, ErrorCode::InvalidArgument, "basis index out of range");
  int value = 1;
  for (int k = 0; k < j; ++k) value *= prime_;
  return value;
}

}  // namespace celldisc
