#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>

#include "achern/rational.hpp"

namespace achern {

using u128 = unsigned __int128;

u128 to_u128(const BigInt& z);  // requires 0 <= z < 2^128
BigInt from_u128(u128 v);

// 256-bit unsigned accumulator for sums of products of residues. With moduli
// below 2^112 each product fits in 224 bits, so 2^32 products can be summed
// before a reduction is needed.
struct Wide {
  std::uint64_t limb[4] = {0, 0, 0, 0};

  void clear() { limb[0] = limb[1] = limb[2] = limb[3] = 0; }
  bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }

  void add(u128 v) {
    u128 s = static_cast<u128>(limb[0]) + static_cast<std::uint64_t>(v);
    limb[0] = static_cast<std::uint64_t>(s);
    s = static_cast<u128>(limb[1]) + static_cast<std::uint64_t>(v >> 64) + (s >> 64);
    limb[1] = static_cast<std::uint64_t>(s);
    s = static_cast<u128>(limb[2]) + (s >> 64);
    limb[2] = static_cast<std::uint64_t>(s);
    limb[3] += static_cast<std::uint64_t>(s >> 64);
  }

  // this += a * b, for a, b < 2^112.
  void fma(u128 a, u128 b) {
    const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
    const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    if ((a1 | b1) == 0) {
      add(p00);
      return;
    }
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
    const u128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + p11;
    const std::uint64_t r[4] = {static_cast<std::uint64_t>(p00), static_cast<std::uint64_t>(mid),
                                static_cast<std::uint64_t>(hi), static_cast<std::uint64_t>(hi >> 64)};
    unsigned char carry = 0;
    for (int i = 0; i < 4; ++i) {
      u128 s = static_cast<u128>(limb[i]) + r[i] + carry;
      limb[i] = static_cast<std::uint64_t>(s);
      carry = static_cast<unsigned char>(s >> 64);
    }
  }
};

// Coefficient ring Z/p^K used by the series kernel. Elements are plain
// residues in [0, p^K); the ring object carries (p, K).
class PadicRing {
 public:
  using Elem = u128;
  using Acc = Wide;

  static constexpr int kMaxModulusBits = 112;

  PadicRing() = default;
  PadicRing(std::uint64_t p, int K);

  std::uint64_t p() const { return p_; }
  int K() const { return K_; }
  u128 modulus() const { return modulus_; }
  BigInt modulus_big() const { return from_u128(modulus_); }

  bool operator==(const PadicRing& o) const { return p_ == o.p_ && K_ == o.K_; }
  bool operator!=(const PadicRing& o) const { return !(*this == o); }
  std::string describe() const;

  Elem zero() const { return 0; }
  Elem one() const { return modulus_ == 1 ? 0 : 1; }
  Elem from_int(long long v) const;
  Elem from_big(const BigInt& v) const;
  // Throws NonUnit when the denominator is divisible by p.
  Elem from_rational(const Rational& r) const;

  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const {
    const u128 s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (modulus_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : modulus_ - a; }
  Elem mul(Elem a, Elem b) const {
    Wide w;
    w.fma(a, b);
    return reduce(w);
  }
  bool is_unit(Elem a) const { return static_cast<std::uint64_t>(a % p_) != 0; }
  Elem inv(Elem a) const;  // throws NonUnit

  void acc_clear(Acc& acc) const { acc.clear(); }
  void acc_fma(Acc& acc, Elem a, Elem b) const { acc.fma(a, b); }
  void acc_add(Acc& acc, Elem a) const { acc.add(a); }
  Elem reduce(const Acc& acc) const;

  // p-adic valuation of a residue, K for zero.
  int valuation(Elem a) const;
  std::string to_string(Elem a) const;

 private:
  std::uint64_t p_ = 0;
  int K_ = 0;
  u128 modulus_ = 0;
  mp_limb_t mod_limbs_[2] = {0, 0};
  mp_size_t mod_size_ = 0;
};

// Standalone element of Z/p^K with its (p, K) tag.
class PadicScalar {
 public:
  PadicScalar(const PadicRing& ring, const BigInt& residue);
  static PadicScalar from_raw(const PadicRing& ring, u128 residue);

  std::uint64_t p() const { return ring_.p(); }
  int K() const { return ring_.K(); }
  const PadicRing& ring() const { return ring_; }
  BigInt residue() const { return from_u128(residue_); }
  u128 raw() const { return residue_; }

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator-() const;
  PadicScalar inverse() const;
  bool operator==(const PadicScalar& o) const { return ring_ == o.ring_ && residue_ == o.residue_; }
  bool operator!=(const PadicScalar& o) const { return !(*this == o); }

 private:
  void check(const PadicScalar& o) const;
  PadicRing ring_;
  u128 residue_ = 0;
};

}  // namespace achern
