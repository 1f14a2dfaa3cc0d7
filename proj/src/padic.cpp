#include "achern/padic.hpp"

#include <algorithm>

#include "achern/errors.hpp"

namespace achern {

u128 to_u128(const BigInt& z) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 128) throw std::out_of_range("value does not fit in 128 bits");
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
  return (static_cast<u128>(limbs[1]) << 64) | limbs[0];
}

BigInt from_u128(u128 v) {
  const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  BigInt out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  return out;
}

PadicRing::PadicRing(std::uint64_t p, int K) : p_(p), K_(K) {
  if (p < 2) throw InvalidParams("p-adic ring needs p >= 2");
  if (K < 1) throw InvalidParams("p-adic precision K must be >= 1");
  const BigInt m = pow_big(p, static_cast<unsigned>(K));
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > static_cast<std::size_t>(kMaxModulusBits))
    throw PrecisionTooLarge(std::to_string(p) + "^" + std::to_string(K) + " exceeds 2^" +
                            std::to_string(kMaxModulusBits));
  modulus_ = to_u128(m);
  mod_limbs_[0] = static_cast<mp_limb_t>(modulus_);
  mod_limbs_[1] = static_cast<mp_limb_t>(modulus_ >> 64);
  mod_size_ = mod_limbs_[1] != 0 ? 2 : 1;
}

std::string PadicRing::describe() const { return "Z/" + std::to_string(p_) + "^" + std::to_string(K_); }

PadicRing::Elem PadicRing::from_int(long long v) const {
  if (v >= 0) return static_cast<u128>(v) % modulus_;
  const u128 a = static_cast<u128>(-(v + 1)) + 1;
  return neg(a % modulus_);
}

PadicRing::Elem PadicRing::from_big(const BigInt& v) const {
  BigInt r;
  const BigInt m = modulus_big();
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return to_u128(r);
}

PadicRing::Elem PadicRing::from_rational(const Rational& r) const {
  auto red = reduce_mod(r, modulus_big());
  if (!red) throw NonUnit("denominator of " + achern::to_string(r) + " is not a unit mod " + std::to_string(p_));
  return to_u128(*red);
}

PadicRing::Elem PadicRing::inv(Elem a) const {
  if (!is_unit(a)) throw NonUnit(to_string(a) + " is not a unit in " + describe());
  BigInt out;
  const BigInt aa = from_u128(a), m = modulus_big();
  mpz_invert(out.get_mpz_t(), aa.get_mpz_t(), m.get_mpz_t());
  return to_u128(out);
}

PadicRing::Elem PadicRing::reduce(const Acc& acc) const {
  mp_size_t nn = 4;
  while (nn > 0 && acc.limb[nn - 1] == 0) --nn;
  if (nn == 0) return 0;
  if (nn <= 2) {
    const u128 v = (static_cast<u128>(acc.limb[1]) << 64) | acc.limb[0];
    return v % modulus_;
  }
  mp_limb_t num[4], quot[4], rem[2] = {0, 0};
  std::copy(acc.limb, acc.limb + 4, num);
  mpn_tdiv_qr(quot, rem, 0, num, nn, mod_limbs_, mod_size_);
  return (static_cast<u128>(mod_size_ == 2 ? rem[1] : 0) << 64) | rem[0];
}

int PadicRing::valuation(Elem a) const {
  if (a == 0) return K_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

std::string PadicRing::to_string(Elem a) const { return from_u128(a).get_str(); }

PadicScalar::PadicScalar(const PadicRing& ring, const BigInt& residue) : ring_(ring) {
  if (residue < 0 || residue >= ring.modulus_big())
    throw std::out_of_range("residue outside [0, p^K)");
  residue_ = to_u128(residue);
}

PadicScalar PadicScalar::from_raw(const PadicRing& ring, u128 residue) {
  return PadicScalar(ring, from_u128(residue % ring.modulus()));
}

void PadicScalar::check(const PadicScalar& o) const {
  if (ring_ != o.ring_) throw PrecisionMismatch(ring_.describe() + " vs " + o.ring_.describe());
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  check(o);
  return from_raw(ring_, ring_.add(residue_, o.residue_));
}
PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
  check(o);
  return from_raw(ring_, ring_.sub(residue_, o.residue_));
}
PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  check(o);
  return from_raw(ring_, ring_.mul(residue_, o.residue_));
}
PadicScalar PadicScalar::operator-() const { return from_raw(ring_, ring_.neg(residue_)); }
PadicScalar PadicScalar::inverse() const { return from_raw(ring_, ring_.inv(residue_)); }

}  // namespace achern
