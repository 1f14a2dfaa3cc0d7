#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "achern/padic.hpp"
#include "achern/rational.hpp"

namespace achern {

// Describes A = Z[1/N0, zeta_N]. cyclo_poly holds the coefficients of the
// N-th cyclotomic polynomial, constant term first.
struct BaseRingDesc {
  long N0 = 2;
  long N = 1;
  std::vector<long> cyclo_poly;

  static std::shared_ptr<const BaseRingDesc> make(long N0 = 2, long N = 1);

  int degree() const { return static_cast<int>(cyclo_poly.size()) - 1; }
  bool admissible(std::uint64_t p) const;
  // Throws InadmissiblePrime unless p is an odd prime not dividing N0*N.
  void require_admissible(std::uint64_t p) const;
  bool denominator_allowed(const BigInt& den) const;
};

using BaseRingPtr = std::shared_ptr<const BaseRingDesc>;

std::vector<long> cyclotomic_polynomial(long N);

// Element of A in the power basis 1, z, ..., z^(phi(N)-1), z = zeta_N.
class CycloScalar {
 public:
  // Reduces coeffs modulo the cyclotomic polynomial. Throws
  // DenominatorNotInvertible when a denominator has a prime factor outside N0.
  CycloScalar(BaseRingPtr ring, std::vector<Rational> coeffs);

  static CycloScalar from_rational(BaseRingPtr ring, const Rational& r);
  static CycloScalar zeta_power(BaseRingPtr ring, long k);

  const BaseRingPtr& ring() const { return ring_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_rational() const;
  bool is_zero() const;
  // Throws std::logic_error unless is_rational().
  const Rational& rational_value() const;

  CycloScalar operator+(const CycloScalar& o) const;
  CycloScalar operator-(const CycloScalar& o) const;
  CycloScalar operator*(const CycloScalar& o) const;
  CycloScalar operator-() const;
  CycloScalar pow(unsigned e) const;
  CycloScalar scaled(const Rational& c) const;
  bool operator==(const CycloScalar& o) const;
  bool operator!=(const CycloScalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void same_ring(const CycloScalar& o) const;
  BaseRingPtr ring_;
  std::vector<Rational> coeffs_;
};

// Ring automorphism fixing rationals, zeta -> zeta^p.
CycloScalar frobenius_scalar(const CycloScalar& a, std::uint64_t p);

// Fermat quotient (phi_p(a) - a^p) / p.
CycloScalar p_derivation_scalar(const CycloScalar& a, std::uint64_t p);

// Euler criterion, values in {-1, 0, 1}. p must be an odd prime.
int legendre(const BigInt& q, std::uint64_t p);

// Bounded-height rational u/v with u = residue * v mod modulus,
// |u|, v <= sqrt(modulus / 2) and gcd(u, v) = 1, gcd(v, modulus) = 1.
std::optional<Rational> rational_reconstruct(const BigInt& residue, const BigInt& modulus);
std::optional<Rational> rational_reconstruct(const BigInt& residue, std::uint64_t p, int K);

}  // namespace achern
