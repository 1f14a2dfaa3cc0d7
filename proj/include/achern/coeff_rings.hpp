#pragma once

#include <string>

#include "achern/errors.hpp"
#include "achern/padic.hpp"
#include "achern/rational.hpp"

namespace achern {

// Coefficient rings pluggable into Series. Each provides Elem / Acc types,
// the ring operations, and a fused accumulate-then-reduce protocol used by
// the multiplication kernel.

struct RationalRing {
  using Elem = Rational;
  using Acc = Rational;

  bool operator==(const RationalRing&) const { return true; }
  bool operator!=(const RationalRing&) const { return false; }
  std::string describe() const { return "Q"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return Rational(static_cast<long>(v)); }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_unit(const Elem& a) const { return sgn(a) != 0; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw NonUnit("zero is not invertible");
    return 1 / a;
  }

  void acc_clear(Acc& acc) const { acc = 0; }
  void acc_fma(Acc& acc, const Elem& a, const Elem& b) const {
    Rational t;
    mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
  }
  void acc_add(Acc& acc, const Elem& a) const { acc += a; }
  Elem reduce(const Acc& acc) const { return acc; }

  std::string to_string(const Elem& a) const { return achern::to_string(a); }
};

struct IntegerRing {
  using Elem = BigInt;
  using Acc = BigInt;

  bool operator==(const IntegerRing&) const { return true; }
  bool operator!=(const IntegerRing&) const { return false; }
  std::string describe() const { return "Z"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return BigInt(static_cast<long>(v)); }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_unit(const Elem& a) const { return a == 1 || a == -1; }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) throw NonUnit(a.get_str() + " is not a unit in Z");
    return a;
  }

  void acc_clear(Acc& acc) const { acc = 0; }
  void acc_fma(Acc& acc, const Elem& a, const Elem& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  void acc_add(Acc& acc, const Elem& a) const { acc += a; }
  Elem reduce(const Acc& acc) const { return acc; }

  std::string to_string(const Elem& a) const { return a.get_str(); }
};

}  // namespace achern
