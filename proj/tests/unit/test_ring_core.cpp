#include <doctest.h>

#include <set>

#include "achern/errors.hpp"
#include "achern/ring_core.hpp"
#include "test_support.hpp"

using namespace achern;
using achern::testing::random_cyclo;

namespace {

CycloScalar cyc(const BaseRingPtr& ring, std::vector<long> c) {
  std::vector<Rational> r;
  for (long v : c) r.emplace_back(v);
  return CycloScalar(ring, std::move(r));
}

// Quadratic residuosity by enumerating squares.
int legendre_by_squares(long q, long p) {
  const long a = ((q % p) + p) % p;
  if (a == 0) return 0;
  for (long x = 1; x < p; ++x)
    if ((x * x) % p == a) return 1;
  return -1;
}

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  auto ring = BaseRingDesc::make(6, 12);
  CHECK(ring->degree() == 4);
}

TEST_CASE("base ring validation") {
  CHECK_THROWS_AS(BaseRingDesc::make(3, 1), InvalidParams);
  auto ring = BaseRingDesc::make(6, 4);
  CHECK_FALSE(ring->admissible(2));
  CHECK_FALSE(ring->admissible(3));
  CHECK(ring->admissible(5));
  CHECK_FALSE(ring->admissible(9));
  CHECK_THROWS_AS(ring->require_admissible(3), InadmissiblePrime);
}

TEST_CASE("denominators must be supported on N0") {
  auto ring = BaseRingDesc::make(6, 1);
  CHECK_NOTHROW(CycloScalar::from_rational(ring, Rational(5, 12)));
  CHECK_THROWS_AS(CycloScalar::from_rational(ring, Rational(1, 5)), DenominatorNotInvertible);
}

TEST_CASE("frobenius_scalar examples") {
  auto q1 = BaseRingDesc::make(2, 1);
  CHECK(frobenius_scalar(CycloScalar::from_rational(q1, Rational(7, 2)), 5) ==
        CycloScalar::from_rational(q1, Rational(7, 2)));

  auto gauss = BaseRingDesc::make(2, 4);
  const auto i = cyc(gauss, {0, 1});
  CHECK(frobenius_scalar(i, 3) == -i);
  CHECK(frobenius_scalar(cyc(gauss, {1, 1}), 3) == cyc(gauss, {1, -1}));
  CHECK_THROWS_AS(frobenius_scalar(i, 2), InadmissiblePrime);
}

TEST_CASE("p_derivation_scalar examples") {
  auto q1 = BaseRingDesc::make(2, 1);
  CHECK(p_derivation_scalar(CycloScalar::from_rational(q1, 2), 3) == CycloScalar::from_rational(q1, -2));
  for (std::uint64_t p : {3, 5, 7, 11})
    CHECK(p_derivation_scalar(CycloScalar::from_rational(q1, 1), p).is_zero());

  auto gauss = BaseRingDesc::make(2, 4);
  // phi(1+i) = 1-i, (1+i)^3 = -2+2i, ((1-i)-(-2+2i))/3 = 1-i
  CHECK(cyc(gauss, {1, 1}).pow(3) == cyc(gauss, {-2, 2}));
  CHECK(p_derivation_scalar(cyc(gauss, {1, 1}), 3) == cyc(gauss, {1, -1}));
  CHECK_THROWS_AS(p_derivation_scalar(cyc(gauss, {1, 1}), 2), InadmissiblePrime);
}

TEST_CASE("legendre symbol") {
  CHECK(legendre(1, 3) == 1);
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(2, 3) == -1);
  CHECK(legendre(14, 7) == 0);
  CHECK(legendre(-1, 5) == 1);
  CHECK(legendre(-1, 7) == -1);
  for (long p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
    for (long q = -40; q <= 40; ++q) CHECK(legendre(q, p) == legendre_by_squares(q, p));
}

TEST_CASE("padic arithmetic") {
  const PadicRing r27(3, 3);
  const PadicScalar two(r27, 2);
  CHECK(two.inverse().residue() == 14);
  const PadicScalar x(r27, 17);
  CHECK((x + (-x)).residue() == 0);
  CHECK((PadicScalar(r27, 1) * x) == x);
  CHECK_THROWS_AS(PadicScalar(r27, 6).inverse(), NonUnit);
  CHECK_THROWS_AS(x + PadicScalar(PadicRing(3, 4), 1), PrecisionMismatch);
  CHECK_THROWS_AS(x * PadicScalar(PadicRing(5, 3), 1), PrecisionMismatch);
  CHECK_THROWS_AS(PadicRing(7, 60), PrecisionTooLarge);
}

TEST_CASE("padic multiplication near the modulus cap agrees with GMP") {
  std::mt19937_64 rng(11);
  for (auto [p, K] : {std::pair<std::uint64_t, int>{3, 70}, {7, 39}, {13, 30}, {5, 20}}) {
    const PadicRing ring(p, K);
    const BigInt m = ring.modulus_big();
    auto gen = achern::testing::padic_gen(ring);
    for (int trial = 0; trial < 200; ++trial) {
      const u128 a = gen(rng), b = gen(rng);
      BigInt expect = from_u128(a) * from_u128(b);
      mpz_mod(expect.get_mpz_t(), expect.get_mpz_t(), m.get_mpz_t());
      CHECK(from_u128(ring.mul(a, b)) == expect);
      BigInt sum = (from_u128(a) + from_u128(b)) % m;
      CHECK(from_u128(ring.add(a, b)) == sum);
    }
  }
}

TEST_CASE("rational_reconstruct examples") {
  CHECK(rational_reconstruct(122, 3, 5) == Rational(1, 2));
  CHECK(rational_reconstruct(7, 5, 6) == Rational(7));
  CHECK(rational_reconstruct(0, 5, 6) == Rational(0));
  const BigInt m = pow_big(3, 10);
  CHECK(rational_reconstruct(m - 2, m) == Rational(-2));
}

TEST_CASE("rational_reconstruct round trip over the height box") {
  const std::uint64_t p = 7;
  const int K = 8;
  const BigInt m = pow_big(p, K);
  int checked = 0;
  for (long u = -50; u <= 50; ++u)
    for (long v = 1; v <= 50; ++v) {
      if (v % 7 == 0) continue;
      Rational r(u, v);
      r.canonicalize();
      const auto residue = reduce_mod(r, m);
      REQUIRE(residue);
      const auto back = rational_reconstruct(*residue, p, K);
      REQUIRE(back);
      CHECK(*back == r);
      ++checked;
    }
  CHECK(checked > 4000);
}

TEST_CASE("rational_reconstruct reports absence outside the bound") {
  // 3^4 = 81 gives height bound 6; 41 = 1/2 mod 81, but some residues have no small preimage.
  CHECK(rational_reconstruct(41, 3, 4) == Rational(1, 2));
  bool any_absent = false;
  for (long r = 0; r < 81; ++r)
    if (!rational_reconstruct(r, 3, 4)) any_absent = true;
  CHECK(any_absent);
}

TEST_CASE("frobenius is a ring homomorphism and frobenii commute") {
  auto ring = BaseRingDesc::make(6, 12);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_cyclo(rng, ring), b = random_cyclo(rng, ring);
    for (std::uint64_t p : {5, 7, 11}) {
      CHECK(frobenius_scalar(a + b, p) == frobenius_scalar(a, p) + frobenius_scalar(b, p));
      CHECK(frobenius_scalar(a * b, p) == frobenius_scalar(a, p) * frobenius_scalar(b, p));
    }
    CHECK(frobenius_scalar(frobenius_scalar(a, 5), 7) == frobenius_scalar(frobenius_scalar(a, 7), 5));
  }
}

TEST_CASE("p-derivation product and sum laws") {
  auto ring = BaseRingDesc::make(6, 12);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_cyclo(rng, ring, 4), b = random_cyclo(rng, ring, 4);
    for (unsigned p : {5u, 7u}) {
      const auto da = p_derivation_scalar(a, p), db = p_derivation_scalar(b, p);
      const Rational pp(static_cast<long>(p));
      CHECK(p_derivation_scalar(a * b, p) == a.pow(p) * db + b.pow(p) * da + (da * db).scaled(pp));
      auto cross = CycloScalar::from_rational(ring, 0);
      for (unsigned i = 1; i < p; ++i)
        cross = cross + (a.pow(i) * b.pow(p - i)).scaled(Rational(binomial(p, i), static_cast<long>(p)));
      CHECK(p_derivation_scalar(a + b, p) == da + db - cross);
    }
  }
}
