#include "achern/ring_core.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "achern/errors.hpp"

namespace achern {

namespace {

// Exact quotient of integer polynomials (constant term first), monic divisor.
std::vector<long> divide_exact(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
  return quot;
}

void reduce_by(std::vector<Rational>& c, const std::vector<long>& poly) {
  const std::size_t deg = poly.size() - 1;
  for (std::size_t i = c.size(); i-- > deg;) {
    if (c[i] == 0) continue;
    const Rational lead = c[i];
    for (std::size_t j = 0; j < deg; ++j) c[i - deg + j] -= lead * poly[j];
    c[i] = 0;
  }
  c.resize(deg);
}

}  // namespace

std::vector<long> cyclotomic_polynomial(long N) {
  if (N < 1) throw std::invalid_argument("cyclotomic order must be positive");
  // x^N - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> poly(static_cast<std::size_t>(N) + 1, 0);
  poly[0] = -1;
  poly[N] = 1;
  for (long d = 1; d < N; ++d)
    if (N % d == 0) poly = divide_exact(poly, cyclotomic_polynomial(d));
  return poly;
}

std::shared_ptr<const BaseRingDesc> BaseRingDesc::make(long N0, long N) {
  if (N0 <= 0 || N0 % 2 != 0) throw InvalidParams("N0 must be a positive even integer");
  if (N <= 0) throw InvalidParams("N must be a positive integer");
  auto desc = std::make_shared<BaseRingDesc>();
  desc->N0 = N0;
  desc->N = N;
  desc->cyclo_poly = cyclotomic_polynomial(N);
  return desc;
}

bool BaseRingDesc::admissible(std::uint64_t p) const {
  return p > 2 && is_prime(p) && (static_cast<std::uint64_t>(N0) * static_cast<std::uint64_t>(N)) % p != 0;
}

void BaseRingDesc::require_admissible(std::uint64_t p) const {
  if (!admissible(p))
    throw InadmissiblePrime(std::to_string(p) + " is not an odd prime coprime to N0*N = " +
                            std::to_string(N0 * N));
}

bool BaseRingDesc::denominator_allowed(const BigInt& den) const {
  BigInt d = abs(den), g;
  const BigInt n0(N0);
  while (d != 1) {
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n0.get_mpz_t());
    if (g == 1) return false;
    d /= g;
  }
  return true;
}

CycloScalar::CycloScalar(BaseRingPtr ring, std::vector<Rational> coeffs) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("CycloScalar needs a base ring");
  for (auto& c : coeffs) {
    c.canonicalize();
    if (!ring_->denominator_allowed(c.get_den()))
      throw DenominatorNotInvertible(achern::to_string(c) + " has a denominator prime outside N0 = " +
                                     std::to_string(ring_->N0));
  }
  if (coeffs.size() < static_cast<std::size_t>(ring_->degree())) coeffs.resize(ring_->degree());
  reduce_by(coeffs, ring_->cyclo_poly);
  coeffs_ = std::move(coeffs);
}

CycloScalar CycloScalar::from_rational(BaseRingPtr ring, const Rational& r) {
  return CycloScalar(std::move(ring), {r});
}

CycloScalar CycloScalar::zeta_power(BaseRingPtr ring, long k) {
  const long N = ring->N;
  const long e = ((k % N) + N) % N;
  std::vector<Rational> c(static_cast<std::size_t>(std::max<long>(e + 1, 1)));
  c[e] = 1;
  return CycloScalar(std::move(ring), std::move(c));
}

bool CycloScalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycloScalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

const Rational& CycloScalar::rational_value() const {
  if (!is_rational()) throw std::logic_error("cyclotomic element " + to_string() + " is not rational");
  return coeffs_[0];
}

void CycloScalar::same_ring(const CycloScalar& o) const {
  if (ring_ != o.ring_ && (ring_->N0 != o.ring_->N0 || ring_->N != o.ring_->N))
    throw RingMismatch("cyclotomic elements over different base rings");
}

CycloScalar CycloScalar::operator+(const CycloScalar& o) const {
  same_ring(o);
  auto c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return CycloScalar(ring_, std::move(c));
}

CycloScalar CycloScalar::operator-(const CycloScalar& o) const {
  same_ring(o);
  auto c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return CycloScalar(ring_, std::move(c));
}

CycloScalar CycloScalar::operator*(const CycloScalar& o) const {
  same_ring(o);
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return CycloScalar(ring_, std::move(c));
}

CycloScalar CycloScalar::operator-() const { return scaled(Rational(-1)); }

CycloScalar CycloScalar::scaled(const Rational& s) const {
  auto c = coeffs_;
  for (auto& v : c) v *= s;
  return CycloScalar(ring_, std::move(c));
}

CycloScalar CycloScalar::pow(unsigned e) const {
  CycloScalar result = from_rational(ring_, 1);
  CycloScalar base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool CycloScalar::operator==(const CycloScalar& o) const {
  return ring_->N == o.ring_->N && ring_->N0 == o.ring_->N0 && coeffs_ == o.coeffs_;
}

std::string CycloScalar::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << achern::to_string(coeffs_[i]);
    if (i == 1) out << "*z";
    if (i > 1) out << "*z^" << i;
  }
  if (first) out << "0";
  return out.str();
}

CycloScalar frobenius_scalar(const CycloScalar& a, std::uint64_t p) {
  const auto& ring = a.ring();
  ring->require_admissible(p);
  const long N = ring->N;
  std::vector<Rational> c(static_cast<std::size_t>(N));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const auto e = static_cast<long>((static_cast<std::uint64_t>(i) * p) % static_cast<std::uint64_t>(N));
    c[e] += a.coeffs()[i];
  }
  return CycloScalar(ring, std::move(c));
}

CycloScalar p_derivation_scalar(const CycloScalar& a, std::uint64_t p) {
  const CycloScalar diff = frobenius_scalar(a, p) - a.pow(static_cast<unsigned>(p));
  std::vector<Rational> c = diff.coeffs();
  for (auto& v : c) {
    if (!mpz_divisible_ui_p(v.get_num_mpz_t(), p))
      throw InexactDivision("phi_p(a) - a^p is not divisible by " + std::to_string(p));
    v /= static_cast<unsigned long>(p);
  }
  return CycloScalar(a.ring(), std::move(c));
}

int legendre(const BigInt& q, std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre symbol needs an odd prime");
  const BigInt pp(static_cast<unsigned long>(p));
  BigInt a, r;
  mpz_mod(a.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t());
  mpz_powm_ui(r.get_mpz_t(), a.get_mpz_t(), (p - 1) / 2, pp.get_mpz_t());
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

std::optional<Rational> rational_reconstruct(const BigInt& residue, const BigInt& modulus) {
  if (residue < 0 || residue >= modulus) throw std::out_of_range("residue outside [0, modulus)");
  BigInt bound;
  {
    const BigInt half = modulus / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  }
  // Half-extended Euclid on (modulus, residue), tracking the cofactor of residue.
  BigInt r0 = modulus, r1 = residue, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  BigInt u = r1, v = t1;
  if (v < 0) {
    u = -u;
    v = -v;
  }
  if (v == 0 || v > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rational(u, v);
}

std::optional<Rational> rational_reconstruct(const BigInt& residue, std::uint64_t p, int K) {
  return rational_reconstruct(residue, pow_big(p, static_cast<unsigned>(K)));
}

}  // namespace achern
