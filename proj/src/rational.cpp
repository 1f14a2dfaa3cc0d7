#include "achern/rational.hpp"

#include <stdexcept>

namespace achern {

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  // mpq_get_str already omits a unit denominator.
  return r.get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && part[0] == '-') i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r{BigInt(num), d};
  r.canonicalize();
  return r;
}

std::optional<int> valuation(const BigInt& z, std::uint64_t p) {
  if (z == 0) return std::nullopt;
  BigInt t = abs(z);
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::optional<int> valuation(const Rational& r, std::uint64_t p) {
  if (r == 0) return std::nullopt;
  return *valuation(r.get_num(), p) - *valuation(r.get_den(), p);
}

BigInt pow_big(std::uint64_t base, unsigned exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

std::optional<BigInt> reduce_mod(const Rational& r, const BigInt& m) {
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return BigInt(0);
    return std::nullopt;
  }
  BigInt out = r.get_num() * inv;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), m.get_mpz_t());
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace achern
