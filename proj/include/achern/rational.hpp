#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace achern {

using BigInt = mpz_class;
using Rational = mpq_class;

// "num/den", den omitted when it is 1, leading '-' for negatives.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

// Accepts "[+|-]num[/den]". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

// p-adic valuation; std::nullopt for zero.
std::optional<int> valuation(const BigInt& z, std::uint64_t p);
std::optional<int> valuation(const Rational& r, std::uint64_t p);

BigInt pow_big(std::uint64_t base, unsigned exponent);

// Residue of r modulo m in [0, m). Returns std::nullopt when the
// denominator is not invertible modulo m.
std::optional<BigInt> reduce_mod(const Rational& r, const BigInt& m);

bool is_prime(std::uint64_t n);

}  // namespace achern
