#pragma once

#include <random>
#include <vector>

#include "achern/matrix_series.hpp"
#include "achern/ring_core.hpp"

namespace achern::testing {

inline Rational random_rational(std::mt19937_64& rng, long num_range, const std::vector<long>& den_choices) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<std::size_t> pick(0, den_choices.size() - 1);
  Rational r(num(rng), den_choices[pick(rng)]);
  r.canonicalize();
  return r;
}

inline CycloScalar random_cyclo(std::mt19937_64& rng, const BaseRingPtr& ring, long num_range = 9) {
  std::vector<Rational> c(static_cast<std::size_t>(ring->degree()));
  for (auto& v : c) v = random_rational(rng, num_range, {1, 2, 3, 4, 6});
  return CycloScalar(ring, std::move(c));
}

// Random series with roughly `density` of the monomials populated.
template <class Ring, class Gen>
Series<Ring> random_series(std::mt19937_64& rng, const BasisPtr& basis, const Ring& ring, double density, Gen&& gen,
                           bool zero_constant = false) {
  std::bernoulli_distribution keep(density);
  std::vector<typename Series<Ring>::Term> terms;
  for (std::size_t i = zero_constant ? 1 : 0; i < basis->size(); ++i)
    if (keep(rng)) terms.push_back({static_cast<MonomialBasis::Index>(i), gen(rng)});
  return Series<Ring>::from_terms(basis, ring, std::move(terms));
}

inline auto small_rational_gen() {
  return [](std::mt19937_64& rng) { return random_rational(rng, 7, {1, 2, 3}); };
}

inline auto small_integer_gen() {
  return [](std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-9, 9);
    return BigInt(d(rng));
  };
}

inline auto padic_gen(const PadicRing& ring) {
  return [ring](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d;
    const u128 v = (static_cast<u128>(d(rng)) << 64) | d(rng);
    return static_cast<u128>(v % ring.modulus());
  };
}

}  // namespace achern::testing
