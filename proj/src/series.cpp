#include "achern/series.hpp"

namespace achern {

BigInt common_denominator(const Series<RationalRing>& f) {
  BigInt d = 1;
  for (const auto& t : f.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.get_den_mpz_t());
  return d;
}

Series<RationalRing> substitute_cleared(const Series<RationalRing>& f, std::span<const Series<RationalRing>> images) {
  const auto& basis = f.basis();
  const int D = basis.max_degree();
  if (static_cast<int>(images.size()) != basis.nvars())
    throw std::invalid_argument("substitute needs one image per variable");

  BigInt d = 1;
  for (const auto& img : images) {
    f.require_compatible(img);
    if (sgn(img.constant_term()) != 0) throw NonzeroConstantTerm("substitution image " + img.to_string());
    const BigInt di = common_denominator(img);
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), di.get_mpz_t());
  }
  const BigInt e = common_denominator(f);

  const IntegerRing zz;
  std::vector<Series<IntegerRing>> cleared;
  cleared.reserve(images.size());
  for (const auto& img : images)
    cleared.push_back(img.map_coeffs(zz, [&](const Rational& c) { return BigInt(c.get_num() * (d / c.get_den())); }));

  std::vector<BigInt> dpow(static_cast<std::size_t>(D) + 1);
  dpow[0] = 1;
  for (int k = 1; k <= D; ++k) dpow[k] = dpow[k - 1] * d;

  std::vector<Series<IntegerRing>::Term> g_terms;
  g_terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    BigInt g = t.coeff.get_num() * (e / t.coeff.get_den());
    g *= dpow[D - basis.degree(t.index)];
    g_terms.push_back({t.index, std::move(g)});
  }
  const auto g = Series<IntegerRing>::from_terms(f.basis_ptr(), zz, std::move(g_terms));
  const auto composed = substitute(g, std::span<const Series<IntegerRing>>(cleared));

  const BigInt scale = e * dpow[D];
  const RationalRing qq;
  return composed.map_coeffs(qq, [&](const BigInt& c) {
    Rational r(c, scale);
    r.canonicalize();
    return r;
  });
}

}  // namespace achern
