#include <doctest.h>

#include "achern/chern_solver.hpp"
#include "achern/errors.hpp"
#include "test_support.hpp"

using namespace achern;

namespace {

using IntMatrix = MatrixSeries<IntegerRing>;

IntMatrix to_integers(const PadicMatrix& m) {
  return m.map_coeffs(IntegerRing{}, [](u128 c) { return from_u128(c); });
}

// Recomputes both identities over Z from the integer lifts of Lambda and
// checks every residual coefficient is divisible by p^K.
bool identities_hold_over_integers(const FormSpec& form, const FrobeniusLiftResult& r) {
  const int n = form.n, D = r.params.D;
  const auto p = static_cast<unsigned>(r.params.p);
  const BigInt pK = pow_big(r.params.p, static_cast<unsigned>(r.params.K));
  std::vector<BigInt> qv;
  for (const auto& v : form.rational_entries()) qv.push_back(v.get_num());
  const IntegerRing Z;
  const IntMatrix q = IntMatrix::constant(n, D, Z, qv);
  const IntMatrix x = IntMatrix::identity(n, D, Z) + IntMatrix::variables(n, D, Z);
  const IntMatrix L = to_integers(r.lambda);
  const IntMatrix alpha = (x.transpose() * q * x).entrywise_pow(p);
  const IntMatrix P = x.entrywise_pow(p);
  const IntMatrix res1 = L.transpose() * q * L - alpha;
  const IntMatrix s = P.transpose() * q * L;
  const IntMatrix res2 = form.epsilon > 0 ? s - s.transpose() : s + s.transpose();
  const IntMatrix cong = L - P;
  auto divisible = [](const IntMatrix& m, const BigInt& d) {
    for (const auto& e : m.entries())
      for (const auto& t : e.terms())
        if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t())) return false;
    return true;
  };
  return divisible(res1, pK) && divisible(res2, pK) && divisible(cong, BigInt(p));
}

PadicMatrix reduce_to(const PadicMatrix& m, const PadicRing& target) {
  return m.map_coeffs(target, [&](u128 c) { return static_cast<u128>(c % target.modulus()); });
}

}  // namespace

TEST_CASE("rank one, q = 2, p = 3: first step and final lift") {
  const auto form = FormSpec::custom({{Rational(2)}});
  CHECK(form.epsilon == 1);
  const ChernSolver solver(form, {3, 10, 4});
  const auto step1 = solver.hensel_step(solver.initial());
  CHECK(step1.precision == 2);
  const PadicRing r9(3, 2);
  const auto x9 = PadicMatrix::identity(1, 4, r9) + PadicMatrix::variables(1, 4, r9);
  CHECK(reduce_to(step1.lambda, r9) == x9.entrywise_pow(3).scaled(r9.from_int(7)));

  const auto result = solver.solve();
  const PadicRing& R = solver.ring();
  const auto x = PadicMatrix::identity(1, 4, R) + PadicMatrix::variables(1, 4, R);
  CHECK(result.lambda == x.entrywise_pow(3).scaled(R.from_int(-2)));
  CHECK(result.residuals.ok());
}

TEST_CASE("rank one solver equals the closed form") {
  for (long q : {1, 2, 3, 5}) {
    const long N0 = q % 2 == 0 || q == 1 ? 2 : 2 * q;
    const auto form = FormSpec::custom({{Rational(q)}}, BaseRingDesc::make(N0, 1));
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      if ((2 * q) % static_cast<long>(p) == 0) continue;
      const LiftParams params{p, 16, 4};
      CAPTURE(q);
      CAPTURE(p);
      const auto result = solve_frobenius_lift(form, params);
      CHECK(result.lambda == closed_form_rank1(BigInt(q), params));
      CHECK(identities_hold_over_integers(form, result));
    }
  }
}

TEST_CASE("sp(2) lift has identity constant term and satisfies the identities") {
  const auto form = FormSpec::split_sp(1);
  for (std::uint64_t p : {3, 5, 7}) {
    const auto result = solve_frobenius_lift(form, {p, 16, 4});
    CHECK(result.constant_term_identity);
    CHECK(result.residuals.ok());
    CHECK(verify_lift_identities(result).ok());
    CHECK(identities_hold_over_integers(form, result));
  }
}

TEST_CASE("split forms and custom forms satisfy the identities over Z") {
  std::vector<FormSpec> forms = {FormSpec::split_so_even(1), FormSpec::split_so_odd(1),
                                 FormSpec::custom({{Rational(1), Rational(0)}, {Rational(0), Rational(2)}}),
                                 FormSpec::custom({{Rational(0), Rational(2)}, {Rational(-2), Rational(0)}})};
  for (const auto& form : forms)
    for (std::uint64_t p : {3, 5}) {
      CAPTURE(form.name());
      CAPTURE(p);
      const auto result = solve_frobenius_lift(form, {p, 8, 3});
      CHECK(result.residuals.ok());
      CHECK(identities_hold_over_integers(form, result));
    }
}

TEST_CASE("intermediate states are correct to their precision") {
  const auto form = FormSpec::split_so_odd(1);
  const ChernSolver solver(form, {5, 8, 3});
  auto state = solver.initial();
  while (true) {
    const auto d = solver.deficits(state.lambda);
    CHECK(d.identity_I <= 8 - state.precision);
    CHECK(d.identity_II <= 8 - state.precision);
    CHECK(d.congruence == 0);
    if (state.precision == 8) break;
    state = solver.hensel_step(state);
  }
}

TEST_CASE("a mutated lift is rejected") {
  for (const auto& form : {FormSpec::custom({{Rational(2)}}), FormSpec::split_sp(1), FormSpec::split_so_odd(1)}) {
    const LiftParams params{3, 10, 3};
    const ChernSolver solver(form, params);
    const auto result = solver.solve();
    const PadicRing& R = solver.ring();
    const u128 pk1 = R.from_big(pow_big(3, 9));
    for (int i = 0; i < form.n; ++i)
      for (int j = 0; j < form.n; ++j) {
        auto mutated = result.lambda;
        const auto T = Series<PadicRing>::variable(mutated.basis_ptr(), R, i * form.n + j);
        mutated(i, j) = mutated(i, j) + T.scaled(pk1);
        const auto d = solver.deficits(mutated);
        CAPTURE(form.name());
        CHECK_FALSE(d.ok());
      }
  }
}

TEST_CASE("a state that is wrong below its claimed precision is refused") {
  const auto form = FormSpec::split_sp(1);
  const ChernSolver solver(form, {3, 6, 2});
  auto state = solver.hensel_step(solver.initial());
  const PadicRing& R = solver.ring();
  state.lambda(0, 1) = state.lambda(0, 1) + Series<PadicRing>::variable(state.lambda.basis_ptr(), R, 1).scaled(R.from_int(3));
  CHECK_THROWS_AS(solver.hensel_step(state), NonUniqueStep);
}

TEST_CASE("parameter and form validation") {
  const auto sp2 = FormSpec::split_sp(1);
  CHECK_THROWS_AS(ChernSolver(sp2, {2, 8, 3}), InadmissiblePrime);
  CHECK_THROWS_AS(ChernSolver(sp2, {9, 8, 3}), InadmissiblePrime);
  CHECK_THROWS_AS(ChernSolver(FormSpec::split_sp(1, BaseRingDesc::make(6, 1)), {3, 8, 3}), InadmissiblePrime);
  CHECK_THROWS_AS(ChernSolver(sp2, {3, 1, 3}), InvalidParams);
  CHECK_THROWS_AS(ChernSolver(sp2, {3, 8, 0}), InvalidParams);
  CHECK_THROWS_AS(ChernSolver(sp2, {3, 80, 2}), PrecisionTooLarge);
  // det = 3 is a unit only when 3 | N0, and then 3 is inadmissible.
  CHECK_THROWS_AS(FormSpec::custom({{Rational(3)}}), InvalidForm);
  CHECK_THROWS_AS(ChernSolver(FormSpec::custom({{Rational(3)}}, BaseRingDesc::make(6, 1)), {3, 8, 3}), InadmissiblePrime);
  CHECK_THROWS_AS(FormSpec::custom({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}), InvalidForm);
  CHECK_THROWS_AS(FormSpec::custom({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}), InvalidForm);
  CHECK_THROWS_AS(FormSpec::split_sp(0), InvalidForm);

  auto gauss = BaseRingDesc::make(2, 4);
  const auto i = CycloScalar::zeta_power(gauss, 1);
  const auto form = FormSpec::custom(1, {i});
  CHECK(form.entries_roots_of_unity_or_zero());
  CHECK_THROWS_AS(ChernSolver(form, {5, 8, 3}), InvalidForm);
}

TEST_CASE("split form shapes") {
  const auto sp4 = FormSpec::split_sp(2);
  CHECK(sp4.n == 4);
  CHECK(sp4.epsilon == -1);
  CHECK(sp4.at(0, 2).rational_value() == 1);
  CHECK(sp4.at(2, 0).rational_value() == -1);
  CHECK(sp4.at(0, 3).is_zero());
  CHECK(sp4.name() == "sp(4)");
  const auto so5 = FormSpec::split_so_odd(2);
  CHECK(so5.n == 5);
  CHECK(so5.at(0, 0).rational_value() == 1);
  CHECK(so5.at(1, 3).rational_value() == 1);
  CHECK(so5.at(3, 1).rational_value() == 1);
  CHECK(so5.name() == "so(5)");
  CHECK(FormSpec::split_so_even(2).name() == "so(4)");
  CHECK(sp4.entries_roots_of_unity_or_zero());
  CHECK_FALSE(FormSpec::custom({{Rational(2)}}).entries_roots_of_unity_or_zero());
}
