#include "achern/globalizer.hpp"

#include <numeric>

#include "achern/errors.hpp"

namespace achern {

namespace {

std::string entry_label(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

std::string first_difference(const IntegerMatrix& a, const IntegerMatrix& b) {
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      if (a(i, j) == b(i, j)) continue;
      const auto diff = a(i, j) - b(i, j);
      const auto& t = diff.terms().front();
      return "entry " + entry_label(i, j) + " monomial " + diff.basis().to_string(t.index, a.n());
    }
  return "";
}

IntegerMatrix integer_constant(int n, int D, const std::vector<Rational>& values, const BigInt& scale) {
  std::vector<BigInt> v;
  v.reserve(values.size());
  for (const auto& r : values) {
    const Rational s = r * Rational(scale);
    v.push_back(s.get_num());
  }
  return IntegerMatrix::constant(n, D, IntegerRing{}, v);
}

BigInt lcm_of_denominators(const std::vector<Rational>& values) {
  BigInt l = 1;
  for (const auto& r : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
  return l;
}

}  // namespace

bool Certificate::passed() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const CertificateCheck* Certificate::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::pair<IntegerMatrix, BigInt> clear_denominators(const RationalMatrix& m) {
  BigInt d = 1;
  for (const auto& s : m.entries()) d = lcm(d, common_denominator(s));
  IntegerMatrix out = m.map_coeffs(IntegerRing{}, [&](const Rational& c) {
    BigInt v = c.get_num() * (d / c.get_den());
    return v;
  });
  return {std::move(out), d};
}

Certificate certify_global(const GlobalLift& lift) {
  const FormSpec& form = lift.form;
  const int n = form.n, D = lift.params.D;
  const std::uint64_t p = lift.params.p;
  const auto pu = static_cast<unsigned>(p);
  Certificate cert;
  cert.K = lift.params.K;
  auto add = [&](std::string name, bool ok, std::string detail) {
    cert.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };

  // Constant term.
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (lift.lambda(i, j).constant_term() != Rational(i == j ? 1 : 0)) {
          ok = false;
          detail = "Lambda" + entry_label(i, j) + "(0) = " + to_string(lift.lambda(i, j).constant_term());
        }
    add("constant_term_identity", ok, detail);
  }

  // Exact identities, in integers: with Lambda = L/d, e*q integral and q^phi = q,
  //   (I)   e^(p-1) L^t (e q^phi) L = d^2 (x^t (e q) x)^(p)
  //   (II') P^t (e q^phi) L is eps-symmetric.
  const auto q_entries = form.rational_entries();
  const auto qphi_entries = form.frobenius_entries(p);
  const BigInt e = lcm(lcm_of_denominators(q_entries), lcm_of_denominators(qphi_entries));
  const IntegerRing Z;
  const IntegerMatrix eq = integer_constant(n, D, q_entries, e);
  const IntegerMatrix eqphi = integer_constant(n, D, qphi_entries, e);
  const IntegerMatrix x = IntegerMatrix::identity(n, D, Z) + IntegerMatrix::variables(n, D, Z);
  const IntegerMatrix P = x.entrywise_pow(pu);
  const auto [L, d] = clear_denominators(lift.lambda);
  {
    const IntegerMatrix lhs = (L.transpose() * eqphi * L).scaled(BigInt([&] {
      BigInt v;
      mpz_pow_ui(v.get_mpz_t(), e.get_mpz_t(), pu - 1);
      return v;
    }()));
    const IntegerMatrix rhs = (x.transpose() * eq * x).entrywise_pow(pu).scaled(d * d);
    add("identity_I_exact", lhs == rhs, first_difference(lhs, rhs));
  }
  {
    const IntegerMatrix s = P.transpose() * eqphi * L;
    const IntegerMatrix st = form.epsilon > 0 ? s.transpose() : -s.transpose();
    add("identity_II_exact", s == st, first_difference(s, st));
  }

  // p-integrality, congruence to x^(p) mod p, and coefficients in Z[1/N0].
  bool integral = true;
  {
    bool in_base = true, congruent = true;
    std::string d_int, d_base, d_cong;
    const RationalMatrix Pq = P.map_coeffs(RationalRing{}, [](const BigInt& v) { return Rational(v); });
    const RationalMatrix diff = lift.lambda - Pq;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (const auto& t : lift.lambda(i, j).terms()) {
          if (integral && mpz_divisible_ui_p(t.coeff.get_den_mpz_t(), p)) {
            integral = false;
            d_int = "entry " + entry_label(i, j) + " coefficient " + to_string(t.coeff);
          }
          if (in_base && !form.ring->denominator_allowed(t.coeff.get_den())) {
            in_base = false;
            d_base = "entry " + entry_label(i, j) + " coefficient " + to_string(t.coeff);
          }
        }
        for (const auto& t : diff(i, j).terms()) {
          if (!congruent || mpz_divisible_ui_p(t.coeff.get_den_mpz_t(), p)) continue;
          if (!mpz_divisible_ui_p(t.coeff.get_num_mpz_t(), p)) {
            congruent = false;
            d_cong = "entry " + entry_label(i, j) + " monomial " + diff.basis_ptr()->to_string(t.index, n);
          }
        }
      }
    add("p_integral", integral, d_int);
    add("coefficients_in_base_ring", in_base, d_base);
    add("congruent_to_frobenius_power", integral && congruent, integral ? d_cong : "not p-integral");
  }

  // Reduction mod p^K reproduces the solver output.
  {
    bool ok = integral && lift.padic_lambda.n() == n;
    std::string detail;
    if (ok) {
      const PadicRing R(p, lift.params.K);
      const PadicMatrix reduced = lift.lambda.map_coeffs(R, [&](const Rational& c) { return R.from_rational(c); });
      ok = reduced == lift.padic_lambda;
      if (!ok) detail = "reduction differs from the p-adic solve";
    } else {
      detail = integral ? "no solver output attached" : "not p-integral";
    }
    add("reduction_matches_solver", ok, detail);
  }
  return cert;
}

GlobalLift reconstruct_global_lift(const FrobeniusLiftResult& result) {
  const int n = result.form.n;
  const PadicRing& R = result.lambda.ring();
  const auto constant = result.lambda.constant_part();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (constant[i * n + j] != (i == j ? R.one() : R.zero()))
        throw NotGlobalAlongIdentity(result.form.name() + " at p = " + std::to_string(R.p()) + ": Lambda" +
                                     entry_label(i, j) + "(0) = " + R.to_string(constant[i * n + j]) + " mod " +
                                     std::to_string(R.p()) + "^" + std::to_string(R.K()));

  GlobalLift lift{result.form, result.params, RationalMatrix(n, result.lambda.basis_ptr(), RationalRing{}),
                  result.lambda, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Series<RationalRing>::Term> terms;
      for (const auto& t : result.lambda(i, j).terms()) {
        auto r = rational_reconstruct(from_u128(t.coeff), R.p(), R.K());
        if (!r)
          throw AmbiguousReconstruction("entry " + entry_label(i, j) + " monomial " +
                                        result.lambda.basis_ptr()->to_string(t.index, n) + " has no rational of height <= sqrt(" +
                                        std::to_string(R.p()) + "^" + std::to_string(R.K()) + "/2)");
        terms.push_back({t.index, std::move(*r)});
      }
      lift.lambda(i, j) = Series<RationalRing>::from_terms(lift.lambda.basis_ptr(), RationalRing{}, std::move(terms));
    }

  lift.certificate = certify_global(lift);
  if (!lift.certificate.passed()) {
    std::string failed;
    for (const auto& c : lift.certificate.checks)
      if (!c.passed) failed += (failed.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    throw CertificateFailure(result.form.name() + " at p = " + std::to_string(R.p()) + ", K = " +
                             std::to_string(R.K()) + ": " + failed);
  }
  return lift;
}

GlobalLift globalize(const FormSpec& form, const LiftParams& params, const GlobalizeOptions& options) {
  try {
    return reconstruct_global_lift(solve_frobenius_lift(form, params));
  } catch (const AmbiguousReconstruction&) {
    if (!options.escalate) throw;
  } catch (const CertificateFailure&) {
    if (!options.escalate) throw;
  }
  LiftParams higher = params;
  higher.K += options.escalation;
  return reconstruct_global_lift(solve_frobenius_lift(form, higher));
}

bool stable_under_escalation(const GlobalLift& lift, int extra) {
  LiftParams higher = lift.params;
  higher.K += extra;
  const GlobalLift again = reconstruct_global_lift(solve_frobenius_lift(lift.form, higher));
  return again.lambda == lift.lambda;
}

}  // namespace achern
