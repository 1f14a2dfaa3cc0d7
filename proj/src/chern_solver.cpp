#include "achern/chern_solver.hpp"

#include "achern/errors.hpp"

namespace achern {

namespace {

PadicMatrix rational_constant(int n, int D, const PadicRing& ring, const std::vector<Rational>& values) {
  std::vector<u128> elems;
  elems.reserve(values.size());
  for (const auto& v : values) elems.push_back(ring.from_rational(v));
  return PadicMatrix::constant(n, D, ring, elems);
}

// (x^t m x)^(p) entrywise, x = 1 + T.
PadicMatrix frobenius_twisted_square(const PadicMatrix& x, const PadicMatrix& m, unsigned p) {
  return (x.transpose() * m * x).entrywise_pow(p);
}

u128 power(std::uint64_t p, int k) {
  u128 v = 1;
  for (int i = 0; i < k; ++i) v *= p;
  return v;
}

// Every coefficient divided by p^k (it must be divisible), reduced into `target`.
PadicMatrix shift_down(const PadicMatrix& m, int k, const PadicRing& target, const char* what) {
  const u128 pk = power(m.ring().p(), k);
  return m.map_coeffs(target, [&](u128 c) {
    if (c % pk != 0) throw NonUniqueStep(std::string(what) + " residual is not divisible by p^" + std::to_string(k));
    return static_cast<u128>((c / pk) % target.modulus());
  });
}

int deficit(const PadicMatrix& residual) {
  const PadicRing& ring = residual.ring();
  int best = ring.K();
  for (const auto& s : residual.entries())
    for (const auto& t : s.terms()) best = std::min(best, ring.valuation(t.coeff));
  return ring.K() - best;
}

}  // namespace

ChernSolver::ChernSolver(FormSpec form, LiftParams params)
    : form_(std::move(form)), params_(params), ring_(params.p, params.K), ring1_(params.p, 1) {
  form_.validate();
  params_.validate(form_);
  const int n = form_.n, D = params_.D;
  const auto p = static_cast<unsigned>(params_.p);
  const PadicMatrix x = PadicMatrix::identity(n, D, ring_) + PadicMatrix::variables(n, D, ring_);
  const PadicMatrix q = rational_constant(n, D, ring_, form_.rational_entries());
  Q_ = rational_constant(n, D, ring_, form_.frobenius_entries(params_.p));
  alpha_ = frobenius_twisted_square(x, q, p);
  P_ = x.entrywise_pow(p);
  PtQ_ = P_.transpose() * Q_;
  PtQ_inv_mod_p_ = matrix_inverse(PtQ_.map_coeffs(ring1_, [&](u128 c) { return c % ring1_.modulus(); }));
}

LiftState ChernSolver::initial() const { return {P_, 1}; }

LiftState ChernSolver::hensel_step(const LiftState& state) const {
  const int k = state.precision;
  if (k < 1 || k >= params_.K) throw InvalidParams("hensel_step needs 1 <= precision < K");
  const PadicMatrix& L = state.lambda;
  const int eps = form_.epsilon;

  const PadicMatrix rho1 = shift_down(alpha_ - L.transpose() * Q_ * L, k, ring1_, "identity (I)");
  const PadicMatrix s = PtQ_ * L;
  const PadicMatrix st = s.transpose();
  const PadicMatrix rho2 = shift_down(eps > 0 ? s - st : s + st, k, ring1_, "identity (II')");

  const PadicMatrix rho1t = rho1.transpose(), rho2t = rho2.transpose();
  if (rho1t != (eps > 0 ? rho1 : -rho1))
    throw NonUniqueStep("identity (I) residual at p^" + std::to_string(k) + " is not eps-symmetric");
  if (rho2t != (eps > 0 ? -rho2 : rho2))
    throw NonUniqueStep("identity (II') residual at p^" + std::to_string(k) + " is not eps-antisymmetric");

  const u128 half = ring1_.inv(ring1_.from_int(2));
  const PadicMatrix u = (rho1 - rho2).scaled(half);
  const PadicMatrix E = PtQ_inv_mod_p_ * u;

  const u128 pk = power(params_.p, k);
  const PadicMatrix correction = E.map_coeffs(ring_, [&](u128 c) { return ring_.mul(c, pk); });
  return {L + correction, k + 1};
}

FrobeniusLiftResult ChernSolver::solve() const {
  LiftState state = initial();
  while (state.precision < params_.K) state = hensel_step(state);
  FrobeniusLiftResult result{form_, params_, std::move(state.lambda), {}, false};
  result.residuals = deficits(result.lambda);
  result.constant_term_identity =
      PadicMatrix::constant(form_.n, params_.D, ring_, result.lambda.constant_part()).is_identity();
  return result;
}

IdentityDeficits ChernSolver::deficits(const PadicMatrix& lambda) const {
  IdentityDeficits d;
  d.identity_I = deficit(lambda.transpose() * Q_ * lambda - alpha_);
  const PadicMatrix s = PtQ_ * lambda;
  d.identity_II = deficit(form_.epsilon > 0 ? s - s.transpose() : s + s.transpose());
  const PadicMatrix diff = lambda - P_;
  for (const auto& e : diff.entries())
    for (const auto& t : e.terms())
      if (t.coeff % params_.p != 0) d.congruence = 1;
  return d;
}

FrobeniusLiftResult solve_frobenius_lift(const FormSpec& form, const LiftParams& params) {
  return ChernSolver(form, params).solve();
}

IdentityDeficits verify_lift_identities(const FrobeniusLiftResult& result) {
  return ChernSolver(result.form, result.params).deficits(result.lambda);
}

PadicMatrix closed_form_rank1(const BigInt& q, const LiftParams& params) {
  if (q == 0 || mpz_divisible_ui_p(q.get_mpz_t(), params.p) || params.p % 2 == 0 || !is_prime(params.p))
    throw InvalidParams("closed form needs an odd prime p not dividing q");
  const PadicRing ring(params.p, params.K);
  const u128 qr = ring.from_big(q);
  u128 c = ring.one();
  for (std::uint64_t i = 0; i < (params.p - 1) / 2; ++i) c = ring.mul(c, qr);
  if (legendre(q, params.p) < 0) c = ring.neg(c);
  const PadicMatrix x = PadicMatrix::identity(1, params.D, ring) + PadicMatrix::variables(1, params.D, ring);
  return x.entrywise_pow(static_cast<unsigned>(params.p)).scaled(c);
}

}  // namespace achern
