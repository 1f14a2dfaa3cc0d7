#pragma once

#include <vector>

#include "achern/form.hpp"
#include "achern/matrix_series.hpp"
#include "achern/padic.hpp"

namespace achern {

using PadicMatrix = MatrixSeries<PadicRing>;

// Lambda satisfies the lift identities modulo p^precision.
struct LiftState {
  PadicMatrix lambda;
  int precision = 0;
};

// K minus the minimal p-adic valuation of each residual (0 when it vanishes mod p^K).
struct IdentityDeficits {
  int identity_I = 0;   // Lambda^t q^phi Lambda - alpha
  int identity_II = 0;  // s - eps s^t, s = P^t q^phi Lambda
  int congruence = 0;   // Lambda - x^(p) mod p
  bool ok() const { return identity_I == 0 && identity_II == 0 && congruence == 0; }
};

struct FrobeniusLiftResult {
  FormSpec form;
  LiftParams params;
  PadicMatrix lambda;
  IdentityDeficits residuals;
  bool constant_term_identity = false;
};

// Hensel lifting of the Frobenius lift Lambda = phi_p(x) over Z/p^K[[T]]/deg>D.
class ChernSolver {
 public:
  ChernSolver(FormSpec form, LiftParams params);

  const FormSpec& form() const { return form_; }
  const LiftParams& params() const { return params_; }
  const PadicRing& ring() const { return ring_; }
  const PadicMatrix& alpha() const { return alpha_; }        // (x^t q x)^(p), entrywise
  const PadicMatrix& frobenius_power() const { return P_; }  // x^(p), entrywise
  const PadicMatrix& q_phi() const { return Q_; }

  // Lambda_0 = x^(p), correct mod p.
  LiftState initial() const;
  // Lifts a state correct mod p^k to one correct mod p^(k+1).
  // Throws NonUniqueStep when the residuals lack the expected symmetry.
  LiftState hensel_step(const LiftState& state) const;
  FrobeniusLiftResult solve() const;

  IdentityDeficits deficits(const PadicMatrix& lambda) const;

 private:
  FormSpec form_;
  LiftParams params_;
  PadicRing ring_, ring1_;
  PadicMatrix alpha_, P_, Q_, PtQ_;
  PadicMatrix PtQ_inv_mod_p_;
};

FrobeniusLiftResult solve_frobenius_lift(const FormSpec& form, const LiftParams& params);
IdentityDeficits verify_lift_identities(const FrobeniusLiftResult& result);

// n = 1: q^((p-1)/2) * (q/p) * (1+T)^p.
PadicMatrix closed_form_rank1(const BigInt& q, const LiftParams& params);

}  // namespace achern
