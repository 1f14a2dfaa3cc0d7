#pragma once

#include <string>
#include <utility>
#include <vector>

#include "achern/chern_solver.hpp"

namespace achern {

using RationalMatrix = MatrixSeries<RationalRing>;
using IntegerMatrix = MatrixSeries<IntegerRing>;

struct CertificateCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Certificate {
  int K = 0;
  std::vector<CertificateCheck> checks;
  bool passed() const;
  const CertificateCheck* find(const std::string& name) const;
};

// Exact lift along the identity, valid to degree D.
struct GlobalLift {
  FormSpec form;
  LiftParams params;  // K is the precision the reconstruction used
  RationalMatrix lambda;
  PadicMatrix padic_lambda;
  Certificate certificate;

  std::uint64_t p() const { return params.p; }
  int D() const { return params.D; }
};

// Throws NotGlobalAlongIdentity, AmbiguousReconstruction or CertificateFailure.
GlobalLift reconstruct_global_lift(const FrobeniusLiftResult& result);
// Exact re-verification; never throws on a failed check.
Certificate certify_global(const GlobalLift& lift);

struct GlobalizeOptions {
  bool escalate = true;
  int escalation = 8;
};

// Solve, then reconstruct; on AmbiguousReconstruction / CertificateFailure
// retries once at K + escalation when allowed.
GlobalLift globalize(const FormSpec& form, const LiftParams& params, const GlobalizeOptions& options = {});

// Re-solves at K + extra and compares the exact coefficients.
bool stable_under_escalation(const GlobalLift& lift, int extra = 8);

// (L, d) with L = d * m integral and d the least such positive integer.
std::pair<IntegerMatrix, BigInt> clear_denominators(const RationalMatrix& m);

}  // namespace achern
