#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "achern/globalizer.hpp"

namespace achern {

// The ring endomorphism of A[[T]] fixing coefficients with T -> Phi.
struct EndoImage {
  RationalMatrix phi;  // Lambda - 1, zero constant term
  std::uint64_t p = 0;

  static EndoImage from_lift(const GlobalLift& lift);
};

Series<RationalRing> apply_endo(const EndoImage& e, const Series<RationalRing>& f);
RationalMatrix apply_endo(const EndoImage& e, const RationalMatrix& m);

struct CoefficientRecord {
  int row = 0, col = 0;
  MonomialBasis::Index monomial = 0;
  int degree = 0;
  Rational commutator;
  Rational curvature;
  int val_p = 0, val_p2 = 0;
};

struct CurvatureReport {
  std::string form;
  std::uint64_t p = 0, p2 = 0;
  int D = 0;
  RationalMatrix commutator;  // phi_p(phi_p2(T)) - phi_p2(phi_p(T))
  RationalMatrix curvature;   // commutator / (p p2)
  // Nonzero commutator coefficients by degree, then entry, then monomial.
  std::vector<CoefficientRecord> coefficients;
  std::optional<int> lowest_degree;

  bool vanishes() const { return coefficients.empty(); }
  const CoefficientRecord* first_nonzero() const { return coefficients.empty() ? nullptr : &coefficients.front(); }
};

// Throws FormMismatch for incompatible lifts, CurvatureNotDivisible when some
// commutator coefficient is not divisible by both primes.
CurvatureReport curvature_pair(const GlobalLift& lift_p, const GlobalLift& lift_p2);

}  // namespace achern
