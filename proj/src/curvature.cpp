#include "achern/curvature.hpp"

#include <algorithm>

#include "achern/errors.hpp"

namespace achern {

EndoImage EndoImage::from_lift(const GlobalLift& lift) {
  const int n = lift.form.n;
  return {lift.lambda - RationalMatrix::identity(n, lift.D(), RationalRing{}), lift.p()};
}

Series<RationalRing> apply_endo(const EndoImage& e, const Series<RationalRing>& f) {
  return substitute_cleared(f, std::span<const Series<RationalRing>>(e.phi.entries()));
}

RationalMatrix apply_endo(const EndoImage& e, const RationalMatrix& m) {
  e.phi.require_compatible(m);
  return m.map_entries([&](const Series<RationalRing>& s) { return apply_endo(e, s); });
}

CurvatureReport curvature_pair(const GlobalLift& lift_p, const GlobalLift& lift_p2) {
  if (lift_p.form.q != lift_p2.form.q || lift_p.form.n != lift_p2.form.n)
    throw FormMismatch(lift_p.form.name() + " vs " + lift_p2.form.name());
  if (lift_p.D() != lift_p2.D())
    throw FormMismatch("truncation degrees differ: " + std::to_string(lift_p.D()) + " vs " + std::to_string(lift_p2.D()));

  const auto e1 = EndoImage::from_lift(lift_p), e2 = EndoImage::from_lift(lift_p2);
  const std::uint64_t p = e1.p, p2 = e2.p;
  const int n = lift_p.form.n;

  CurvatureReport report;
  report.form = lift_p.form.name();
  report.p = p;
  report.p2 = p2;
  report.D = lift_p.D();
  report.commutator = apply_endo(e1, e2.phi) - apply_endo(e2, e1.phi);

  const Rational pp2(BigInt(static_cast<unsigned long>(p)) * BigInt(static_cast<unsigned long>(p2)));
  const Rational inv_pp2 = 1 / pp2;
  report.curvature = report.commutator.map_entries([&](const Series<RationalRing>& s) { return s.scaled(inv_pp2); });

  const auto& basis = *report.commutator.basis_ptr();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& t : report.commutator(i, j).terms()) {
        CoefficientRecord rec;
        rec.row = i;
        rec.col = j;
        rec.monomial = t.index;
        rec.degree = basis.degree(t.index);
        rec.commutator = t.coeff;
        rec.curvature = t.coeff * inv_pp2;
        rec.val_p = *valuation(t.coeff, p);
        rec.val_p2 = *valuation(t.coeff, p2);
        if (p != p2 && (rec.val_p < 1 || rec.val_p2 < 1))
          throw CurvatureNotDivisible(report.form + " (" + std::to_string(p) + "," + std::to_string(p2) + "): entry (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + ") monomial " +
                                      basis.to_string(t.index, n) + " coefficient " + to_string(t.coeff));
        report.coefficients.push_back(std::move(rec));
      }
  std::stable_sort(report.coefficients.begin(), report.coefficients.end(),
                   [](const CoefficientRecord& a, const CoefficientRecord& b) {
                     if (a.degree != b.degree) return a.degree < b.degree;
                     if (a.row != b.row) return a.row < b.row;
                     if (a.col != b.col) return a.col < b.col;
                     return a.monomial < b.monomial;
                   });
  report.lowest_degree = report.commutator.lowest_nonzero_degree();
  return report;
}

}  // namespace achern
