#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "achern/rational.hpp"

namespace achern {

// Polynomial in x_1..x_m over Q, stored expanded.
class Poly {
 public:
  using Exponents = std::vector<int>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);
  static Poly monomial(const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  Poly derivative(int i) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  std::string to_string(const std::string& var = "x") const;

 private:
  void add_term(const Exponents& e, Rational c);
  void require_same(const Poly& o) const;

  int nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix poly_zero_matrix(int n, int nvars);
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix derivative(const PolyMatrix& a, int i);

// delta_i x = A_i x, i = 0..m-1, with A_i n x n over polynomials in m variables.
struct LinearConn {
  int m = 0, n = 0;
  std::vector<PolyMatrix> A;

  void validate() const;
};

// F_ij = d_i A_j - d_j A_i - [A_i, A_j]; throws IndexOutOfRange.
PolyMatrix curvature_F(const LinearConn& conn, int i, int j);

// Gamma[i][j][k], lowered indices.
using Christoffel = std::vector<std::vector<std::vector<Poly>>>;

// Gamma_ijk = 1/2 d_i q_jk; throws SymmetryViolation.
Christoffel chern_classical(const PolyMatrix& q, int m);
// Gamma_kij = 1/2 (d_k q_ij + d_i q_jk - d_j q_ki); throws SymmetryViolation, DimensionMismatch.
Christoffel levi_civita_classical(const PolyMatrix& q, int m);

// d_i q_jk = Gamma_ijk + Gamma_ikj
bool is_parallel(const Christoffel& g, const PolyMatrix& q);
// Gamma_ijk = Gamma_ikj
bool is_metric_symmetric(const Christoffel& g);
// Gamma_ijk = Gamma_jik
bool is_torsion_free(const Christoffel& g);

// The same polynomial in nvars >= f.nvars() variables.
Poly extend(const Poly& f, int nvars);

// delta_i on polynomials in (y_1..y_m, x_11..x_nn): d/dy_i plus the
// derivation with delta_i x = A_i x.
Poly apply_delta(const LinearConn& conn, int i, const Poly& f);
// [delta_i, delta_j] x = F_ij x, entrywise.
bool commutator_matches_F(const LinearConn& conn, int i, int j);

// Random polynomial of degree <= max_degree with coefficients a/b, |a| <= coeff_range, 1 <= b <= 3.
Poly random_poly(std::mt19937_64& rng, int nvars, int max_degree, int coeff_range = 5);
PolyMatrix random_poly_matrix(std::mt19937_64& rng, int n, int nvars, int max_degree, bool symmetric);

}  // namespace achern
