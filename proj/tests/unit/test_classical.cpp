#include <doctest.h>

#include <optional>
#include <set>

#include "achern/classical.hpp"
#include "achern/errors.hpp"

using namespace achern;

namespace {

enum class SecondIdentity { Metric, Torsion };

// Solves d_i q_jk = G_ijk + G_ikj together with G_ijk = G_ikj (Metric) or
// G_ijk = G_jik (Torsion) by Gaussian elimination, monomial by monomial.
// Returns nullopt unless the solution exists and is unique.
std::optional<Christoffel> solve_christoffel(const PolyMatrix& q, int m, SecondIdentity kind) {
  const int n = static_cast<int>(q.size());
  const int unknowns = m * n * n;
  auto var = [&](int i, int j, int k) { return (i * n + j) * n + k; };

  std::set<Poly::Exponents> monomials;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Poly d = q[j][k].derivative(i);
        for (const auto& [e, c] : d.terms()) monomials.insert(e);
      }

  Christoffel g(static_cast<std::size_t>(m),
                std::vector<std::vector<Poly>>(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n), Poly(m))));
  // An empty monomial set still needs the rank check.
  if (monomials.empty()) monomials.insert(Poly::Exponents(static_cast<std::size_t>(m), 0));

  for (const auto& mono : monomials) {
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          std::vector<Rational> row(static_cast<std::size_t>(unknowns) + 1);
          row[var(i, j, k)] += 1;
          row[var(i, k, j)] += 1;
          const Poly d = q[j][k].derivative(i);
          const auto& t = d.terms();
          auto it = t.find(mono);
          row[unknowns] = it == t.end() ? Rational(0) : it->second;
          rows.push_back(row);
          std::vector<Rational> sym(static_cast<std::size_t>(unknowns) + 1);
          if (kind == SecondIdentity::Metric) {
            sym[var(i, j, k)] += 1;
            sym[var(i, k, j)] -= 1;
          } else {
            if (j >= m || i >= n) return std::nullopt;
            sym[var(i, j, k)] += 1;
            sym[var(j, i, k)] -= 1;
          }
          rows.push_back(sym);
        }
    // Row reduction.
    int rank = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < unknowns && rank < static_cast<int>(rows.size()); ++c) {
      int piv = -1;
      for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (rows[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[piv], rows[rank]);
      const Rational inv = 1 / rows[rank][c];
      for (auto& v : rows[rank]) v *= inv;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == rank || rows[r][c] == 0) continue;
        const Rational f = rows[r][c];
        for (int cc = 0; cc <= unknowns; ++cc) rows[r][cc] -= f * rows[rank][cc];
      }
      pivot_col.push_back(c);
      ++rank;
    }
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][unknowns] != 0) return std::nullopt;
    if (rank != unknowns) return std::nullopt;
    for (int r = 0; r < rank; ++r) {
      const int c = pivot_col[r];
      const int i = c / (n * n), j = (c / n) % n, k = c % n;
      g[i][j][k] = g[i][j][k] + Poly::monomial(mono, rows[r][unknowns]);
    }
  }
  return g;
}

PolyMatrix constant_matrix(int n, int m, const std::vector<std::vector<long>>& v) {
  PolyMatrix out = poly_zero_matrix(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = Poly::constant(m, Rational(v[i][j]));
  return out;
}

bool all_zero(const Christoffel& g) {
  for (const auto& a : g)
    for (const auto& b : a)
      for (const auto& c : b)
        if (!c.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("poly arithmetic") {
  const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1), one = Poly::constant(2, 1);
  const Poly f = (x + one) * (x - one);
  CHECK(f == x * x - one);
  CHECK(f.derivative(0) == x.scaled(2));
  CHECK(f.derivative(1).is_zero());
  CHECK((x * y).degree() == 2);
  CHECK(Poly::monomial({1, 0}, Rational(2, 4)) == x.scaled(Rational(1, 2)));
  CHECK(((x + y) * (x + y)).to_string() == "(1)*x1^2 + (2)*x1*x2 + (1)*x2^2");
  CHECK_THROWS_AS(x + Poly::variable(3, 0), RingMismatch);
}

TEST_CASE("curvature_F examples") {
  // constant commuting A_i = A_j
  LinearConn c{2, 2, {constant_matrix(2, 2, {{1, 2}, {0, 3}}), constant_matrix(2, 2, {{1, 2}, {0, 3}})}};
  const PolyMatrix F = curvature_F(c, 0, 1);
  for (const auto& row : F)
    for (const auto& e : row) CHECK(e.is_zero());

  LinearConn d{2, 2, {poly_zero_matrix(2, 2), poly_zero_matrix(2, 2)}};
  d.A[0][0][1] = Poly::variable(2, 1);
  const PolyMatrix F12 = curvature_F(d, 0, 1);
  CHECK(F12[0][1] == Poly::constant(2, -1));
  CHECK(F12[0][0].is_zero());
  CHECK(F12[1][0].is_zero());
  CHECK(F12[1][1].is_zero());
  CHECK(commutator_matches_F(d, 0, 1));
  CHECK_THROWS_AS(curvature_F(d, 0, 2), IndexOutOfRange);
}

TEST_CASE("classical connections: examples") {
  const int m = 1;
  PolyMatrix q = constant_matrix(2, m, {{1, 0}, {0, 1}});
  CHECK(all_zero(chern_classical(q, m)));
  CHECK(all_zero(levi_civita_classical(constant_matrix(2, 2, {{2, 1}, {1, 3}}), 2)));

  q[0][0] = Poly::constant(m, 1) + Poly::variable(m, 0);
  const auto g = chern_classical(q, m);
  CHECK(g[0][0][0] == Poly::constant(m, Rational(1, 2)));
  CHECK(g[0][0][1].is_zero());
  CHECK(g[0][1][1].is_zero());
  CHECK(is_parallel(g, q));
  CHECK(is_metric_symmetric(g));

  PolyMatrix q2 = constant_matrix(2, 2, {{1, 0}, {0, 1}});
  q2[0][0] = Poly::constant(2, 1) + Poly::variable(2, 1);
  const auto lc = levi_civita_classical(q2, 2);
  CHECK(lc[0][0][1] == Poly::constant(2, Rational(-1, 2)));
  CHECK(lc[1][0][0] == Poly::constant(2, Rational(1, 2)));
  CHECK(lc[0][1][0] == Poly::constant(2, Rational(1, 2)));
  CHECK(is_parallel(lc, q2));
  CHECK(is_torsion_free(lc));
}

TEST_CASE("classical connection errors") {
  PolyMatrix q = constant_matrix(2, 2, {{1, 1}, {0, 1}});
  CHECK_THROWS_AS(chern_classical(q, 2), SymmetryViolation);
  CHECK_THROWS_AS(levi_civita_classical(constant_matrix(2, 3, {{1, 0}, {0, 1}}), 3), DimensionMismatch);
}

TEST_CASE("randomized: chern and levi-civita identities and uniqueness") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 2, n = 2 + (trial / 2) % 2;
    const PolyMatrix q = random_poly_matrix(rng, n, m, 2, true);
    const auto g = chern_classical(q, m);
    CHECK(is_parallel(g, q));
    CHECK(is_metric_symmetric(g));
    const auto solved = solve_christoffel(q, m, SecondIdentity::Metric);
    REQUIRE(solved);
    CHECK(*solved == g);

    const PolyMatrix qs = random_poly_matrix(rng, m, m, 2, true);
    const auto lc = levi_civita_classical(qs, m);
    CHECK(is_parallel(lc, qs));
    CHECK(is_torsion_free(lc));
    const auto solved_lc = solve_christoffel(qs, m, SecondIdentity::Torsion);
    REQUIRE(solved_lc);
    CHECK(*solved_lc == lc);
  }
}

TEST_CASE("randomized: [delta_i, delta_j] x = F_ij x and antisymmetry") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 2, n = 1 + (trial / 2) % 3;
    LinearConn conn{m, n, {}};
    for (int i = 0; i < m; ++i) conn.A.push_back(random_poly_matrix(rng, n, m, 2, false));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        CHECK(commutator_matches_F(conn, i, j));
        const auto Fij = curvature_F(conn, i, j), Fji = curvature_F(conn, j, i);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) CHECK(Fij[a][b] == -Fji[a][b]);
      }
  }
}

TEST_CASE("a wrong F is detected by the operator oracle") {
  LinearConn conn{2, 2, {poly_zero_matrix(2, 2), poly_zero_matrix(2, 2)}};
  conn.A[0][0][1] = Poly::variable(2, 1);
  conn.A[1][1][0] = Poly::variable(2, 0);
  CHECK(commutator_matches_F(conn, 0, 1));
  // apply_delta differs from the F-side when A_i is changed under it
  const Poly x12 = Poly::variable(2 + 4, 2 + 1);
  LinearConn other = conn;
  other.A[1][0][0] = Poly::constant(2, 1);
  CHECK(apply_delta(conn, 1, x12) != apply_delta(other, 1, x12));
}
