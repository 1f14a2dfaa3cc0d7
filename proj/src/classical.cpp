#include "achern/classical.hpp"

#include <stdexcept>

#include "achern/errors.hpp"

namespace achern {

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw IndexOutOfRange("variable x" + std::to_string(i + 1) + " of " + std::to_string(nvars));
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[i] = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& e, const Rational& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Exponents& e, Rational c) {
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same(const Poly& o) const {
  if (nvars_ != o.nvars_) throw RingMismatch("polynomials in " + std::to_string(nvars_) + " and " +
                                             std::to_string(o.nvars_) + " variables");
}

Poly Poly::operator+(const Poly& o) const {
  require_same(o);
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  require_same(o);
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::operator*(const Poly& o) const {
  require_same(o);
  Poly out(nvars_);
  Exponents e(static_cast<std::size_t>(nvars_));
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Poly Poly::scaled(const Rational& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

Poly Poly::derivative(int i) const {
  if (i < 0 || i >= nvars_) throw IndexOutOfRange("derivative in x" + std::to_string(i + 1));
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    --f[i];
    out.add_term(f, c * e[i]);
  }
  return out;
}

std::string Poly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::string out;
  // highest degree first, reverse lexicographic within a degree
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += " + ";
    out += "(" + achern::to_string(c) + ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += "*" + var + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

PolyMatrix poly_zero_matrix(int n, int nvars) {
  return PolyMatrix(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n), Poly(nvars)));
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionMismatch("matrix product");
  PolyMatrix out = poly_zero_matrix(static_cast<int>(n), a[0][0].nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = a[i][j] + b[i][j];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = a[i][j] - b[i][j];
  return out;
}

PolyMatrix derivative(const PolyMatrix& a, int i) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& e : row) e = e.derivative(i);
  return out;
}

void LinearConn::validate() const {
  if (m < 1 || n < 1) throw InvalidParams("connection needs m, n >= 1");
  if (static_cast<int>(A.size()) != m) throw DimensionMismatch("expected " + std::to_string(m) + " matrices A_i");
  for (const auto& a : A) {
    if (static_cast<int>(a.size()) != n) throw DimensionMismatch("A_i must be n x n");
    for (const auto& row : a) {
      if (static_cast<int>(row.size()) != n) throw DimensionMismatch("A_i must be n x n");
      for (const auto& e : row)
        if (e.nvars() != m) throw DimensionMismatch("A_i entries must be polynomials in m variables");
    }
  }
}

PolyMatrix curvature_F(const LinearConn& conn, int i, int j) {
  conn.validate();
  if (i < 0 || i >= conn.m || j < 0 || j >= conn.m)
    throw IndexOutOfRange("F_" + std::to_string(i + 1) + std::to_string(j + 1) + " with m = " + std::to_string(conn.m));
  const auto& Ai = conn.A[i];
  const auto& Aj = conn.A[j];
  return derivative(Aj, i) - derivative(Ai, j) - (Ai * Aj - Aj * Ai);
}

namespace {

void require_symmetric(const PolyMatrix& q, int m) {
  const std::size_t n = q.size();
  if (n == 0) throw DimensionMismatch("empty metric");
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].size() != n) throw DimensionMismatch("metric must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (q[i][j].nvars() != m) throw DimensionMismatch("metric entries must be polynomials in m variables");
      if (q[i][j] != q[j][i])
        throw SymmetryViolation("q(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") != q(" +
                                std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
    }
  }
}

Christoffel empty_christoffel(int m, int n) {
  return Christoffel(static_cast<std::size_t>(m),
                     std::vector<std::vector<Poly>>(static_cast<std::size_t>(n),
                                                    std::vector<Poly>(static_cast<std::size_t>(n), Poly(m))));
}

}  // namespace

Christoffel chern_classical(const PolyMatrix& q, int m) {
  require_symmetric(q, m);
  const int n = static_cast<int>(q.size());
  const Rational half(1, 2);
  Christoffel g = empty_christoffel(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) g[i][j][k] = q[j][k].derivative(i).scaled(half);
  return g;
}

Christoffel levi_civita_classical(const PolyMatrix& q, int m) {
  require_symmetric(q, m);
  const int n = static_cast<int>(q.size());
  if (n != m) throw DimensionMismatch("Levi-Civita needs n = m, got n = " + std::to_string(n) + ", m = " + std::to_string(m));
  const Rational half(1, 2);
  Christoffel g = empty_christoffel(m, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g[k][i][j] = (q[i][j].derivative(k) + q[j][k].derivative(i) - q[k][i].derivative(j)).scaled(half);
  return g;
}

bool is_parallel(const Christoffel& g, const PolyMatrix& q) {
  const std::size_t m = g.size(), n = q.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (q[j][k].derivative(static_cast<int>(i)) != g[i][j][k] + g[i][k][j]) return false;
  return true;
}

bool is_metric_symmetric(const Christoffel& g) {
  for (const auto& gi : g)
    for (std::size_t j = 0; j < gi.size(); ++j)
      for (std::size_t k = 0; k < gi.size(); ++k)
        if (gi[j][k] != gi[k][j]) return false;
  return true;
}

bool is_torsion_free(const Christoffel& g) {
  const std::size_t m = g.size();
  if (m == 0 || g[0].size() != m) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < g[i][j].size(); ++k)
        if (g[i][j][k] != g[j][i][k]) return false;
    }
  return true;
}

Poly extend(const Poly& f, int nvars) {
  if (nvars < f.nvars()) throw DimensionMismatch("cannot drop variables");
  Poly out(nvars);
  for (const auto& [e, c] : f.terms()) {
    Poly::Exponents g = e;
    g.resize(static_cast<std::size_t>(nvars), 0);
    out = out + Poly::monomial(g, c);
  }
  return out;
}

Poly apply_delta(const LinearConn& conn, int i, const Poly& f) {
  const int m = conn.m, n = conn.n, total = m + n * n;
  if (f.nvars() != total) throw DimensionMismatch("delta acts on polynomials in m + n^2 variables");
  if (i < 0 || i >= m) throw IndexOutOfRange("delta_" + std::to_string(i + 1));
  Poly out = f.derivative(i);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Poly dfx = f.derivative(m + a * n + b);
      if (dfx.is_zero()) continue;
      Poly image(total);  // (A_i x)_ab
      for (int c = 0; c < n; ++c) image = image + extend(conn.A[i][a][c], total) * Poly::variable(total, m + c * n + b);
      out = out + dfx * image;
    }
  return out;
}

bool commutator_matches_F(const LinearConn& conn, int i, int j) {
  const PolyMatrix F = curvature_F(conn, i, j);
  const int m = conn.m, n = conn.n, total = m + n * n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Poly x = Poly::variable(total, m + a * n + b);
      const Poly lhs = apply_delta(conn, i, apply_delta(conn, j, x)) - apply_delta(conn, j, apply_delta(conn, i, x));
      Poly rhs(total);
      for (int c = 0; c < n; ++c) rhs = rhs + extend(F[a][c], total) * Poly::variable(total, m + c * n + b);
      if (lhs != rhs) return false;
    }
  return true;
}

Poly random_poly(std::mt19937_64& rng, int nvars, int max_degree, int coeff_range) {
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> den(1, 3);
  Poly out(nvars);
  // every monomial of degree <= max_degree, kept with probability 1/2
  std::bernoulli_distribution keep(0.5);
  Poly::Exponents e(static_cast<std::size_t>(nvars), 0);
  auto visit = [&](auto&& self, int var, int budget) -> void {
    if (var == nvars) {
      if (keep(rng)) out = out + Poly::monomial(e, Rational(coeff(rng), den(rng)));
      return;
    }
    for (int d = 0; d <= budget; ++d) {
      e[var] = d;
      self(self, var + 1, budget - d);
    }
    e[var] = 0;
  };
  visit(visit, 0, max_degree);
  return out;
}

PolyMatrix random_poly_matrix(std::mt19937_64& rng, int n, int nvars, int max_degree, bool symmetric) {
  PolyMatrix out = poly_zero_matrix(n, nvars);
  for (int i = 0; i < n; ++i)
    for (int j = symmetric ? i : 0; j < n; ++j) {
      out[i][j] = random_poly(rng, nvars, max_degree);
      if (symmetric) out[j][i] = out[i][j];
    }
  return out;
}

}  // namespace achern
