#include "achern/form.hpp"

#include "achern/errors.hpp"

namespace achern {

namespace {

FormSpec from_integers(FormKind kind, int r, int n, int epsilon, const std::vector<int>& entries, BaseRingPtr ring) {
  FormSpec f;
  f.n = n;
  f.epsilon = epsilon;
  f.kind = kind;
  f.r = r;
  f.ring = ring;
  f.q.reserve(entries.size());
  for (int v : entries) f.q.push_back(CycloScalar::from_rational(ring, Rational(v)));
  f.validate();
  return f;
}

// Fraction-free elimination over Q.
Rational determinant(int n, std::vector<Rational> m) {
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m[r * n + c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(m[pivot * n + k], m[c * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const Rational f = m[r * n + c] / m[c * n + c];
      for (int k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

}  // namespace

FormSpec FormSpec::split_sp(int r, BaseRingPtr ring) {
  if (r < 1) throw InvalidForm("split form needs r >= 1");
  const int n = 2 * r;
  std::vector<int> e(n * n, 0);
  for (int i = 0; i < r; ++i) {
    e[i * n + (r + i)] = 1;
    e[(r + i) * n + i] = -1;
  }
  return from_integers(FormKind::SplitSp, r, n, -1, e, std::move(ring));
}

FormSpec FormSpec::split_so_even(int r, BaseRingPtr ring) {
  if (r < 1) throw InvalidForm("split form needs r >= 1");
  const int n = 2 * r;
  std::vector<int> e(n * n, 0);
  for (int i = 0; i < r; ++i) {
    e[i * n + (r + i)] = 1;
    e[(r + i) * n + i] = 1;
  }
  return from_integers(FormKind::SplitSoEven, r, n, 1, e, std::move(ring));
}

FormSpec FormSpec::split_so_odd(int r, BaseRingPtr ring) {
  if (r < 0) throw InvalidForm("split form needs r >= 0");
  const int n = 2 * r + 1;
  std::vector<int> e(n * n, 0);
  e[0] = 1;
  for (int i = 0; i < r; ++i) {
    e[(1 + i) * n + (1 + r + i)] = 1;
    e[(1 + r + i) * n + (1 + i)] = 1;
  }
  return from_integers(FormKind::SplitSoOdd, r, n, 1, e, std::move(ring));
}

FormSpec FormSpec::custom(const std::vector<std::vector<Rational>>& rows, BaseRingPtr ring) {
  const int n = static_cast<int>(rows.size());
  std::vector<CycloScalar> entries;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw InvalidForm("q must be square");
    for (const auto& v : row) entries.push_back(CycloScalar::from_rational(ring, v));
  }
  return custom(n, std::move(entries));
}

std::optional<FormSpec> FormSpec::as_split() const {
  if (is_split()) return *this;
  if (!is_rational()) return std::nullopt;
  std::vector<FormSpec> candidates;
  if (n % 2 == 0) {
    candidates.push_back(split_sp(n / 2, ring));
    candidates.push_back(split_so_even(n / 2, ring));
  } else {
    candidates.push_back(split_so_odd(n / 2, ring));
  }
  for (const auto& c : candidates)
    if (c.q == q) return c;
  return std::nullopt;
}

FormSpec FormSpec::custom(int n, std::vector<CycloScalar> entries) {
  if (n < 1 || entries.size() != static_cast<std::size_t>(n) * n) throw InvalidForm("q must be a non-empty square matrix");
  FormSpec f;
  f.n = n;
  f.kind = FormKind::Custom;
  f.ring = entries.front().ring();
  f.q = std::move(entries);
  bool symmetric = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f.at(i, j) != f.at(j, i)) symmetric = false;
  f.epsilon = symmetric ? 1 : -1;
  f.validate();
  return f;
}

bool FormSpec::is_rational() const {
  for (const auto& v : q)
    if (!v.is_rational()) return false;
  return true;
}

std::vector<Rational> FormSpec::rational_entries() const {
  if (!is_rational()) throw InvalidForm(name() + " has cyclotomic entries; the p-adic solver needs rational q");
  std::vector<Rational> out;
  out.reserve(q.size());
  for (const auto& v : q) out.push_back(v.rational_value());
  return out;
}

std::vector<Rational> FormSpec::frobenius_entries(std::uint64_t p) const {
  std::vector<Rational> out;
  out.reserve(q.size());
  for (const auto& v : q) {
    const auto image = frobenius_scalar(v, p);
    if (!image.is_rational()) throw InvalidForm(name() + " has cyclotomic entries; the p-adic solver needs rational q");
    out.push_back(image.rational_value());
  }
  return out;
}

Rational FormSpec::rational_determinant() const { return determinant(n, rational_entries()); }

bool FormSpec::entries_roots_of_unity_or_zero() const {
  for (const auto& v : q) {
    if (v.is_zero()) continue;
    if (v.pow(static_cast<unsigned>(2 * ring->N)) != CycloScalar::from_rational(ring, 1)) return false;
  }
  return true;
}

void FormSpec::validate() const {
  if (n < 1 || q.size() != static_cast<std::size_t>(n) * n) throw InvalidForm("q must be a non-empty square matrix");
  if (epsilon != 1 && epsilon != -1) throw InvalidForm("epsilon must be +1 or -1");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(j, i) != at(i, j).scaled(Rational(epsilon)))
        throw InvalidForm("q^t != " + std::string(epsilon > 0 ? "q" : "-q") + " at (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ")");
  if (is_rational()) {
    const Rational det = rational_determinant();
    if (det == 0) throw InvalidForm("q is singular");
    if (!ring->denominator_allowed(det.get_num()) || !ring->denominator_allowed(det.get_den()))
      throw InvalidForm("det(q) = " + to_string(det) + " is not a unit of Z[1/" + std::to_string(ring->N0) + "]");
  }
}

std::string FormSpec::name() const {
  switch (kind) {
    case FormKind::SplitSp:
      return "sp(" + std::to_string(n) + ")";
    case FormKind::SplitSoEven:
    case FormKind::SplitSoOdd:
      return "so(" + std::to_string(n) + ")";
    case FormKind::Custom:
      break;
  }
  std::string out = "custom(n=" + std::to_string(n) + ", q=[";
  for (int i = 0; i < n; ++i) {
    if (i) out += "; ";
    for (int j = 0; j < n; ++j) out += (j ? " " : "") + at(i, j).to_string();
  }
  return out + "])";
}

void LiftParams::validate(const FormSpec& form) const {
  form.ring->require_admissible(p);
  if (K < 2) throw InvalidParams("precision K must be >= 2");
  if (D < 1) throw InvalidParams("truncation degree D must be >= 1");
  const Rational det = form.rational_determinant();
  if (mpz_divisible_ui_p(det.get_num_mpz_t(), p))
    throw InadmissiblePrime(std::to_string(p) + " divides det(q) = " + to_string(det));
}

}  // namespace achern
