#pragma once

#include <optional>
#include <string>
#include <vector>

#include "achern/series.hpp"

namespace achern {

// n x n matrix over the truncated series ring in the n^2 variables T_ij
// (variable index i*n + j).
template <class Ring>
class MatrixSeries {
 public:
  using S = Series<Ring>;
  using Elem = typename Ring::Elem;

  MatrixSeries() = default;
  MatrixSeries(int n, BasisPtr basis, Ring ring) : n_(n), basis_(std::move(basis)), ring_(std::move(ring)) {
    if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
    entries_.assign(static_cast<std::size_t>(n) * n, S(basis_, ring_));
  }

  // The basis over n^2 variables with truncation degree D.
  static BasisPtr basis_for(int n, int D) { return MonomialBasis::get(n * n, D); }

  static MatrixSeries zero(int n, int D, Ring ring) { return MatrixSeries(n, basis_for(n, D), std::move(ring)); }
  static MatrixSeries identity(int n, int D, Ring ring) {
    MatrixSeries m = zero(n, D, ring);
    for (int i = 0; i < n; ++i) m(i, i) = S::constant(m.basis_, m.ring_, m.ring_.one());
    return m;
  }
  // The matrix T of variables.
  static MatrixSeries variables(int n, int D, Ring ring) {
    MatrixSeries m = zero(n, D, ring);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = S::variable(m.basis_, m.ring_, i * n + j);
    return m;
  }
  // Constant matrix from row-major entries.
  static MatrixSeries constant(int n, int D, Ring ring, const std::vector<Elem>& values) {
    if (values.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("constant matrix has wrong size");
    MatrixSeries m = zero(n, D, ring);
    for (std::size_t k = 0; k < values.size(); ++k) m.entries_[k] = S::constant(m.basis_, m.ring_, values[k]);
    return m;
  }

  int n() const { return n_; }
  int degree_cap() const { return basis_->max_degree(); }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Ring& ring() const { return ring_; }
  S& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const S& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<S>& entries() const { return entries_; }

  void require_compatible(const MatrixSeries& o) const {
    if (n_ != o.n_ || !entries_.front().compatible(o.entries_.front()))
      throw RingMismatch("matrix series shapes or rings differ");
  }

  MatrixSeries operator+(const MatrixSeries& o) const {
    require_compatible(o);
    MatrixSeries out = *this;
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] += o.entries_[k];
    return out;
  }
  MatrixSeries operator-(const MatrixSeries& o) const {
    require_compatible(o);
    MatrixSeries out = *this;
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] -= o.entries_[k];
    return out;
  }
  MatrixSeries operator-() const {
    MatrixSeries out = *this;
    for (auto& e : out.entries_) e = -e;
    return out;
  }
  MatrixSeries operator*(const MatrixSeries& o) const {
    require_compatible(o);
    MatrixSeries out(n_, basis_, ring_);
    auto& acc = SeriesAccumulator<Ring>::local();
    const int D = basis_->max_degree();
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        acc.begin(basis_, ring_);
        for (int k = 0; k < n_; ++k) acc.add_product((*this)(i, k), o(k, j), D);
        out(i, j) = acc.collect();
      }
    return out;
  }
  MatrixSeries scaled(const Elem& c) const {
    MatrixSeries out = *this;
    for (auto& e : out.entries_) e = e.scaled(c);
    return out;
  }
  MatrixSeries transpose() const {
    MatrixSeries out(n_, basis_, ring_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  // Entrywise e-th powers.
  MatrixSeries entrywise_pow(unsigned e) const {
    MatrixSeries out = *this;
    for (auto& s : out.entries_) s = achern::pow(s, e);
    return out;
  }
  std::vector<Elem> constant_part() const {
    std::vector<Elem> out;
    out.reserve(entries_.size());
    for (const auto& s : entries_) out.push_back(s.constant_term());
    return out;
  }
  bool is_zero() const {
    for (const auto& s : entries_)
      if (!s.is_zero()) return false;
    return true;
  }
  bool is_identity() const { return *this == identity(n_, degree_cap(), ring_); }

  // Minimal total degree carrying a nonzero coefficient; nullopt for zero.
  std::optional<int> lowest_nonzero_degree() const {
    std::optional<int> best;
    for (const auto& s : entries_) {
      auto d = s.lowest_degree();
      if (d && (!best || *d < *best)) best = d;
    }
    return best;
  }

  bool operator==(const MatrixSeries& o) const { return n_ == o.n_ && entries_ == o.entries_; }
  bool operator!=(const MatrixSeries& o) const { return !(*this == o); }

  template <class Ring2, class F>
  MatrixSeries<Ring2> map_coeffs(const Ring2& target, F&& f) const {
    MatrixSeries<Ring2> out(n_, basis_, target);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out(i, j) = (*this)(i, j).map_coeffs(target, f);
    return out;
  }

  template <class F>
  MatrixSeries map_entries(F&& f) const {
    MatrixSeries out = *this;
    for (auto& s : out.entries_) s = f(s);
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        out += "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] " + (*this)(i, j).to_string(n_) + "\n";
    return out;
  }

 private:
  int n_ = 0;
  BasisPtr basis_;
  Ring ring_{};
  std::vector<S> entries_;
};

template <class Ring>
MatrixSeries<Ring> matrix_mul(const MatrixSeries<Ring>& a, const MatrixSeries<Ring>& b) {
  return a * b;
}

template <class Ring>
MatrixSeries<Ring> transpose(const MatrixSeries<Ring>& a) {
  return a.transpose();
}

// Inverse of a constant matrix over Ring by Gauss-Jordan with unit pivots.
// Throws SingularConstantTerm when no unit pivot exists.
template <class Ring>
std::vector<typename Ring::Elem> invert_constant(int n, const Ring& ring, std::vector<typename Ring::Elem> m) {
  using Elem = typename Ring::Elem;
  std::vector<Elem> inv(static_cast<std::size_t>(n) * n, ring.zero());
  for (int i = 0; i < n; ++i) inv[i * n + i] = ring.one();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (ring.is_unit(m[r * n + col])) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw SingularConstantTerm("constant term is not invertible over " + ring.describe());
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(m[pivot * n + c], m[col * n + c]);
        std::swap(inv[pivot * n + c], inv[col * n + c]);
      }
    const Elem s = ring.inv(m[col * n + col]);
    for (int c = 0; c < n; ++c) {
      m[col * n + c] = ring.mul(m[col * n + c], s);
      inv[col * n + c] = ring.mul(inv[col * n + c], s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || ring.is_zero(m[r * n + col])) continue;
      const Elem f = m[r * n + col];
      for (int c = 0; c < n; ++c) {
        m[r * n + c] = ring.sub(m[r * n + c], ring.mul(f, m[col * n + c]));
        inv[r * n + c] = ring.sub(inv[r * n + c], ring.mul(f, inv[col * n + c]));
      }
    }
  }
  return inv;
}

// M^{-1} within the truncation: with M = C + N, C = M(0),
// M^{-1} = sum_{k=0}^{D} (-C^{-1} N)^k C^{-1}.
template <class Ring>
MatrixSeries<Ring> matrix_inverse(const MatrixSeries<Ring>& m) {
  const int n = m.n();
  const int D = m.degree_cap();
  const Ring& ring = m.ring();
  const auto cinv_values = invert_constant(n, ring, m.constant_part());
  const auto cinv = MatrixSeries<Ring>::constant(n, D, ring, cinv_values);
  const auto c = MatrixSeries<Ring>::constant(n, D, ring, m.constant_part());
  const MatrixSeries<Ring> neg_x = -(cinv * (m - c));
  MatrixSeries<Ring> sum = MatrixSeries<Ring>::identity(n, D, ring);
  MatrixSeries<Ring> term = sum;
  for (int k = 1; k <= D; ++k) {
    term = term * neg_x;
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum * cinv;
}

}  // namespace achern
