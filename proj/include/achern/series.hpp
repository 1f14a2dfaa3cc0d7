#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "achern/coeff_rings.hpp"
#include "achern/errors.hpp"
#include "achern/monomial_basis.hpp"

namespace achern {

// Truncated power series in nvars variables, total degree <= D, with
// coefficients in Ring. Terms are stored sparsely, sorted by graded-lex
// index, with no zero coefficients.
template <class Ring>
class Series {
 public:
  using Elem = typename Ring::Elem;
  using Index = MonomialBasis::Index;
  struct Term {
    Index index;
    Elem coeff;
    bool operator==(const Term& o) const { return index == o.index && coeff == o.coeff; }
  };

  Series() = default;
  Series(BasisPtr basis, Ring ring) : basis_(std::move(basis)), ring_(std::move(ring)) {}

  static Series constant(BasisPtr basis, Ring ring, const Elem& c) {
    Series s(std::move(basis), std::move(ring));
    if (!s.ring_.is_zero(c)) s.terms_.push_back({0, c});
    return s;
  }
  static Series variable(BasisPtr basis, Ring ring, int v) {
    Series s(std::move(basis), std::move(ring));
    if (v < 0 || v >= s.basis_->nvars()) throw std::out_of_range("variable index out of range");
    if (s.basis_->max_degree() >= 1) s.terms_.push_back({s.basis_->variable(v), s.ring_.one()});
    return s;
  }
  // Sorts, merges duplicate indices and drops zeros.
  static Series from_terms(BasisPtr basis, Ring ring, std::vector<Term> terms) {
    Series s(std::move(basis), std::move(ring));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    for (auto& t : terms) {
      if (t.index >= s.basis_->size()) throw std::out_of_range("term index outside the monomial basis");
      if (!s.terms_.empty() && s.terms_.back().index == t.index)
        s.terms_.back().coeff = s.ring_.add(s.terms_.back().coeff, t.coeff);
      else
        s.terms_.push_back(std::move(t));
    }
    s.drop_zeros();
    return s;
  }

  const BasisPtr& basis_ptr() const { return basis_; }
  const MonomialBasis& basis() const { return *basis_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Elem coeff(Index i) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), i, [](const Term& t, Index k) { return t.index < k; });
    if (it != terms_.end() && it->index == i) return it->coeff;
    return ring_.zero();
  }
  Elem constant_term() const { return coeff(0); }
  std::optional<int> lowest_degree() const {
    if (terms_.empty()) return std::nullopt;
    return basis_->degree(terms_.front().index);
  }

  bool compatible(const Series& o) const {
    return basis_ && o.basis_ && basis_->nvars() == o.basis_->nvars() &&
           basis_->max_degree() == o.basis_->max_degree() && ring_ == o.ring_;
  }
  void require_compatible(const Series& o) const {
    if (!compatible(o)) throw RingMismatch("series over " + describe() + " vs " + o.describe());
  }
  std::string describe() const {
    if (!basis_) return "<empty>";
    return ring_.describe() + "[[" + std::to_string(basis_->nvars()) + " vars]]/deg>" +
           std::to_string(basis_->max_degree());
  }

  Series operator+(const Series& o) const { return merge(o, false); }
  Series operator-(const Series& o) const { return merge(o, true); }
  Series operator-() const {
    Series out = *this;
    for (auto& t : out.terms_) t.coeff = ring_.neg(t.coeff);
    return out;
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }

  Series operator*(const Series& o) const { return mul_truncated(o, basis_->max_degree()); }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  // Product keeping only degrees <= maxdeg.
  Series mul_truncated(const Series& o, int maxdeg) const;

  Series scaled(const Elem& c) const {
    Series out(basis_, ring_);
    if (ring_.is_zero(c)) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.index, ring_.mul(t.coeff, c)});
    out.drop_zeros();
    return out;
  }

  Series truncated(int maxdeg) const {
    Series out(basis_, ring_);
    const auto limit = basis_->prefix(maxdeg);
    for (const auto& t : terms_) {
      if (t.index >= limit) break;
      out.terms_.push_back(t);
    }
    return out;
  }

  // Homogeneous part of the given degree.
  Series homogeneous(int degree) const {
    Series out(basis_, ring_);
    for (const auto& t : terms_)
      if (basis_->degree(t.index) == degree) out.terms_.push_back(t);
    return out;
  }

  bool operator==(const Series& o) const { return compatible(o) && terms_ == o.terms_; }
  bool operator!=(const Series& o) const { return !(*this == o); }

  template <class Ring2, class F>
  Series<Ring2> map_coeffs(const Ring2& target, F&& f) const {
    std::vector<typename Series<Ring2>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.index, f(t.coeff)});
    return Series<Ring2>::from_terms(basis_, target, std::move(out));
  }

  std::string to_string(int matrix_n = 0) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + ring_.to_string(t.coeff) + ")";
      if (t.index != 0) out += "*" + basis_->to_string(t.index, matrix_n);
    }
    return out;
  }

 private:
  template <class R>
  friend class SeriesAccumulator;

  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [this](const Term& t) { return ring_.is_zero(t.coeff); }),
                 terms_.end());
  }

  Series merge(const Series& o, bool subtract) const {
    require_compatible(o);
    Series out(basis_, ring_);
    out.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->index < b->index)) {
        out.terms_.push_back(*a++);
      } else if (a == terms_.end() || b->index < a->index) {
        out.terms_.push_back({b->index, subtract ? ring_.neg(b->coeff) : b->coeff});
        ++b;
      } else {
        Elem c = subtract ? ring_.sub(a->coeff, b->coeff) : ring_.add(a->coeff, b->coeff);
        if (!ring_.is_zero(c)) out.terms_.push_back({a->index, std::move(c)});
        ++a;
        ++b;
      }
    }
    return out;
  }

  BasisPtr basis_;
  Ring ring_{};
  std::vector<Term> terms_;
};

// Dense scratch accumulator for sums of series products. One instance per
// thread is reused; add products, then collect() into a Series.
template <class Ring>
class SeriesAccumulator {
 public:
  using S = Series<Ring>;
  using Index = MonomialBasis::Index;

  static SeriesAccumulator& local() {
    thread_local SeriesAccumulator acc;
    return acc;
  }

  void begin(const BasisPtr& basis, const Ring& ring) {
    basis_ = basis;
    ring_ = ring;
    if (acc_.size() < basis->size()) {
      acc_.resize(basis->size());
      used_.resize(basis->size(), 0);
    }
  }

  // acc += f * g, dropping degrees above maxdeg.
  void add_product(const S& f, const S& g, int maxdeg) {
    const MonomialBasis& b = *basis_;
    for (const auto& tf : f.terms_) {
      const int df = b.degree(tf.index);
      if (df > maxdeg) break;
      const auto limit = b.prefix(maxdeg - df);
      const Index* row = b.product_row(tf.index);
      for (const auto& tg : g.terms_) {
        if (tg.index >= limit) break;
        const Index k = row[tg.index];
        if (!used_[k]) {
          used_[k] = 1;
          touched_.push_back(k);
        }
        ring_.acc_fma(acc_[k], tf.coeff, tg.coeff);
      }
    }
  }

  void add(const S& f) {
    for (const auto& t : f.terms_) {
      if (!used_[t.index]) {
        used_[t.index] = 1;
        touched_.push_back(t.index);
      }
      ring_.acc_add(acc_[t.index], t.coeff);
    }
  }

  S collect() {
    S out(basis_, ring_);
    std::sort(touched_.begin(), touched_.end());
    out.terms_.reserve(touched_.size());
    for (const Index k : touched_) {
      auto c = ring_.reduce(acc_[k]);
      if (!ring_.is_zero(c)) out.terms_.push_back({k, std::move(c)});
      ring_.acc_clear(acc_[k]);
      used_[k] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  BasisPtr basis_;
  Ring ring_{};
  std::vector<typename Ring::Acc> acc_;
  std::vector<std::uint8_t> used_;
  std::vector<Index> touched_;
};

template <class Ring>
Series<Ring> Series<Ring>::mul_truncated(const Series& o, int maxdeg) const {
  require_compatible(o);
  auto& acc = SeriesAccumulator<Ring>::local();
  acc.begin(basis_, ring_);
  acc.add_product(*this, o, maxdeg);
  return acc.collect();
}

// f^e by binary exponentiation; e >= 1.
template <class Ring>
Series<Ring> pow(const Series<Ring>& f, unsigned e) {
  if (e == 0) return Series<Ring>::constant(f.basis_ptr(), f.ring(), f.ring().one());
  Series<Ring> result;
  Series<Ring> base = f;
  bool have = false;
  while (e) {
    if (e & 1u) {
      result = have ? result * base : base;
      have = true;
    }
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

namespace detail {

template <class Ring>
struct TrieEntry {
  std::vector<int> vars;
  typename Ring::Elem coeff;
};

// Horner evaluation over the variable-list trie of f: the node with prefix m
// evaluates sum_{m'} c_{m m'} images^{m'} truncated to degree `maxdeg`.
template <class Ring>
Series<Ring> horner(const std::vector<TrieEntry<Ring>>& entries, std::size_t lo, std::size_t hi, std::size_t depth,
                    int maxdeg, std::span<const Series<Ring>> images, const BasisPtr& basis, const Ring& ring) {
  Series<Ring> constant(basis, ring);
  if (lo < hi && entries[lo].vars.size() == depth) {
    constant = Series<Ring>::constant(basis, ring, entries[lo].coeff);
    ++lo;
  }
  if (maxdeg < 1 || lo >= hi) return constant;
  std::vector<std::pair<int, Series<Ring>>> children;
  while (lo < hi) {
    const int w = entries[lo].vars[depth];
    std::size_t g = lo;
    while (g < hi && entries[g].vars[depth] == w) ++g;
    children.emplace_back(w, horner(entries, lo, g, depth + 1, maxdeg - 1, images, basis, ring));
    lo = g;
  }
  auto& acc = SeriesAccumulator<Ring>::local();
  acc.begin(basis, ring);
  acc.add(constant);
  for (const auto& [w, child] : children) acc.add_product(images[w], child, maxdeg);
  return acc.collect();
}

}  // namespace detail

// Replaces T_v by images[v]. Every image must have zero constant term, which
// keeps the result exact within the truncation.
template <class Ring>
Series<Ring> substitute(const Series<Ring>& f, std::span<const Series<Ring>> images) {
  const auto& basis = f.basis();
  if (static_cast<int>(images.size()) != basis.nvars())
    throw std::invalid_argument("substitute needs one image per variable");
  for (const auto& img : images) {
    f.require_compatible(img);
    if (!f.ring().is_zero(img.constant_term())) throw NonzeroConstantTerm("substitution image " + img.to_string());
  }
  std::vector<detail::TrieEntry<Ring>> entries;
  entries.reserve(f.terms().size());
  for (const auto& t : f.terms()) entries.push_back({basis.variable_list(t.index), t.coeff});
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.vars < b.vars; });
  return detail::horner<Ring>(entries, 0, entries.size(), 0, basis.max_degree(), images, f.basis_ptr(), f.ring());
}

template <class Ring>
Series<Ring> substitute(const Series<Ring>& f, const std::vector<Series<Ring>>& images) {
  return substitute(f, std::span<const Series<Ring>>(images));
}

// Exact substitution over Q routed through integer arithmetic: with
// images = F / d (F integral) and f = g / e (g integral),
// f(F / d) = (sum_m g_m d^(D - |m|) F^m) / (e d^D).
Series<RationalRing> substitute_cleared(const Series<RationalRing>& f, std::span<const Series<RationalRing>> images);

// Least common multiple of all coefficient denominators.
BigInt common_denominator(const Series<RationalRing>& f);

}  // namespace achern
