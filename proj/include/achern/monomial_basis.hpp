#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace achern {

// Enumeration of all monomials of total degree <= D in `nvars` variables, in
// graded-lex order: by degree, then lexicographically descending on the
// exponent vector (T_0^2 before T_0 T_1 before T_1^2). Because the order is
// graded, the monomials of degree <= d form the prefix [0, prefix(d)).
class MonomialBasis {
 public:
  using Index = std::uint32_t;

  MonomialBasis(int nvars, int D);

  // Shared instance per (nvars, D); thread safe.
  static std::shared_ptr<const MonomialBasis> get(int nvars, int D);

  int nvars() const { return nvars_; }
  int max_degree() const { return D_; }
  std::size_t size() const { return degree_.size(); }

  int degree(Index i) const { return degree_[i]; }
  std::span<const std::uint8_t> exponents(Index i) const {
    return {exps_.data() + static_cast<std::size_t>(i) * nvars_, static_cast<std::size_t>(nvars_)};
  }
  // Number of monomials of degree <= d (d may exceed D or be negative).
  std::size_t prefix(int d) const;
  Index variable(int v) const { return static_cast<Index>(1 + v); }

  // Rank of an exponent vector; throws std::out_of_range if its degree > D.
  Index rank(std::span<const std::uint8_t> exps) const;

  // Index of the product monomial; requires degree(i) + degree(j) <= D.
  Index product(Index i, Index j) const {
    return table()[offset_[i] + j];
  }
  // Row of the product table for i, covering all j < prefix(D - degree(i)).
  const Index* product_row(Index i) const { return table().data() + offset_[i]; }

  // Variable indices of monomial i as a non-decreasing list, e.g. T_0^2 T_3 -> {0,0,3}.
  std::vector<int> variable_list(Index i) const;
  std::string to_string(Index i, int matrix_n = 0) const;

 private:
  const std::vector<Index>& table() const;

  int nvars_;
  int D_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_;
  std::vector<std::size_t> degree_start_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::size_t> offset_;
  mutable std::once_flag table_once_;
  mutable std::vector<Index> table_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

}  // namespace achern
