#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "achern/ring_core.hpp"

namespace achern {

enum class FormKind { SplitSp, SplitSoEven, SplitSoOdd, Custom };

// An invertible n x n matrix q with q^t = epsilon * q over A.
struct FormSpec {
  int n = 0;
  int epsilon = 1;
  FormKind kind = FormKind::Custom;
  int r = 0;  // block size for the split kinds
  BaseRingPtr ring;
  std::vector<CycloScalar> q;  // row-major

  // [[0, 1_r], [-1_r, 0]], n = 2r
  static FormSpec split_sp(int r, BaseRingPtr ring = BaseRingDesc::make());
  // [[0, 1_r], [1_r, 0]], n = 2r
  static FormSpec split_so_even(int r, BaseRingPtr ring = BaseRingDesc::make());
  // [[1, 0, 0], [0, 0, 1_r], [0, 1_r, 0]], n = 2r + 1; r = 0 gives q = [1]
  static FormSpec split_so_odd(int r, BaseRingPtr ring = BaseRingDesc::make());
  // Rational entries; epsilon is inferred from the symmetry of q.
  static FormSpec custom(const std::vector<std::vector<Rational>>& rows, BaseRingPtr ring = BaseRingDesc::make());
  static FormSpec custom(int n, std::vector<CycloScalar> entries);

  const CycloScalar& at(int i, int j) const { return q[static_cast<std::size_t>(i) * n + j]; }
  bool is_split() const { return kind != FormKind::Custom; }
  // The split form with the same matrix, if q is one of the split shapes.
  std::optional<FormSpec> as_split() const;
  bool is_rational() const;
  // Entries of q as rationals; throws InvalidForm for cyclotomic entries.
  std::vector<Rational> rational_entries() const;
  // Entries of q^phi (entrywise Frobenius) as rationals.
  std::vector<Rational> frobenius_entries(std::uint64_t p) const;
  Rational rational_determinant() const;
  // Every entry is zero or a root of unity.
  bool entries_roots_of_unity_or_zero() const;

  // Throws InvalidForm on shape, symmetry or invertibility violations.
  void validate() const;
  std::string name() const;
};

struct LiftParams {
  std::uint64_t p = 3;
  int K = 16;
  int D = 4;

  // Throws InvalidParams / InadmissiblePrime.
  void validate(const FormSpec& form) const;
};

}  // namespace achern
