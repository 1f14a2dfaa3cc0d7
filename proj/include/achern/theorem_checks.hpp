#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "achern/curvature.hpp"
#include "achern/detail/parallel.hpp"

namespace achern {

enum class VerdictStatus { Pass, Fail, Inconclusive, Measured };

std::string to_string(VerdictStatus s);

struct Verdict {
  std::string claim;
  std::string statement;
  VerdictStatus status = VerdictStatus::Measured;
  std::string detail;
};

// Claim identifiers.
inline constexpr const char* kClaimGlobal = "global_along_identity";
inline constexpr const char* kClaimDivisible = "commutator_divisible";
inline constexpr const char* kClaimNonzero = "curvature_nonzero_rank_ge4";
inline constexpr const char* kClaimCubic = "curvature_cubic_even_rank";
inline constexpr const char* kClaimSp2 = "curvature_vanishes_sp2";
inline constexpr const char* kClaimRank1 = "curvature_vanishes_rank1";
inline constexpr const char* kClaimUnasserted = "no_assertion";

struct CheckParams {
  int K = 16;
  int D = 4;
  bool escalate = true;  // K -> K+8 on reconstruction failure, D -> D+1 for undetected nonvanishing
  int jobs = 1;
};

struct FormCheck {
  FormSpec form;
  std::vector<std::uint64_t> primes;
  std::vector<CurvatureReport> pairs;  // sorted (p, p2), p < p2
  std::vector<Verdict> verdicts;
  std::map<std::uint64_t, int> K_used;  // per prime, at the base degree
  bool global = true;
  std::string not_global_reason;
};

struct TheoremSummary {
  std::vector<FormCheck> forms;
  bool any_fail() const;
  bool any_inconclusive() const;
};

// Runs solve, globalize and curvature for every form and prime pair, and
// classifies the results against the claims that apply to the form.
TheoremSummary theorem_checks(const std::vector<FormSpec>& forms, std::vector<std::uint64_t> primes,
                              const CheckParams& params);

}  // namespace achern
