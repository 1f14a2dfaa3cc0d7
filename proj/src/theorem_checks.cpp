#include "achern/theorem_checks.hpp"

#include <algorithm>
#include <optional>

#include "achern/errors.hpp"

namespace achern {

namespace {

std::string pair_label(const CurvatureReport& r) {
  return "(" + std::to_string(r.p) + "," + std::to_string(r.p2) + ")";
}

std::string witness_text(const CurvatureReport& r, int n) {
  const auto* c = r.first_nonzero();
  if (!c) return pair_label(r) + ": zero to degree " + std::to_string(r.D);
  return pair_label(r) + ": degree " + std::to_string(c->degree) + ", entry (" + std::to_string(c->row + 1) + "," +
         std::to_string(c->col + 1) + "), " + r.commutator.basis_ptr()->to_string(c->monomial, n) + ", curvature " +
         to_string(c->curvature);
}

struct LiftSlot {
  std::optional<GlobalLift> lift;
  std::string not_global;
};

std::vector<LiftSlot> lift_all(const FormSpec& form, const std::vector<std::uint64_t>& primes, int K, int D,
                               const CheckParams& params) {
  std::vector<LiftSlot> slots(primes.size());
  parallel_for(params.jobs, primes.size(), [&](std::size_t i) {
    try {
      slots[i].lift = globalize(form, {primes[i], K, D}, {params.escalate, 8});
    } catch (const NotGlobalAlongIdentity& e) {
      slots[i].not_global = e.what();
    }
  });
  return slots;
}

std::vector<CurvatureReport> all_pairs(const std::vector<LiftSlot>& lifts, int jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t a = 0; a < lifts.size(); ++a)
    for (std::size_t b = a + 1; b < lifts.size(); ++b) idx.emplace_back(a, b);
  std::vector<CurvatureReport> out(idx.size());
  parallel_for(jobs, idx.size(),
               [&](std::size_t k) { out[k] = curvature_pair(*lifts[idx[k].first].lift, *lifts[idx[k].second].lift); });
  return out;
}

FormCheck check_form(const FormSpec& form, const std::vector<std::uint64_t>& primes, const CheckParams& params) {
  FormCheck fc;
  fc.form = form;
  fc.primes = primes;
  const int n = form.n;
  const bool covered_by_globality = form.entries_roots_of_unity_or_zero();
  const auto split = form.as_split();

  const auto lifts = lift_all(form, primes, params.K, params.D, params);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (lifts[i].lift) {
      fc.K_used[primes[i]] = lifts[i].lift->params.K;
    } else if (fc.global) {
      fc.global = false;
      fc.not_global_reason = lifts[i].not_global;
    }
  }

  {
    Verdict v{kClaimGlobal, "q with entries roots of unity or 0 gives a lift global along the identity", {}, {}};
    if (fc.global) {
      v.status = covered_by_globality ? VerdictStatus::Pass : VerdictStatus::Measured;
      v.detail = "certified exactly to degree " + std::to_string(params.D) + " at every prime";
      if (!covered_by_globality) v.detail += "; q is outside the hypothesis, recorded as a measurement";
    } else {
      v.status = covered_by_globality ? VerdictStatus::Fail : VerdictStatus::Measured;
      v.detail = fc.not_global_reason;
    }
    fc.verdicts.push_back(std::move(v));
  }
  if (!fc.global) {
    fc.verdicts.push_back({kClaimUnasserted, "curvature requires a lift global along the identity",
                           VerdictStatus::Measured, "curvature undefined for this q"});
    return fc;
  }

  fc.pairs = all_pairs(lifts, params.jobs);
  {
    std::size_t checked = 0;
    for (const auto& r : fc.pairs) checked += r.coefficients.size();
    fc.verdicts.push_back({kClaimDivisible, "every commutator coefficient is divisible by p and p'",
                           VerdictStatus::Pass,
                           std::to_string(fc.pairs.size()) + " pairs, " + std::to_string(checked) +
                               " nonzero coefficients, zero violations"});
  }

  if (!split) {
    fc.verdicts.push_back({kClaimUnasserted, "curvature claims cover split q only", VerdictStatus::Measured,
                           [&] {
                             std::string d;
                             for (const auto& r : fc.pairs) d += (d.empty() ? "" : "; ") + witness_text(r, n);
                             return d;
                           }()});
    return fc;
  }

  if (n >= 4) {
    // Undetected pairs get one more degree.
    std::vector<std::size_t> zero;
    for (std::size_t k = 0; k < fc.pairs.size(); ++k)
      if (fc.pairs[k].vanishes()) zero.push_back(k);
    if (!zero.empty() && params.escalate) {
      const auto higher = lift_all(form, primes, params.K, params.D + 1, params);
      std::vector<std::pair<std::size_t, std::size_t>> idx;
      for (std::size_t a = 0; a < primes.size(); ++a)
        for (std::size_t b = a + 1; b < primes.size(); ++b) idx.emplace_back(a, b);
      parallel_for(params.jobs, zero.size(), [&](std::size_t z) {
        const auto [a, b] = idx[zero[z]];
        fc.pairs[zero[z]] = curvature_pair(*higher[a].lift, *higher[b].lift);
      });
    }
    std::string d;
    bool all_nonzero = true;
    for (const auto& r : fc.pairs) {
      all_nonzero = all_nonzero && !r.vanishes();
      d += (d.empty() ? "" : "; ") + witness_text(r, n);
    }
    fc.verdicts.push_back({kClaimNonzero, "for n >= 4 and p != p' the curvature is nonzero",
                           all_nonzero ? VerdictStatus::Pass : VerdictStatus::Inconclusive, d});
  }
  if (n % 2 == 0) {
    std::string d;
    bool ok = true;
    for (const auto& r : fc.pairs) {
      const bool pair_ok = !r.lowest_degree || *r.lowest_degree >= 3;
      ok = ok && pair_ok;
      d += (d.empty() ? "" : "; ") + pair_label(r) + ": lowest degree " +
           (r.lowest_degree ? std::to_string(*r.lowest_degree) : "none (zero to degree " + std::to_string(r.D) + ")");
    }
    fc.verdicts.push_back({kClaimCubic, "for n even the curvature vanishes mod (T)^3",
                           ok ? VerdictStatus::Pass : VerdictStatus::Fail, d});
  }
  auto vanishing = [&](const char* claim, const char* statement) {
    std::string d;
    bool ok = true;
    for (const auto& r : fc.pairs) {
      ok = ok && r.vanishes();
      d += (d.empty() ? "" : "; ") + witness_text(r, n);
    }
    fc.verdicts.push_back({claim, statement, ok ? VerdictStatus::Pass : VerdictStatus::Fail, d});
  };
  if (n == 2 && form.epsilon == -1) vanishing(kClaimSp2, "for n = 2 and q^t = -q the curvature vanishes");
  if (n == 1) vanishing(kClaimRank1, "for n = 1 the curvature vanishes");
  if ((n == 2 || n == 3) && form.epsilon == 1) {
    std::string d;
    for (const auto& r : fc.pairs) d += (d.empty() ? "" : "; ") + witness_text(r, n);
    fc.verdicts.push_back({kClaimUnasserted, "measured, no theorem assertion for n = 2, 3 with q^t = q",
                           VerdictStatus::Measured, d});
  }
  return fc;
}

}  // namespace

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass:
      return "pass";
    case VerdictStatus::Fail:
      return "fail";
    case VerdictStatus::Inconclusive:
      return "inconclusive";
    case VerdictStatus::Measured:
      return "measured";
  }
  return "?";
}

bool TheoremSummary::any_fail() const {
  for (const auto& f : forms)
    for (const auto& v : f.verdicts)
      if (v.status == VerdictStatus::Fail) return true;
  return false;
}

bool TheoremSummary::any_inconclusive() const {
  for (const auto& f : forms)
    for (const auto& v : f.verdicts)
      if (v.status == VerdictStatus::Inconclusive) return true;
  return false;
}

TheoremSummary theorem_checks(const std::vector<FormSpec>& forms, std::vector<std::uint64_t> primes,
                              const CheckParams& params) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (primes.size() < 2) throw InvalidParams("curvature checks need at least two distinct primes");
  if (forms.empty()) throw InvalidParams("no forms to check");
  for (const auto& f : forms)
    for (auto p : primes) LiftParams{p, params.K, params.D}.validate(f);
  TheoremSummary summary;
  for (const auto& f : forms) summary.forms.push_back(check_form(f, primes, params));
  return summary;
}

}  // namespace achern
