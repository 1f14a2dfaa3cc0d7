#include "achern/run.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "achern/detail/parallel.hpp"
#include "achern/errors.hpp"
#include "achern/padic.hpp"

namespace achern {

namespace {

const std::set<std::string> kCommands = {"delta", "lift", "curvature", "verify-theorems", "classical"};
const std::set<std::string> kKeys = {"command", "N0", "N",      "primes", "p",     "form",     "forms", "q",
                                     "D",       "K",  "output", "a",      "seed",  "trials",   "escalate", "jobs"};

long get_long(const Json& doc, const char* key, long fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc[key];
  if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<long>();
}

Rational parse_scalar(const Json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected an integer or a rational string such as \"-3/4\"");
}

// A rational, or an array of power-basis coefficients for Z[1/N0, zeta_N].
CycloScalar parse_element(const Json& v, const BaseRingPtr& ring, const std::string& where) {
  if (v.is_array()) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < v.size(); ++i) c.push_back(parse_scalar(v[i], where + "[" + std::to_string(i) + "]"));
    if (c.empty()) throw ConfigError(where + ": empty coefficient list");
    if (static_cast<int>(c.size()) > std::max(ring->degree(), 1))
      throw ConfigError(where + ": at most " + std::to_string(std::max(ring->degree(), 1)) +
                        " power-basis coefficients for N = " + std::to_string(ring->N));
    return CycloScalar(ring, std::move(c));
  }
  return CycloScalar::from_rational(ring, parse_scalar(v, where));
}

FormSpec custom_form(const Json& rows, const BaseRingPtr& ring, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw ConfigError(where + ": q must be a non-empty list of rows");
  const int n = static_cast<int>(rows.size());
  std::vector<CycloScalar> entries;
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ConfigError(where + ": q must be square, row " + std::to_string(i + 1) + " has the wrong length");
    for (int j = 0; j < n; ++j)
      entries.push_back(parse_element(row[j], ring, where + ".q[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
  }
  return FormSpec::custom(n, std::move(entries));
}

FormSpec split_form(const std::string& kind, int r, const BaseRingPtr& ring, const std::string& where) {
  if (r < 0) throw ConfigError(where + ": r must be non-negative");
  if (kind == "sp" || kind == "so_even") {
    if (r < 1) throw ConfigError(where + ": r must be >= 1 for " + kind);
    return kind == "sp" ? FormSpec::split_sp(r, ring) : FormSpec::split_so_even(r, ring);
  }
  return FormSpec::split_so_odd(r, ring);
}

// "sp(4)", "so(3)": the argument is the matrix size n.
FormSpec form_from_name(const std::string& s, const BaseRingPtr& ring, const std::string& where) {
  const auto open = s.find('('), close = s.find(')');
  const std::string bad = where + ": unknown form '" + s + "' (expected sp(n) with n even, or so(n))";
  if (open == std::string::npos || close != s.size() - 1 || close <= open + 1) throw ConfigError(bad);
  const std::string head = s.substr(0, open), arg = s.substr(open + 1, close - open - 1);
  if (!std::all_of(arg.begin(), arg.end(), [](char c) { return c >= '0' && c <= '9'; }) || arg.size() > 4)
    throw ConfigError(bad);
  const int n = std::stoi(arg);
  if (n < 1) throw ConfigError(bad);
  if (head == "sp") {
    if (n % 2) throw ConfigError(where + ": sp(n) needs n even");
    return FormSpec::split_sp(n / 2, ring);
  }
  if (head == "so") return n % 2 ? FormSpec::split_so_odd(n / 2, ring) : FormSpec::split_so_even(n / 2, ring);
  throw ConfigError(bad);
}

FormSpec parse_form(const Json& v, const BaseRingPtr& ring, const std::string& where) {
  if (v.is_string()) return form_from_name(v.get<std::string>(), ring, where);
  if (!v.is_object()) throw ConfigError(where + ": expected a form name or an object with 'kind'");
  for (const auto& [key, _] : v.items())
    if (key != "kind" && key != "r" && key != "n" && key != "q")
      throw ConfigError(where + ": unknown key '" + key + "' (expected kind, r, n or q)");
  const std::string kind = v.contains("kind") ? v["kind"].get<std::string>() : (v.contains("q") ? "custom" : "");
  if (kind == "custom") {
    if (!v.contains("q")) throw ConfigError(where + ": custom form needs q");
    FormSpec f = custom_form(v["q"], ring, where);
    if (v.contains("n") && v["n"] != f.n) throw ConfigError(where + ": n does not match the size of q");
    return f;
  }
  if (kind != "sp" && kind != "so_even" && kind != "so_odd")
    throw ConfigError(where + ": kind must be sp, so_even, so_odd or custom");
  if (v.contains("r")) {
    if (!v["r"].is_number_integer()) throw ConfigError(where + ": r must be an integer");
    return split_form(kind, v["r"].get<int>(), ring, where);
  }
  if (v.contains("n")) {
    if (!v["n"].is_number_integer()) throw ConfigError(where + ": n must be an integer");
    const int n = v["n"].get<int>();
    if ((kind == "so_odd") != (n % 2 == 1)) throw ConfigError(where + ": n has the wrong parity for " + kind);
    return split_form(kind, n / 2, ring, where);
  }
  throw ConfigError(where + ": split form needs r or n");
}

std::string scalar_string(const CycloScalar& a) { return a.is_rational() ? to_string(a.rational_value()) : a.to_string(); }

bool covered(const FormSpec& f) { return f.entries_roots_of_unity_or_zero(); }

Json config_echo(const RunConfig& c) {
  Json out = {{"N0", c.N0}, {"N", c.N}, {"primes", c.primes}};
  if (c.command == "classical") return Json{{"seed", c.seed}, {"trials", c.trials}};
  if (c.command != "delta") {
    out["K"] = c.K;
    out["D"] = c.D;
    out["escalate"] = c.escalate;
  }
  return out;
}

struct Status {
  ExitCode code = ExitCode::Ok;
  void raise(ExitCode c) { code = std::max(code, c, [](ExitCode a, ExitCode b) { return rank(a) < rank(b); }); }
  // mismatch dominates inconclusive, which dominates ok
  static int rank(ExitCode c) {
    switch (c) {
      case ExitCode::Ok:
        return 0;
      case ExitCode::Inconclusive:
        return 1;
      case ExitCode::Mismatch:
        return 2;
      case ExitCode::InputError:
        return 3;
    }
    return 0;
  }
};

std::string status_name(ExitCode c) {
  switch (c) {
    case ExitCode::Ok:
      return "ok";
    case ExitCode::InputError:
      return "input_error";
    case ExitCode::Mismatch:
      return "mismatch";
    case ExitCode::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Json run_delta(const RunConfig& c) {
  const auto ring = BaseRingDesc::make(c.N0, c.N);
  const CycloScalar a(ring, c.a);
  Json results = Json::array();
  for (auto p : c.primes)
    results.push_back({{"a", scalar_string(a)},
                       {"p", p},
                       {"frobenius", scalar_string(frobenius_scalar(a, p))},
                       {"delta", scalar_string(p_derivation_scalar(a, p))}});
  return {{"results", results}};
}

Json run_lift(const RunConfig& c, Status& status) {
  Json lifts = Json::array();
  for (const auto& form : c.forms)
    for (auto p : c.primes) {
      const LiftParams params{p, c.K, c.D};
      const auto result = solve_frobenius_lift(form, params);
      const auto deficits = verify_lift_identities(result);
      Json entry;
      try {
        entry = global_lift_json(globalize(form, params, {c.escalate, 8}));
      } catch (const NotGlobalAlongIdentity& e) {
        entry = lift_result_json(result);
        entry["not_global_reason"] = e.what();
        if (covered(form)) status.raise(ExitCode::Mismatch);
      } catch (const AmbiguousReconstruction& e) {
        entry = lift_result_json(result);
        entry["not_global_reason"] = e.what();
        if (covered(form)) status.raise(ExitCode::Inconclusive);
      } catch (const CertificateFailure& e) {
        entry = lift_result_json(result);
        entry["not_global_reason"] = e.what();
        if (covered(form)) status.raise(ExitCode::Mismatch);
      }
      entry["flags"] = entry["global_along_identity"].get<bool>() ? Json::array()
                                                                    : Json::array({"not-global-along-1"});
      entry["deficits"] = {{"identity_I", deficits.identity_I},
                           {"identity_II", deficits.identity_II},
                           {"congruence", deficits.congruence}};
      if (!deficits.ok()) status.raise(ExitCode::Mismatch);
      lifts.push_back(std::move(entry));
    }
  return {{"lifts", lifts}};
}

Json run_curvature(const RunConfig& c, Status& status) {
  Json pairs = Json::array();
  for (const auto& form : c.forms) {
    std::vector<std::optional<GlobalLift>> lifts(c.primes.size());
    parallel_for(c.jobs, c.primes.size(), [&](std::size_t i) {
      lifts[i] = globalize(form, {c.primes[i], c.K, c.D}, {c.escalate, 8});
    });
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t a = 0; a < lifts.size(); ++a)
      for (std::size_t b = a + 1; b < lifts.size(); ++b) idx.emplace_back(a, b);
    std::vector<CurvatureReport> reports(idx.size());
    parallel_for(c.jobs, idx.size(),
                 [&](std::size_t k) { reports[k] = curvature_pair(*lifts[idx[k].first], *lifts[idx[k].second]); });
    for (const auto& r : reports) pairs.push_back(curvature_json(r, form.n));
  }
  (void)status;
  return {{"pairs", pairs}};
}

Json run_verify(const RunConfig& c, Status& status) {
  const auto summary = theorem_checks(c.forms, c.primes, {c.K, c.D, c.escalate, c.jobs});
  if (summary.any_fail())
    status.raise(ExitCode::Mismatch);
  else if (summary.any_inconclusive())
    status.raise(ExitCode::Inconclusive);
  return {{"forms", theorem_summary_json(summary)}};
}

Json run_classical(const RunConfig& c, Status& status) {
  std::mt19937_64 rng(c.seed);
  int chern = 0, lc = 0, comm = 0, comm_cases = 0;
  for (int t = 0; t < c.trials; ++t) {
    const int m = 2 + t % 2, n = 2 + (t / 2) % 2;
    const PolyMatrix q = random_poly_matrix(rng, n, m, 2, true);
    const auto g = chern_classical(q, m);
    chern += is_parallel(g, q) && is_metric_symmetric(g);
    const PolyMatrix qs = random_poly_matrix(rng, m, m, 2, true);
    const auto l = levi_civita_classical(qs, m);
    lc += is_parallel(l, qs) && is_torsion_free(l);
    LinearConn conn{m, n, {}};
    for (int i = 0; i < m; ++i) conn.A.push_back(random_poly_matrix(rng, n, m, 2, false));
    bool ok = true;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) ok = ok && commutator_matches_F(conn, i, j);
    comm += ok;
    ++comm_cases;
  }
  if (chern != c.trials || lc != c.trials || comm != comm_cases) status.raise(ExitCode::Mismatch);
  Json checks = Json::array();
  checks.push_back({{"check", "chern: parallel and symmetric in the last two indices"}, {"cases", c.trials}, {"passed", chern}});
  checks.push_back({{"check", "levi-civita: parallel and torsion free"}, {"cases", c.trials}, {"passed", lc}});
  checks.push_back({{"check", "[delta_i, delta_j] x = F_ij x"}, {"cases", comm_cases}, {"passed", comm}});
  return {{"checks", checks}};
}

Json error_doc(const std::string& command, ExitCode code, const std::string& what) {
  return {{"command", command.empty() ? "unknown" : command}, {"status", status_name(code)}, {"error", what}};
}

}  // namespace

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  RunConfig c;
  if (!doc.contains("command") || !doc["command"].is_string())
    throw ConfigError("'command' is required: one of delta, lift, curvature, verify-theorems, classical");
  c.command = doc["command"].get<std::string>();
  if (!kCommands.count(c.command))
    throw ConfigError("unknown command '" + c.command + "' (expected delta, lift, curvature, verify-theorems or classical)");

  c.N0 = get_long(doc, "N0", 2);
  c.N = get_long(doc, "N", 1);
  const auto ring = BaseRingDesc::make(c.N0, c.N);
  c.D = static_cast<int>(get_long(doc, "D", 4));
  c.K = static_cast<int>(get_long(doc, "K", 16));
  c.seed = static_cast<std::uint64_t>(get_long(doc, "seed", 1));
  c.trials = static_cast<int>(get_long(doc, "trials", 50));
  c.jobs = static_cast<int>(get_long(doc, "jobs", 1));
  if (c.jobs < 1) throw ConfigError("'jobs' must be >= 1");
  if (c.trials < 1) throw ConfigError("'trials' must be >= 1");
  if (doc.contains("escalate")) {
    if (!doc["escalate"].is_boolean()) throw ConfigError("'escalate' must be true or false");
    c.escalate = doc["escalate"].get<bool>();
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (!o.is_object()) throw ConfigError("'output' must be an object {\"path\": ..., \"format\": ...}");
    for (const auto& [key, _] : o.items())
      if (key != "path" && key != "format") throw ConfigError("unknown output key '" + key + "'");
    if (o.contains("path")) c.output_path = o["path"].get<std::string>();
    if (o.contains("format")) c.format = parse_format(o["format"].get<std::string>());
  }

  if (doc.contains("p")) {
    if (doc.contains("primes")) throw ConfigError("give either 'p' or 'primes', not both");
    if (!doc["p"].is_number_integer() || doc["p"].get<long>() < 1) throw ConfigError("'p' must be a positive integer");
    c.primes = {doc["p"].get<std::uint64_t>()};
  } else if (doc.contains("primes")) {
    const auto& ps = doc["primes"];
    if (!ps.is_array()) throw ConfigError("'primes' must be a list of primes");
    c.primes.clear();
    for (const auto& p : ps) {
      if (!p.is_number_integer() || p.get<long>() < 1) throw ConfigError("'primes' entries must be positive integers");
      c.primes.push_back(p.get<std::uint64_t>());
    }
  }
  if (c.command != "classical") {
    if (c.primes.empty()) throw ConfigError("'primes' must be a non-empty list of odd primes not dividing N0*N");
    std::sort(c.primes.begin(), c.primes.end());
    c.primes.erase(std::unique(c.primes.begin(), c.primes.end()), c.primes.end());
    for (auto p : c.primes) ring->require_admissible(p);
  }

  if (c.command == "delta") {
    if (!doc.contains("a")) throw ConfigError("delta needs 'a': a rational string or a list of power-basis coefficients");
    c.a = parse_element(doc["a"], ring, "a").coeffs();
    return c;
  }
  if (c.command == "classical") return c;

  const int forms_given = doc.contains("form") + doc.contains("forms") + doc.contains("q");
  if (forms_given != 1) throw ConfigError("give exactly one of 'form', 'forms' or 'q'");
  if (doc.contains("form")) c.forms.push_back(parse_form(doc["form"], ring, "form"));
  if (doc.contains("q")) c.forms.push_back(custom_form(doc["q"], ring, "q"));
  if (doc.contains("forms")) {
    if (!doc["forms"].is_array() || doc["forms"].empty()) throw ConfigError("'forms' must be a non-empty list");
    for (std::size_t i = 0; i < doc["forms"].size(); ++i)
      c.forms.push_back(parse_form(doc["forms"][i], ring, "forms[" + std::to_string(i) + "]"));
  }
  if ((c.command == "curvature" || c.command == "verify-theorems") && c.primes.size() < 2)
    throw ConfigError(c.command + " needs at least two distinct primes");

  const int max_K = c.K + (c.escalate ? 8 : 0);
  for (const auto& form : c.forms) {
    form.rational_entries();
    for (auto p : c.primes) {
      const LiftParams params{p, c.K, c.D};
      params.validate(form);
      PadicRing(p, max_K);
    }
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunOutcome run(const RunConfig& c) {
  Status status;
  Json body;
  try {
    if (c.command == "delta") body = run_delta(c);
    else if (c.command == "lift") body = run_lift(c, status);
    else if (c.command == "curvature") body = run_curvature(c, status);
    else if (c.command == "verify-theorems") body = run_verify(c, status);
    else if (c.command == "classical") body = run_classical(c, status);
    else throw ConfigError("unknown command '" + c.command + "'");
  } catch (const NotGlobalAlongIdentity& e) {
    // covered forms are claimed global; for the rest curvature is undefined
    bool any_covered = false;
    for (const auto& f : c.forms) any_covered = any_covered || covered(f);
    const auto code = any_covered ? ExitCode::Mismatch : ExitCode::InputError;
    return {code, error_doc(c.command, code, e.what())};
  } catch (const AmbiguousReconstruction& e) {
    return {ExitCode::Inconclusive, error_doc(c.command, ExitCode::Inconclusive, e.what())};
  } catch (const CertificateFailure& e) {
    return {ExitCode::Mismatch, error_doc(c.command, ExitCode::Mismatch, e.what())};
  } catch (const CurvatureNotDivisible& e) {
    return {ExitCode::Mismatch, error_doc(c.command, ExitCode::Mismatch, e.what())};
  } catch (const NonUniqueStep& e) {
    return {ExitCode::Mismatch, error_doc(c.command, ExitCode::Mismatch, e.what())};
  } catch (const std::exception& e) {
    return {ExitCode::InputError, error_doc(c.command, ExitCode::InputError, e.what())};
  }
  Json doc = {{"command", c.command}, {"status", status_name(status.code)}, {"config", config_echo(c)}};
  if (!c.forms.empty()) {
    Json forms = Json::array();
    for (const auto& f : c.forms) forms.push_back(form_json(f));
    doc["forms_requested"] = forms;
  }
  for (auto& [key, value] : body.items()) doc[key] = value;
  return {status.code, std::move(doc)};
}

RunOutcome run_text(const std::string& config_text) {
  std::string command;
  try {
    const RunConfig c = parse_config_text(config_text);
    return run(c);
  } catch (const std::exception& e) {
    try {
      const auto j = Json::parse(config_text);
      if (j.is_object() && j.contains("command") && j["command"].is_string()) command = j["command"].get<std::string>();
    } catch (...) {
    }
    return {ExitCode::InputError, error_doc(command, ExitCode::InputError, e.what())};
  }
}

}  // namespace achern
