#include "achern/report.hpp"

#include <sstream>

#include "achern/errors.hpp"

namespace achern {

namespace {

std::string entry_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
  return out + "\n";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string md_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + md_cell(c) + " |";
  return out + "\n";
}

std::string md_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = md_row(header) + "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += "---|";
  out += "\n";
  for (const auto& r : rows) out += md_row(r);
  return out;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

std::string entry_of(const Json& c) { return entry_name(c["row"].get<int>(), c["col"].get<int>()); }

// Rows of the divisibility witness table for one curvature document.
std::vector<std::vector<std::string>> coefficient_rows(const Json& cur) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& deg : cur["degrees"])
    for (const auto& c : deg["coefficients"])
      rows.push_back({std::to_string(deg["degree"].get<int>()), entry_of(c), c["monomial"].get<std::string>(),
                      c["commutator"].get<std::string>(), c["curvature"].get<std::string>(),
                      std::to_string(c["val_p"].get<int>()), std::to_string(c["val_p2"].get<int>())});
  return rows;
}

std::string curvature_md(const Json& cur) {
  std::ostringstream out;
  out << "### " << cur["form"].get<std::string>() << ", (p, p') = (" << cur["p"].get<std::uint64_t>() << ", "
      << cur["p2"].get<std::uint64_t>() << "), D = " << cur["D"].get<int>() << "\n\n";
  out << "- vanishes to degree D: " << (cur["vanishes"].get<bool>() ? "yes" : "no") << "\n";
  out << "- lowest degree: " << scalar_text(cur["lowest_degree"]) << "\n";
  out << "- divisible by p p': " << (cur["divisible"].get<bool>() ? "yes" : "no") << "\n\n";
  const auto rows = coefficient_rows(cur);
  out << "Divisibility witnesses (nonzero commutator coefficients, curvature = commutator / (p p')):\n\n";
  if (rows.empty())
    out << "none: the commutator vanishes to degree D.\n\n";
  else
    out << md_table({"degree", "entry", "monomial", "commutator", "curvature", "v_p", "v_p'"}, rows) << "\n";
  return out.str();
}

std::string lift_md(const Json& lift) {
  std::ostringstream out;
  out << "### " << lift["form"]["name"].get<std::string>() << ", p = " << lift["p"].get<std::uint64_t>()
      << ", K = " << lift["K"].get<int>() << ", D = " << lift["D"].get<int>() << "\n\n";
  out << "- global along 1: " << (lift["global_along_identity"].get<bool>() ? "yes (to degree D)" : "no") << "\n";
  if (lift.contains("not_global_reason")) out << "- reason: " << lift["not_global_reason"].get<std::string>() << "\n";
  std::vector<std::vector<std::string>> ct;
  for (const auto& row : lift["constant_term"]) {
    std::vector<std::string> r;
    for (const auto& v : row) r.push_back(v.get<std::string>());
    ct.push_back(r);
  }
  out << "- constant term: ";
  for (std::size_t i = 0; i < ct.size(); ++i) {
    out << (i ? "; " : "[");
    for (std::size_t j = 0; j < ct[i].size(); ++j) out << (j ? " " : "") << ct[i][j];
  }
  out << "]\n\n";
  if (lift.contains("certificate")) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : lift["certificate"]["checks"])
      rows.push_back({c["name"].get<std::string>(), c["passed"].get<bool>() ? "pass" : "fail",
                      c["detail"].get<std::string>()});
    out << md_table({"check", "result", "detail"}, rows) << "\n";
  }
  if (lift.contains("lambda")) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : lift["lambda"])
      for (const auto& t : e["terms"])
        rows.push_back({entry_of(e), t["monomial"].get<std::string>(), t["coeff"].get<std::string>()});
    out << md_table({"entry", "monomial", "coefficient"}, rows) << "\n";
  }
  return out.str();
}

std::string verdicts_md(const Json& forms) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& f : forms)
    for (const auto& v : f["verdicts"])
      rows.push_back({f["form"]["name"].get<std::string>(), v["claim"].get<std::string>(),
                      v["status"].get<std::string>(), v["detail"].get<std::string>()});
  return md_table({"form", "claim", "status", "detail"}, rows);
}

std::string render_markdown(const Json& doc) {
  const std::string command = doc["command"].get<std::string>();
  std::ostringstream out;
  out << "# achern " << command << "\n\n";
  out << "- status: " << doc["status"].get<std::string>() << "\n";
  if (doc.contains("error")) out << "- error: " << doc["error"].get<std::string>() << "\n";
  out << "\n";
  if (command == "delta" && doc.contains("results")) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : doc["results"])
      rows.push_back({r["a"].get<std::string>(), std::to_string(r["p"].get<std::uint64_t>()),
                      r["frobenius"].get<std::string>(), r["delta"].get<std::string>()});
    out << md_table({"a", "p", "phi_p(a)", "delta_p(a)"}, rows);
  } else if (command == "lift" && doc.contains("lifts")) {
    for (const auto& l : doc["lifts"]) out << lift_md(l);
  } else if (command == "curvature" && doc.contains("pairs")) {
    for (const auto& c : doc["pairs"]) out << curvature_md(c);
  } else if (command == "verify-theorems" && doc.contains("forms")) {
    out << "## Verdicts\n\n" << verdicts_md(doc["forms"]) << "\n## Curvature\n\n";
    for (const auto& f : doc["forms"])
      for (const auto& c : f["pairs"]) out << curvature_md(c);
  } else if (command == "classical" && doc.contains("checks")) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : doc["checks"])
      rows.push_back({c["check"].get<std::string>(), std::to_string(c["cases"].get<int>()),
                      std::to_string(c["passed"].get<int>())});
    out << md_table({"check", "cases", "passed"}, rows);
  }
  return out.str();
}

std::string render_csv(const Json& doc) {
  const std::string command = doc["command"].get<std::string>();
  std::string out;
  if (!doc.contains("error")) {
    if (command == "delta") {
      out += csv_row({"a", "p", "frobenius", "delta"});
      for (const auto& r : doc["results"])
        out += csv_row({r["a"].get<std::string>(), std::to_string(r["p"].get<std::uint64_t>()),
                        r["frobenius"].get<std::string>(), r["delta"].get<std::string>()});
      return out;
    }
    if (command == "lift") {
      out += csv_row({"form", "p", "K", "D", "global", "row", "col", "monomial", "coefficient"});
      for (const auto& l : doc["lifts"]) {
        const std::vector<std::string> head = {l["form"]["name"].get<std::string>(),
                                               std::to_string(l["p"].get<std::uint64_t>()),
                                               std::to_string(l["K"].get<int>()), std::to_string(l["D"].get<int>()),
                                               l["global_along_identity"].get<bool>() ? "yes" : "no"};
        const auto& terms = l.contains("lambda") ? l["lambda"] : l["lambda_residues"];
        for (const auto& e : terms)
          for (const auto& t : e["terms"]) {
            auto row = head;
            row.push_back(std::to_string(e["row"].get<int>()));
            row.push_back(std::to_string(e["col"].get<int>()));
            row.push_back(t["monomial"].get<std::string>());
            row.push_back(t["coeff"].get<std::string>());
            out += csv_row(row);
          }
      }
      return out;
    }
    if (command == "curvature" || command == "verify-theorems") {
      if (command == "verify-theorems") {
        out += csv_row({"form", "claim", "status", "detail"});
        for (const auto& f : doc["forms"])
          for (const auto& v : f["verdicts"])
            out += csv_row({f["form"]["name"].get<std::string>(), v["claim"].get<std::string>(),
                            v["status"].get<std::string>(), v["detail"].get<std::string>()});
        out += "\n";
      }
      out += csv_row({"form", "p", "p2", "D", "degree", "row", "col", "monomial", "commutator", "curvature", "val_p",
                      "val_p2"});
      auto emit = [&](const Json& cur) {
        for (const auto& r : coefficient_rows(cur)) {
          const auto& c = r;
          out += csv_row({cur["form"].get<std::string>(), std::to_string(cur["p"].get<std::uint64_t>()),
                          std::to_string(cur["p2"].get<std::uint64_t>()), std::to_string(cur["D"].get<int>()), c[0],
                          c[1].substr(1, c[1].find(',') - 1), c[1].substr(c[1].find(',') + 1, c[1].size() - c[1].find(',') - 2),
                          c[2], c[3], c[4], c[5], c[6]});
        }
      };
      if (command == "curvature")
        for (const auto& c : doc["pairs"]) emit(c);
      else
        for (const auto& f : doc["forms"])
          for (const auto& c : f["pairs"]) emit(c);
      return out;
    }
    if (command == "classical") {
      out += csv_row({"check", "cases", "passed"});
      for (const auto& c : doc["checks"])
        out += csv_row({c["check"].get<std::string>(), std::to_string(c["cases"].get<int>()),
                        std::to_string(c["passed"].get<int>())});
      return out;
    }
  }
  out += csv_row({"command", "status", "error"});
  out += csv_row({command, doc["status"].get<std::string>(), doc.contains("error") ? doc["error"].get<std::string>() : ""});
  return out;
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw ConfigError("unknown format '" + name + "' (expected json, csv or markdown)");
}

Json series_json(const Series<RationalRing>& s, int matrix_n) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    Json exps = Json::array();
    for (auto e : s.basis().exponents(t.index)) exps.push_back(static_cast<int>(e));
    terms.push_back({{"exponents", exps}, {"monomial", s.basis().to_string(t.index, matrix_n)}, {"coeff", to_string(t.coeff)}});
  }
  return terms;
}

Json matrix_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) out.push_back({{"row", i + 1}, {"col", j + 1}, {"terms", series_json(m(i, j), m.n())}});
  return out;
}

Json form_json(const FormSpec& form) {
  Json q = Json::array();
  for (int i = 0; i < form.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < form.n; ++j) row.push_back(form.at(i, j).to_string());
    q.push_back(row);
  }
  const auto split = form.as_split();
  return {{"name", form.name()}, {"n", form.n},     {"epsilon", form.epsilon}, {"split", split.has_value()},
          {"N0", form.ring->N0}, {"N", form.ring->N}, {"q", q}};
}

Json certificate_json(const Certificate& c) {
  Json checks = Json::array();
  for (const auto& k : c.checks) checks.push_back({{"name", k.name}, {"passed", k.passed}, {"detail", k.detail}});
  return {{"K", c.K}, {"passed", c.passed()}, {"checks", checks}};
}

Json global_lift_json(const GlobalLift& lift) {
  Json out = {{"form", form_json(lift.form)}, {"p", lift.p()}, {"K", lift.params.K}, {"D", lift.D()},
              {"global_along_identity", true}, {"scope", "global to degree " + std::to_string(lift.D())}};
  Json ct = Json::array();
  for (int i = 0; i < lift.form.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < lift.form.n; ++j) row.push_back(to_string(lift.lambda(i, j).constant_term()));
    ct.push_back(row);
  }
  out["constant_term"] = ct;
  out["certificate"] = certificate_json(lift.certificate);
  out["lambda"] = matrix_json(lift.lambda);
  return out;
}

Json lift_result_json(const FrobeniusLiftResult& result) {
  const PadicRing& R = result.lambda.ring();
  const int n = result.form.n;
  Json out = {{"form", form_json(result.form)}, {"p", result.params.p}, {"K", result.params.K}, {"D", result.params.D},
              {"global_along_identity", false}};
  Json ct = Json::array();
  const auto constant = result.lambda.constant_part();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) {
      auto r = rational_reconstruct(from_u128(constant[i * n + j]), R.p(), R.K());
      row.push_back(r ? to_string(*r) : R.to_string(constant[i * n + j]) + " mod " + std::to_string(R.p()) + "^" +
                                            std::to_string(R.K()));
    }
    ct.push_back(row);
  }
  out["constant_term"] = ct;
  out["deficits"] = {{"identity_I", result.residuals.identity_I},
                     {"identity_II", result.residuals.identity_II},
                     {"congruence", result.residuals.congruence}};
  Json entries = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Json terms = Json::array();
      const auto& s = result.lambda(i, j);
      for (const auto& t : s.terms())
        terms.push_back({{"monomial", s.basis().to_string(t.index, n)}, {"coeff", R.to_string(t.coeff)}});
      entries.push_back({{"row", i + 1}, {"col", j + 1}, {"terms", terms}});
    }
  out["lambda_residues"] = entries;
  return out;
}

Json curvature_json(const CurvatureReport& r, int n) {
  Json out = {{"form", r.form},          {"p", r.p},
              {"p2", r.p2},              {"D", r.D},
              {"vanishes", r.vanishes()}, {"lowest_degree", r.lowest_degree ? Json(*r.lowest_degree) : Json(nullptr)},
              {"divisible", true}};
  Json degrees = Json::array();
  const auto& basis = *r.commutator.basis_ptr();
  for (std::size_t k = 0; k < r.coefficients.size();) {
    const int d = r.coefficients[k].degree;
    Json coeffs = Json::array();
    for (; k < r.coefficients.size() && r.coefficients[k].degree == d; ++k) {
      const auto& c = r.coefficients[k];
      Json exps = Json::array();
      for (auto e : basis.exponents(c.monomial)) exps.push_back(static_cast<int>(e));
      coeffs.push_back({{"row", c.row + 1},
                        {"col", c.col + 1},
                        {"monomial", basis.to_string(c.monomial, n)},
                        {"exponents", exps},
                        {"commutator", to_string(c.commutator)},
                        {"curvature", to_string(c.curvature)},
                        {"val_p", c.val_p},
                        {"val_p2", c.val_p2}});
    }
    degrees.push_back({{"degree", d}, {"coefficients", coeffs}});
  }
  out["degrees"] = degrees;
  return out;
}

Json verdict_json(const Verdict& v) {
  return {{"claim", v.claim}, {"statement", v.statement}, {"status", to_string(v.status)}, {"detail", v.detail}};
}

Json theorem_summary_json(const TheoremSummary& s) {
  Json forms = Json::array();
  for (const auto& f : s.forms) {
    Json verdicts = Json::array();
    for (const auto& v : f.verdicts) verdicts.push_back(verdict_json(v));
    Json pairs = Json::array();
    for (const auto& p : f.pairs) pairs.push_back(curvature_json(p, f.form.n));
    Json K_used = Json::object();
    for (const auto& [p, K] : f.K_used) K_used[std::to_string(p)] = K;
    forms.push_back({{"form", form_json(f.form)},
                     {"primes", f.primes},
                     {"K_used", K_used},
                     {"global_along_identity", f.global},
                     {"verdicts", verdicts},
                     {"pairs", pairs}});
  }
  return forms;
}

std::string render(const Json& doc, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return doc.dump(2) + "\n";
    case ReportFormat::Csv:
      return render_csv(doc);
    case ReportFormat::Markdown:
      return render_markdown(doc);
  }
  return {};
}

}  // namespace achern
