#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "achern/classical.hpp"
#include "achern/theorem_checks.hpp"

namespace achern {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Json, Csv, Markdown };

ReportFormat parse_format(const std::string& name);  // throws ConfigError

// Graded-lex term list: [{"exponents": [...], "monomial": "T11*T12", "coeff": "num/den"}, ...]
Json series_json(const Series<RationalRing>& s, int matrix_n);
// [{"row": 1, "col": 1, "terms": [...]}, ...], zero entries included.
Json matrix_json(const RationalMatrix& m);

Json form_json(const FormSpec& form);
Json certificate_json(const Certificate& c);
Json global_lift_json(const GlobalLift& lift);
// p-adic result: residues, rationalized constant term, deficits.
Json lift_result_json(const FrobeniusLiftResult& result);
Json curvature_json(const CurvatureReport& r, int n);
Json verdict_json(const Verdict& v);
Json theorem_summary_json(const TheoremSummary& s);

// Serializes a report document (an object with a "command" key): json is
// pretty-printed; markdown and csv are rendered from the same document.
std::string render(const Json& doc, ReportFormat format);

}  // namespace achern
