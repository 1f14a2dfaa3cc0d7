#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "achern/report.hpp"

namespace achern {

enum class ExitCode : int { Ok = 0, InputError = 1, Mismatch = 2, Inconclusive = 3 };

struct RunConfig {
  std::string command;  // delta | lift | curvature | verify-theorems | classical
  long N0 = 2;
  long N = 1;
  std::vector<std::uint64_t> primes{3, 5, 7};
  std::vector<FormSpec> forms;
  int D = 4;
  int K = 16;
  std::vector<Rational> a;  // delta input in the power basis
  std::uint64_t seed = 1;
  int trials = 50;
  bool escalate = false;
  int jobs = 1;
  std::string output_path;  // empty: caller decides
  ReportFormat format = ReportFormat::Json;
};

// Parses and validates a config document; throws ConfigError (or the
// module's validation error) before any computation happens.
RunConfig parse_config(const Json& doc);
RunConfig parse_config_text(const std::string& text);

struct RunOutcome {
  ExitCode code = ExitCode::Ok;
  Json report;
};

// Executes a validated config. Library errors are mapped onto the exit
// code contract and recorded in the report; nothing is thrown.
RunOutcome run(const RunConfig& config);

// parse + run; config errors become InputError outcomes.
RunOutcome run_text(const std::string& config_text);

}  // namespace achern
