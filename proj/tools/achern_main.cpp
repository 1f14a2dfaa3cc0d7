#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "achern/errors.hpp"
#include "achern/run.hpp"

namespace {

int fail_input(const std::string& what) {
  std::cerr << "achern: " << what << "\n";
  return static_cast<int>(achern::ExitCode::InputError);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic Chern connections: lifts, curvature and theorem checks"};
  std::string config_path, output_path, format;
  bool escalate = false;
  int jobs = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--output", output_path, "Report path (default: config output.path, else stdout)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "markdown"}));
  app.add_flag("--escalate", escalate, "Allow one K/D escalation");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(achern::ExitCode::InputError);
  }

  std::string config_error;
  std::ifstream in(config_path);
  std::stringstream buf;
  buf << in.rdbuf();

  achern::Json doc;
  try {
    doc = achern::Json::parse(buf.str());
  } catch (const achern::Json::parse_error& e) {
    doc = nullptr;
    config_error = config_path + " is not valid JSON: " + e.what();
  }
  if (doc.is_object()) {
    if (escalate) doc["escalate"] = true;
    if (jobs > 0) doc["jobs"] = jobs;
    if (!format.empty()) doc["output"]["format"] = format;
  }

  achern::RunOutcome outcome;
  achern::ReportFormat fmt = format.empty() ? achern::ReportFormat::Json : achern::parse_format(format);
  std::string path = output_path;
  try {
    if (!config_error.empty()) throw achern::ConfigError(config_error);
    const auto config = achern::parse_config(doc);
    fmt = config.format;
    if (path.empty()) path = config.output_path;
    outcome = achern::run(config);
  } catch (const std::exception& e) {
    std::string command = doc.is_object() && doc.contains("command") && doc["command"].is_string()
                              ? doc["command"].get<std::string>()
                              : "unknown";
    outcome = {achern::ExitCode::InputError, {{"command", command}, {"status", "input_error"}, {"error", e.what()}}};
    std::cerr << "achern: " << e.what() << "\n";
  }

  const std::string text = achern::render(outcome.report, fmt);
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) return fail_input("cannot write " + path);
  }
  if (outcome.report.contains("error") && outcome.code != achern::ExitCode::InputError)
    std::cerr << "achern: " << outcome.report["error"].get<std::string>() << "\n";
  return static_cast<int>(outcome.code);
}
