#pragma once

#include <string>

#include <json.hpp>

#include "strongrate/config.hpp"

namespace strongrate {

// Output of one run. json and csv depend only on the resolved config, so
// identical configs give byte-identical files. Wall time lives outside them.
struct Report {
  std::string verb;
  nlohmann::ordered_json json;
  std::string csv;
  std::string summary;
  double wall_seconds = 0.0;

  std::string json_text() const;  // pretty printed, trailing newline
};

// Runs the experiment behind config.verb. Experiment failures propagate as
// strongrate::Error.
Report run_verb(const RunConfig& config);

enum class ReportFormat { csv, json, both };

ReportFormat parse_report_format(const std::string& name);

// Writes <base>.csv and/or <base>.json plus <base>.timing.json.
void write_report(const Report& report, const std::string& base, ReportFormat format);

}  // namespace strongrate
