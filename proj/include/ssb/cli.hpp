#pragma once

#include <cstdint>
#include <string>

#include "ssb/report.hpp"
#include "ssb/representation.hpp"

namespace ssb {

struct RunConfig {
  std::string input;               // group spec or scenario path
  std::string subgroup;            // analyze only
  std::string rep = "regular";     // "regular" or irrep labels joined by '+'
  double tolerance = tol::spectrum;
  std::uint64_t seed = kDefaultSeed;
  std::string out;                 // empty: stdout
  ReportFormat format = ReportFormat::Json;
};

struct RunResult {
  json report;
  bool verified = true;
};

/// Throws InputError (including GroupLoadError) for unusable input.
RunResult run_sector_analysis(const RunConfig& config);
RunResult run_measurement_scenario(const RunConfig& config);

/// Exit status: 0 all checks pass, 1 input error, 2 verification failure.
int run_cli(int argc, char** argv);

}  // namespace ssb
