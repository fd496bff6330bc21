#pragma once

#include <iosfwd>
#include <string>

#include "runconfig.hpp"

namespace tdjcm::cli {

/// Computes the configured inversion time series and writes the CSV.
/// Returns the process exit code (0 ok, 2 config error, 3 numeric failure).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs both engines and fails (exit 1) if the inversion curves differ by
/// more than 1e-6 anywhere on the grid; reports the worst (t, Delta).
int verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace tdjcm::cli
