// runner.hpp — subcommand dispatch shared by the CLI binary and the tests
#pragma once

#include <string>

#include "catspec/config.hpp"
#include "catspec/csv_output.hpp"

namespace catspec {

// Runs one subcommand (fig1..fig6, spectrum, meanfield, tf, gaussian,
// adiabatic, varifield), writing CSV/SVG outputs plus manifest.json into
// out_dir. Throws ConfigError for configuration problems and SolverError (or
// other exceptions) for solver failures.
RunManifest run_subcommand(const std::string& name, const Config& cfg, const std::string& out_dir,
                           int threads = 0, bool seed_free = false);

}  // namespace catspec
