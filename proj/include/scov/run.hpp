#pragma once

// Command driver shared by the CLI binary and the in-process tests. A
// RunConfig carries the merged flag/config/default values; run() executes
// one command against it and writes the report to the supplied stream.
//
// Commands:
//   lemmas      closed-form battery: deficit sign grid, endpoint zeros,
//               matching-radius back-substitution, cap-sum identity
//   radial      solve the radial equation with zero source and compare
//               against the exact bubble (values, flux, mass, order)
//   bol         isoperimetric check of a disk region on a planar field
//   sci         direct covering check on a matched or conformal pair
//   sweep       matched-cap sharpness scan, CSV by default
//   symmetrize  decreasing rearrangement of a pair onto the model cap
//   pipeline    full link-by-link proof chain on a fixture
//
// Exit codes: 0 when the command's check passed, 1 when it ran but the
// checked inequality or chain failed, 2 for usage or configuration
// errors. Every report echoes the effective configuration.

#include <iosfwd>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace scov {

struct RunConfig {
    std::string command;
    int grid = 128;  // planar cells per side
    int nodes = 0;   // radial intervals; 0 picks per-command defaults
    // pass/fail tolerance; NaN picks the per-command default
    double tol = std::numeric_limits<double>::quiet_NaN();
    std::string format; // json | text | csv; empty picks per-command default
    std::string out;    // output file; empty writes to the given stream
    double a = 0.0;     // scale or cap radius, command-specific; 0 = auto
    double b = 0.0;     // secondary scale or domain radius; 0 = auto
    double k = 0.7;     // matched-pair exponent
    // declared boundary gap override; NaN keeps the exact matched value
    double c = std::numeric_limits<double>::quiet_NaN();
    double lambda = 1.0; // bubble scale
    double z0x = 0.0;    // automorphism center
    double z0y = 0.0;
    double theta = 0.0;  // automorphism rotation
};

// Parses `key = value` lines; blank lines and '#' comments are skipped.
// Returns the raw key/value pairs; unknown keys are the caller's problem
// (apply_config rejects them). Throws std::invalid_argument on syntax
// errors.
std::map<std::string, std::string> parse_config_file(std::istream& is);

// Overlays parsed config values onto cfg, skipping any key named in
// `explicitly_set` (flags beat the config file). Throws
// std::invalid_argument for unknown keys or unparsable values.
void apply_config(RunConfig& cfg,
                  const std::map<std::string, std::string>& kv,
                  const std::set<std::string>& explicitly_set);

// Executes cfg.command and writes the report to `os` (or to cfg.out when
// set). Returns the exit code contract above; diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& os, std::ostream& err);

} // namespace scov
