#pragma once

#include <string>
#include <vector>

#include "tamedns/run_config.hpp"

namespace tns {

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 experiment-level failure, 2 invalid input
    std::vector<std::string> artifacts;  // paths written under config.out
    std::string summary;                 // human-readable outcome
};

/// Executes the experiment named in the config, writing CSV reports, a
/// manifest and a summary under config.out.  Identical (config, seed) gives
/// byte-identical CSVs.
RunResult run(const RunConfig& config);

struct AssumptionRow {
    std::string check;
    bool pass = false;
    double margin = 0.0;  // positive slack when passing
    std::string note;
};
/// Every validator (growth, monotonicity, modulus, noise bound, averaging
/// rates, a4 <= 2 a3) against the configured coefficient family.
std::vector<AssumptionRow> validate_assumptions(const RunConfig& config);

/// Doubles rendered with %.17g so CSV re-runs are byte-identical.
std::string csv_double(double v);

}  // namespace tns
