#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "owcsa/config.hpp"
#include "owcsa/reliability.hpp"

namespace owcsa {

enum class OutputMode { analytic, mc, both };

const char* to_string(OutputMode m);
OutputMode parse_output_mode(const std::string& name);

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitValidation = 4,
};

/// Conditional SINR distribution given config.n_active: x,pdf,cdf[,mc_cdf].
int cmd_cdf(const RunConfig& config, OutputMode mode, std::ostream& out);

/// Unconditional outage under both receivers for the configured traffic.
int cmd_outage(const RunConfig& config, OutputMode mode, std::ostream& out);

/// `values` are in CLI units: users (count), semi_angle (deg), radius (m),
/// activation_prob. Rows that fail are reported and give kExitNumerical.
int cmd_sweep(const RunConfig& config, SweepAxis axis, const std::vector<double>& values, OutputMode mode,
              std::ostream& out);

/// Analytic-vs-oracle checks; kExitValidation when any fails.
int cmd_validate(const RunConfig& config, std::ostream& out);

} // namespace owcsa
