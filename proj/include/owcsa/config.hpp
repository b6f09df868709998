#pragma once

#include <string>
#include <utility>
#include <vector>

#include "owcsa/channel.hpp"
#include "owcsa/montecarlo.hpp"
#include "owcsa/reliability.hpp"
#include "owcsa/sinr.hpp"

namespace owcsa {

/// Everything a CLI run needs, in SI / linear units.
struct RunConfig {
    LedTransmitter led;
    PhotoDetector pd;
    CellGeometry cell;
    PowerNoiseParams power;
    TrafficModel traffic;
    OutageQuery query;
    QuadratureSpec quadrature;
    McConfig mc;
    int n_active = 2;
    std::string out = "-";

    SystemModel model() const;

    /// Every key with its resolved value, in file order of the grammar.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Parses the INI-like grammar described in docs/config.md. `source` names
/// the input in error messages. Throws ConfigError.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Sets one key as if it appeared in a config file (units allowed).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Every key the grammar accepts, grouped by section.
std::vector<std::pair<std::string, std::string>> config_keys();

} // namespace owcsa
