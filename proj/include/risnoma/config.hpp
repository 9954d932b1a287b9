#pragma once

#include "risnoma/montecarlo.hpp"
#include "risnoma/noma.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace risnoma {

/// One-variable experiment description. variable is one of
/// snr_db | m_total | eta | beta1_sq; outputs draws from
/// mc_noma | mc_oma | lower | upper | se | ee.
struct SweepSpec {
    std::string variable;
    std::vector<double> grid;
    std::vector<std::string> outputs;

    /// Throws ConfigError unless the variable and every output token are
    /// known, the grid is nonempty and strictly increasing, and at least one
    /// output is requested.
    void validate() const;
};

struct LoadedConfig {
    ScenarioConfig scenario;
    SweepSpec sweep;      // empty unless sweep.* keys appear
    McSettings mc;
};

/// Parses the flat key=value format. '#' starts a comment, blank lines are
/// skipped, keys are dotted paths (links.dt_ris.m, ris.m_total, power.beta1_sq,
/// snr.rho_db, energy.alpha, sweep.variable, sweep.grid, mc.trials, ...).
/// Unknown keys, duplicate keys, and malformed values raise ParseError with
/// the line number; field-level invariant violations surface as ConfigError
/// from the validated structs. origin names the source in diagnostics.
LoadedConfig parse_config_text(std::string_view text, const std::string &origin);

/// Reads and parses a config file; a missing or unreadable file is an
/// IoError. An empty file yields the full default scenario.
LoadedConfig load_config(const std::string &path);

} // namespace risnoma
