#pragma once

#include "risnoma/config.hpp"
#include "risnoma/montecarlo.hpp"
#include "risnoma/noma.hpp"

#include <string>
#include <vector>

namespace risnoma {

/// One named CSV column. source is the output token the column belongs to
/// (mc_noma, mc_oma, lower, upper), so plot assembly can group columns
/// without re-parsing names.
struct SweepColumn {
    std::string name;
    std::string source;
    std::vector<double> values;
};

/// Row-aligned sweep table: columns[i].values[j] belongs to grid[j].
struct SweepResult {
    std::string variable;
    std::vector<double> grid;
    std::vector<std::string> outputs;
    std::vector<SweepColumn> columns;
};

/// The base scenario with one variable replaced: snr_db sets rho_r from dB,
/// m_total and eta re-partition the surface, beta1_sq rebuilds the power
/// split. Validation errors carry the offending value.
ScenarioConfig scenario_at(const ScenarioConfig &base, const std::string &variable,
                           double value);

/// Evaluates every requested output at every grid point. Monte-Carlo columns
/// reuse one NOMA and one OMA run per point, with disjoint per-point stream
/// ranges carved out of the seed space, so results are independent across
/// points yet fully determined by (seed, n_trials). Column order follows the
/// declaration order of outputs; se and ee expand to one column group per
/// requested rate source (plus stderr columns for Monte-Carlo sources), and
/// default to mc_noma when no rate source is requested.
SweepResult run_sweep(const ScenarioConfig &cfg, const SweepSpec &spec,
                      const McSettings &mc);

} // namespace risnoma
