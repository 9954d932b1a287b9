#include "risnoma/sweep.hpp"
#include "risnoma/bounds.hpp"
#include "risnoma/errors.hpp"
#include "risnoma/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace risnoma {

namespace {

std::string format_point(const std::string &variable, double value) {
    std::string s = std::to_string(value);
    // std::to_string pads with zeros; trim them for readable diagnostics
    if (s.find('.') != std::string::npos) {
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.')
            s.pop_back();
    }
    return variable + "=" + s;
}

bool is_mc_source(const std::string &source) {
    return source == "mc_noma" || source == "mc_oma";
}

/// Rate sources an se/ee request expands over, in request order; a sweep
/// asking only for se/ee implicitly measures the superposed scheme.
std::vector<std::string> rate_sources(const std::vector<std::string> &outputs) {
    std::vector<std::string> sources;
    for (const auto &token : outputs)
        if (token == "mc_noma" || token == "mc_oma" || token == "lower" ||
            token == "upper")
            sources.push_back(token);
    if (sources.empty())
        sources.push_back("mc_noma");
    return sources;
}

} // namespace

ScenarioConfig scenario_at(const ScenarioConfig &base, const std::string &variable,
                           double value) {
    ScenarioConfig cfg = base;
    if (variable == "snr_db") {
        cfg.rho_r = std::pow(10.0, value / 10.0);
    } else if (variable == "m_total") {
        const double rounded = std::round(value);
        if (std::fabs(value - rounded) > 1e-9)
            throw ConfigError("m_total grid values must be integers, got " +
                              std::to_string(value));
        cfg.partition = partition_elements(static_cast<int>(rounded),
                                           base.partition.eta);
    } else if (variable == "eta") {
        cfg.partition = partition_elements(base.partition.m_total, value);
    } else if (variable == "beta1_sq") {
        cfg.power = PowerSplit{value, 1.0 - value};
    } else {
        throw ConfigError("unknown sweep variable '" + variable + "'");
    }
    cfg.validate();
    return cfg;
}

SweepResult run_sweep(const ScenarioConfig &cfg, const SweepSpec &spec,
                      const McSettings &mc) {
    spec.validate();
    mc.validate();
    cfg.validate();

    const std::vector<std::string> se_sources = rate_sources(spec.outputs);
    const bool wants_derived =
        std::count(spec.outputs.begin(), spec.outputs.end(), "se") ||
        std::count(spec.outputs.begin(), spec.outputs.end(), "ee");

    bool need_noma = false;
    bool need_oma = false;
    bool need_bounds = false;
    auto mark_needed = [&](const std::string &source) {
        if (source == "mc_noma")
            need_noma = true;
        else if (source == "mc_oma")
            need_oma = true;
        else if (source == "lower" || source == "upper")
            need_bounds = true;
    };
    for (const auto &token : spec.outputs)
        mark_needed(token);
    if (wants_derived)
        for (const auto &src : se_sources)
            mark_needed(src);

    SweepResult result;
    result.variable = spec.variable;
    result.grid = spec.grid;
    result.outputs = spec.outputs;

    for (const auto &token : spec.outputs) {
        if (token == "mc_noma" || token == "mc_oma") {
            for (const char *stem : {"_r1_bps_hz", "_r1_bps_hz_stderr",
                                     "_r2_bps_hz", "_r2_bps_hz_stderr"})
                result.columns.push_back({token + stem, token, {}});
        } else if (token == "lower" || token == "upper") {
            result.columns.push_back({token + "_r1_bps_hz", token, {}});
            result.columns.push_back({token + "_r2_bps_hz", token, {}});
        } else if (token == "se") {
            for (const auto &src : se_sources) {
                result.columns.push_back({"se_" + src + "_bps_hz", src, {}});
                if (is_mc_source(src))
                    result.columns.push_back({"se_" + src + "_bps_hz_stderr", src, {}});
            }
        } else if (token == "ee") {
            for (const auto &src : se_sources) {
                result.columns.push_back({"ee_" + src + "_bpj_hz", src, {}});
                if (is_mc_source(src))
                    result.columns.push_back({"ee_" + src + "_bpj_hz_stderr", src, {}});
            }
        }
    }
    for (auto &col : result.columns)
        col.values.reserve(spec.grid.size());

    for (std::size_t j = 0; j < spec.grid.size(); ++j) {
        const double point = spec.grid[j];
        const std::string tag = "at " + format_point(spec.variable, point) + ": ";
        try {
            const ScenarioConfig pt_cfg = scenario_at(cfg, spec.variable, point);
            McSettings pt_mc = mc;
            pt_mc.stream_offset =
                mc.stream_offset + static_cast<std::uint64_t>(j) *
                                       static_cast<std::uint64_t>(mc.n_trials);

            std::optional<ErgodicPair> noma;
            std::optional<ErgodicPair> oma;
            std::optional<RateBounds> bounds;
            if (need_noma)
                noma = estimate_noma(pt_cfg, pt_mc);
            if (need_oma)
                oma = estimate_oma(pt_cfg, pt_mc);
            if (need_bounds)
                bounds = rate_bounds(pt_cfg);

            const EnergyModel em = energy_model_from(pt_cfg);

            auto se_of = [&](const std::string &src) {
                if (src == "mc_noma")
                    return noma->sum.mean;
                if (src == "mc_oma")
                    return oma->sum.mean;
                if (src == "lower")
                    return spectral_efficiency(bounds->lower.r1, bounds->lower.r2);
                return spectral_efficiency(bounds->upper.r1, bounds->upper.r2);
            };
            auto se_err_of = [&](const std::string &src) {
                return src == "mc_noma" ? noma->sum.std_err : oma->sum.std_err;
            };

            std::size_t c = 0;
            for (const auto &token : spec.outputs) {
                if (token == "mc_noma" || token == "mc_oma") {
                    const ErgodicPair &est = token == "mc_noma" ? *noma : *oma;
                    result.columns[c++].values.push_back(est.dr1.mean);
                    result.columns[c++].values.push_back(est.dr1.std_err);
                    result.columns[c++].values.push_back(est.dr2.mean);
                    result.columns[c++].values.push_back(est.dr2.std_err);
                } else if (token == "lower") {
                    result.columns[c++].values.push_back(bounds->lower.r1);
                    result.columns[c++].values.push_back(bounds->lower.r2);
                } else if (token == "upper") {
                    result.columns[c++].values.push_back(bounds->upper.r1);
                    result.columns[c++].values.push_back(bounds->upper.r2);
                } else if (token == "se") {
                    for (const auto &src : se_sources) {
                        result.columns[c++].values.push_back(se_of(src));
                        if (is_mc_source(src))
                            result.columns[c++].values.push_back(se_err_of(src));
                    }
                } else if (token == "ee") {
                    // EE is linear in SE, so one reciprocal-power evaluation
                    // converts both the estimate and its standard error.
                    const double inv_power_w = energy_efficiency(1.0, em);
                    for (const auto &src : se_sources) {
                        result.columns[c++].values.push_back(se_of(src) *
                                                             inv_power_w);
                        if (is_mc_source(src))
                            result.columns[c++].values.push_back(se_err_of(src) *
                                                                 inv_power_w);
                    }
                }
            }
        } catch (const ConfigError &e) {
            throw ConfigError(tag + e.what());
        } catch (const NumericError &e) {
            throw NumericError(tag + e.what());
        } catch (const IoError &e) {
            throw IoError(tag + e.what());
        }
    }
    return result;
}

} // namespace risnoma
