#include "risnoma/config.hpp"
#include "risnoma/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace risnoma {

namespace {

const std::set<std::string> kVariables = {"snr_db", "m_total", "eta", "beta1_sq"};
const std::set<std::string> kOutputs = {"mc_noma", "mc_oma", "lower",
                                        "upper",   "se",     "ee"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string &origin, int line, const std::string &msg) {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(std::string_view value, const std::string &origin, int line) {
    double out = 0.0;
    const char *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        fail(origin, line, "expected a number, got '" + std::string(value) + "'");
    return out;
}

long long parse_int(std::string_view value, const std::string &origin, int line) {
    long long out = 0;
    const char *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        fail(origin, line, "expected an integer, got '" + std::string(value) + "'");
    return out;
}

std::uint64_t parse_u64(std::string_view value, const std::string &origin, int line) {
    std::uint64_t out = 0;
    const char *end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        fail(origin, line, "expected an unsigned integer, got '" +
                               std::string(value) + "'");
    return out;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> items;
    std::string token;
    for (char c : value) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!token.empty()) {
                items.push_back(token);
                token.clear();
            }
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty())
        items.push_back(token);
    return items;
}

} // namespace

void SweepSpec::validate() const {
    if (kVariables.count(variable) == 0)
        throw ConfigError("sweep.variable must be one of snr_db, m_total, eta, "
                          "beta1_sq; got '" + variable + "'");
    if (grid.empty())
        throw ConfigError("sweep.grid must contain at least one value");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("sweep.grid must be strictly increasing (value " +
                              std::to_string(grid[i]) + " at position " +
                              std::to_string(i) + " does not increase)");
    if (outputs.empty())
        throw ConfigError("sweep.outputs must request at least one of mc_noma, "
                          "mc_oma, lower, upper, se, ee");
    std::set<std::string> seen;
    for (const auto &token : outputs) {
        if (kOutputs.count(token) == 0)
            throw ConfigError("unknown sweep output '" + token + "'");
        if (!seen.insert(token).second)
            throw ConfigError("sweep output '" + token + "' requested twice");
    }
}

LoadedConfig parse_config_text(std::string_view text, const std::string &origin) {
    LoadedConfig out;

    double rho_db = 20.0;
    int m_total = 64;
    double eta = 0.5;
    bool beta1_set = false;
    bool beta2_set = false;
    bool sweep_seen = false;

    std::set<std::string> seen_keys;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(origin, line_no, "expected key=value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(origin, line_no, "missing key before '='");
        if (value.empty())
            fail(origin, line_no, "missing value for key '" + key + "'");
        if (!seen_keys.insert(key).second)
            fail(origin, line_no, "duplicate key '" + key + "'");

        auto &sc = out.scenario;
        if (key == "links.dt_ris.m")
            sc.links.dt_ris.m = parse_double(value, origin, line_no);
        else if (key == "links.dt_ris.omega")
            sc.links.dt_ris.omega = parse_double(value, origin, line_no);
        else if (key == "links.ris_dr1.m")
            sc.links.ris_dr1.m = parse_double(value, origin, line_no);
        else if (key == "links.ris_dr1.omega")
            sc.links.ris_dr1.omega = parse_double(value, origin, line_no);
        else if (key == "links.ris_dr2.m")
            sc.links.ris_dr2.m = parse_double(value, origin, line_no);
        else if (key == "links.ris_dr2.omega")
            sc.links.ris_dr2.omega = parse_double(value, origin, line_no);
        else if (key == "links.direct_dr1.m")
            sc.links.direct_dr1.m = parse_double(value, origin, line_no);
        else if (key == "links.direct_dr1.omega")
            sc.links.direct_dr1.omega = parse_double(value, origin, line_no);
        else if (key == "links.direct_dr2.m")
            sc.links.direct_dr2.m = parse_double(value, origin, line_no);
        else if (key == "links.direct_dr2.omega")
            sc.links.direct_dr2.omega = parse_double(value, origin, line_no);
        else if (key == "ris.m_total")
            m_total = static_cast<int>(parse_int(value, origin, line_no));
        else if (key == "ris.eta")
            eta = parse_double(value, origin, line_no);
        else if (key == "power.beta1_sq") {
            sc.power.beta1_sq = parse_double(value, origin, line_no);
            beta1_set = true;
        } else if (key == "power.beta2_sq") {
            sc.power.beta2_sq = parse_double(value, origin, line_no);
            beta2_set = true;
        } else if (key == "snr.rho_db")
            rho_db = parse_double(value, origin, line_no);
        else if (key == "energy.alpha")
            sc.ee_terms.alpha = parse_double(value, origin, line_no);
        else if (key == "energy.p_static_w")
            sc.ee_terms.p_static_w = parse_double(value, origin, line_no);
        else if (key == "energy.p_re_w")
            sc.ee_terms.p_re_w = parse_double(value, origin, line_no);
        else if (key == "energy.p_u_w")
            sc.ee_terms.p_u_w = parse_double(value, origin, line_no);
        else if (key == "energy.noise_floor_w")
            sc.ee_terms.noise_floor_w = parse_double(value, origin, line_no);
        else if (key == "mc.trials")
            out.mc.n_trials = parse_int(value, origin, line_no);
        else if (key == "mc.seed")
            out.mc.seed = parse_u64(value, origin, line_no);
        else if (key == "mc.workers")
            out.mc.n_workers = static_cast<int>(parse_int(value, origin, line_no));
        else if (key == "sweep.variable") {
            out.sweep.variable = std::string(value);
            sweep_seen = true;
        } else if (key == "sweep.grid") {
            for (const auto &item : split_list(value))
                out.sweep.grid.push_back(parse_double(item, origin, line_no));
            sweep_seen = true;
        } else if (key == "sweep.outputs") {
            out.sweep.outputs = split_list(value);
            sweep_seen = true;
        } else
            fail(origin, line_no, "unknown key '" + key + "'");
    }

    if (beta1_set && !beta2_set)
        out.scenario.power.beta2_sq = 1.0 - out.scenario.power.beta1_sq;
    else if (beta2_set && !beta1_set)
        out.scenario.power.beta1_sq = 1.0 - out.scenario.power.beta2_sq;

    out.scenario.rho_r = std::pow(10.0, rho_db / 10.0);
    out.scenario.partition = partition_elements(m_total, eta);
    out.scenario.validate();
    out.mc.validate();
    if (sweep_seen)
        out.sweep.validate();
    return out;
}

LoadedConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading config file '" + path + "'");
    return parse_config_text(buf.str(), path);
}

} // namespace risnoma
