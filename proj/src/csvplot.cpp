#include "risnoma/csvplot.hpp"
#include "risnoma/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace risnoma {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string first_column_name(const std::string &variable) {
    if (variable == "snr_db")
        return "snr_db";
    if (variable == "m_total")
        return "m_total_elements";
    if (variable == "eta")
        return "eta_fraction";
    if (variable == "beta1_sq")
        return "beta1_sq_fraction";
    return variable;
}

std::string source_label(const std::string &source) {
    if (source == "mc_noma")
        return "MC NOMA";
    if (source == "mc_oma")
        return "MC OMA";
    if (source == "lower")
        return "lower bound";
    if (source == "upper")
        return "upper bound";
    return source;
}

const SweepColumn *find_column(const SweepResult &result, const std::string &name) {
    for (const auto &col : result.columns)
        if (col.name == name)
            return &col;
    return nullptr;
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool starts_with(const std::string &s, const std::string &prefix) {
    return s.compare(0, prefix.size(), prefix) == 0;
}

/// Largest "nice" increment ({1,2,2.5,5} x 10^k) giving about `target` ticks.
double nice_step(double range, int target) {
    const double raw = range / static_cast<double>(target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step = 10.0;
    if (norm <= 1.0)
        step = 1.0;
    else if (norm <= 2.0)
        step = 2.0;
    else if (norm <= 2.5)
        step = 2.5;
    else if (norm <= 5.0)
        step = 5.0;
    return step * mag;
}

constexpr std::array<const char *, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

void append_marker(std::string &out, int shape, double cx, double cy,
                   const char *color, const std::string &data_attrs) {
    const std::string x = fmt2(cx);
    const std::string y = fmt2(cy);
    switch (shape % 6) {
    case 0:
        out += "<circle cx=\"" + x + "\" cy=\"" + y + "\" r=\"3.5\" fill=\"" +
               color + "\"" + data_attrs + "/>\n";
        break;
    case 1:
        out += "<rect x=\"" + fmt2(cx - 3.2) + "\" y=\"" + fmt2(cy - 3.2) +
               "\" width=\"6.4\" height=\"6.4\" fill=\"" + color + "\"" +
               data_attrs + "/>\n";
        break;
    case 2:
        out += "<path d=\"M " + x + " " + fmt2(cy - 4.4) + " L " +
               fmt2(cx + 4.4) + " " + y + " L " + x + " " + fmt2(cy + 4.4) +
               " L " + fmt2(cx - 4.4) + " " + y + " Z\" fill=\"" + color +
               "\"" + data_attrs + "/>\n";
        break;
    case 3:
        out += "<path d=\"M " + x + " " + fmt2(cy - 4.2) + " L " +
               fmt2(cx + 4.0) + " " + fmt2(cy + 3.2) + " L " + fmt2(cx - 4.0) +
               " " + fmt2(cy + 3.2) + " Z\" fill=\"" + color + "\"" +
               data_attrs + "/>\n";
        break;
    case 4:
        out += "<path d=\"M " + x + " " + fmt2(cy + 4.2) + " L " +
               fmt2(cx + 4.0) + " " + fmt2(cy - 3.2) + " L " + fmt2(cx - 4.0) +
               " " + fmt2(cy - 3.2) + " Z\" fill=\"" + color + "\"" +
               data_attrs + "/>\n";
        break;
    default:
        out += "<path d=\"M " + fmt2(cx - 4.0) + " " + y + " L " +
               fmt2(cx + 4.0) + " " + y + " M " + x + " " + fmt2(cy - 4.0) +
               " L " + x + " " + fmt2(cy + 4.0) + "\" stroke=\"" + color +
               "\" stroke-width=\"1.8\" fill=\"none\"" + data_attrs + "/>\n";
        break;
    }
}

} // namespace

void emit_csv(const SweepResult &result, const std::string &path) {
    const std::size_t rows = result.grid.size();
    for (const auto &col : result.columns)
        if (col.values.size() != rows)
            throw ConfigError("column '" + col.name +
                              "' length does not match the grid");

    std::ofstream ofs(path, std::ios::binary);
    if (!ofs)
        throw IoError("cannot open '" + path + "' for writing");

    ofs << first_column_name(result.variable);
    for (const auto &col : result.columns)
        ofs << ',' << col.name;
    ofs << '\n';
    for (std::size_t j = 0; j < rows; ++j) {
        ofs << fmt17(result.grid[j]);
        for (const auto &col : result.columns)
            ofs << ',' << fmt17(col.values[j]);
        ofs << '\n';
    }
    ofs.flush();
    if (!ofs)
        throw IoError("write failed for '" + path + "'");
}

std::vector<PlotSeries> build_plot_series(const SweepResult &result,
                                          const std::string &label_suffix) {
    std::vector<PlotSeries> series;
    const bool ee_mode =
        std::count(result.outputs.begin(), result.outputs.end(), "ee") > 0;

    if (ee_mode) {
        for (const auto &col : result.columns) {
            if (!starts_with(col.name, "ee_") || ends_with(col.name, "_stderr"))
                continue;
            PlotSeries s;
            s.label = source_label(col.source) + label_suffix;
            s.x = result.grid;
            s.y = col.values;
            if (const SweepColumn *err = find_column(result, col.name + "_stderr"))
                s.y_err = err->values;
            series.push_back(std::move(s));
        }
        return series;
    }

    std::vector<std::string> sources;
    for (const auto &col : result.columns) {
        if (col.source != "mc_noma" && col.source != "mc_oma" &&
            col.source != "lower" && col.source != "upper")
            continue;
        if (std::count(sources.begin(), sources.end(), col.source) == 0)
            sources.push_back(col.source);
    }

    for (const auto &src : sources) {
        PlotSeries s;
        s.label = source_label(src) + label_suffix;
        s.x = result.grid;
        if (const SweepColumn *se = find_column(result, "se_" + src + "_bps_hz")) {
            s.y = se->values;
            if (const SweepColumn *err =
                    find_column(result, "se_" + src + "_bps_hz_stderr"))
                s.y_err = err->values;
        } else {
            const SweepColumn *r1 = find_column(result, src + "_r1_bps_hz");
            const SweepColumn *r2 = find_column(result, src + "_r2_bps_hz");
            if (!r1 || !r2)
                continue;
            s.y.resize(result.grid.size());
            for (std::size_t j = 0; j < s.y.size(); ++j)
                s.y[j] = r1->values[j] + r2->values[j];
            const SweepColumn *e1 = find_column(result, src + "_r1_bps_hz_stderr");
            const SweepColumn *e2 = find_column(result, src + "_r2_bps_hz_stderr");
            if (e1 && e2) {
                s.y_err.resize(s.y.size());
                // the two per-receiver estimates come from the same trials, so
                // the quadrature sum is only an error-bar heuristic, not a CI
                for (std::size_t j = 0; j < s.y.size(); ++j)
                    s.y_err[j] = std::sqrt(e1->values[j] * e1->values[j] +
                                           e2->values[j] * e2->values[j]);
            }
        }
        series.push_back(std::move(s));
    }
    return series;
}

void emit_plot(const std::vector<PlotSeries> &series, const PlotSpec &spec,
               const std::string &path) {
    if (series.empty())
        throw ConfigError("nothing to plot: no drawable series were assembled");
    for (const auto &s : series) {
        if (s.x.size() != s.y.size() ||
            (!s.y_err.empty() && s.y_err.size() != s.y.size()))
            throw ConfigError("series '" + s.label +
                              "' has mismatched column lengths");
        if (s.x.size() < 2)
            throw ConfigError("series '" + s.label +
                              "' needs at least two grid points to plot");
    }

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto &s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double err = s.y_err.empty() ? 0.0 : s.y_err[i];
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) ||
                !std::isfinite(err))
                throw ConfigError("series '" + s.label +
                                  "' contains a non-finite value");
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i] - err);
            ymax = std::max(ymax, s.y[i] + err);
        }
    if (xmax - xmin <= 0.0) {
        xmin -= std::max(1.0, std::fabs(xmin)) * 0.5;
        xmax += std::max(1.0, std::fabs(xmax)) * 0.5;
    }
    if (ymax - ymin <= 0.0) {
        ymin -= std::max(1.0, std::fabs(ymin)) * 0.5;
        ymax += std::max(1.0, std::fabs(ymax)) * 0.5;
    }

    const double xstep = nice_step(xmax - xmin, 6);
    const double ystep = nice_step(ymax - ymin, 6);
    const double axis_xlo = std::floor(xmin / xstep) * xstep;
    const double axis_xhi = std::ceil(xmax / xstep) * xstep;
    const double axis_ylo = std::floor(ymin / ystep) * ystep;
    const double axis_yhi = std::ceil(ymax / ystep) * ystep;

    constexpr double kWidth = 960.0, kHeight = 600.0;
    constexpr double kLeft = 70.0, kRight = 230.0, kTop = 40.0, kBottom = 60.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) {
        return kLeft + (x - axis_xlo) / (axis_xhi - axis_xlo) * plot_w;
    };
    auto py = [&](double y) {
        return kTop + plot_h - (y - axis_ylo) / (axis_yhi - axis_ylo) * plot_h;
    };

    std::string out;
    out.reserve(1 << 16);
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" "
           "height=\"600\" viewBox=\"0 0 960 600\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"960\" height=\"600\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + fmt2(kLeft + plot_w / 2.0) +
           "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">" +
           xml_escape(spec.title) + "</text>\n";

    const long nx = std::lround((axis_xhi - axis_xlo) / xstep);
    const long ny = std::lround((axis_yhi - axis_ylo) / ystep);
    for (long i = 0; i <= nx; ++i) {
        const double v = axis_xlo + static_cast<double>(i) * xstep;
        const std::string gx = fmt2(px(v));
        out += "<line x1=\"" + gx + "\" y1=\"" + fmt2(kTop) + "\" x2=\"" + gx +
               "\" y2=\"" + fmt2(kTop + plot_h) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + gx + "\" y=\"" + fmt2(kTop + plot_h + 18.0) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + fmtg(v) +
               "</text>\n";
    }
    for (long i = 0; i <= ny; ++i) {
        const double v = axis_ylo + static_cast<double>(i) * ystep;
        const std::string gy = fmt2(py(v));
        out += "<line x1=\"" + fmt2(kLeft) + "\" y1=\"" + gy + "\" x2=\"" +
               fmt2(kLeft + plot_w) + "\" y2=\"" + gy +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + fmt2(kLeft - 6.0) + "\" y=\"" + fmt2(py(v) + 4.0) +
               "\" font-size=\"12\" text-anchor=\"end\">" + fmtg(v) +
               "</text>\n";
    }
    out += "<rect x=\"" + fmt2(kLeft) + "\" y=\"" + fmt2(kTop) + "\" width=\"" +
           fmt2(plot_w) + "\" height=\"" + fmt2(plot_h) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt2(kLeft + plot_w / 2.0) + "\" y=\"" +
           fmt2(kHeight - 16.0) + "\" font-size=\"13\" text-anchor=\"middle\">" +
           xml_escape(spec.x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + fmt2(kTop + plot_h / 2.0) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           fmt2(kTop + plot_h / 2.0) + ")\">" + xml_escape(spec.y_label) +
           "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto &s = series[si];
        const char *color = kPalette[si % kPalette.size()];
        std::string dash;
        if (starts_with(s.label, "lower bound"))
            dash = " stroke-dasharray=\"7 4\"";
        else if (starts_with(s.label, "upper bound"))
            dash = " stroke-dasharray=\"2 3\"";

        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\"" + dash + " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i)
                out += ' ';
            out += fmt2(px(s.x[i])) + "," + fmt2(py(s.y[i]));
        }
        out += "\"/>\n";

        if (!s.y_err.empty())
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (s.y_err[i] <= 0.0)
                    continue;
                const std::string cx = fmt2(px(s.x[i]));
                const std::string y_hi = fmt2(py(s.y[i] + s.y_err[i]));
                const std::string y_lo = fmt2(py(s.y[i] - s.y_err[i]));
                out += "<path d=\"M " + cx + " " + y_lo + " L " + cx + " " +
                       y_hi + " M " + fmt2(px(s.x[i]) - 3.0) + " " + y_lo +
                       " L " + fmt2(px(s.x[i]) + 3.0) + " " + y_lo + " M " +
                       fmt2(px(s.x[i]) - 3.0) + " " + y_hi + " L " +
                       fmt2(px(s.x[i]) + 3.0) + " " + y_hi + "\" stroke=\"";
                out += color;
                out += "\" stroke-width=\"1\" fill=\"none\"/>\n";
            }

        for (std::size_t i = 0; i < s.x.size(); ++i) {
            std::string attrs = " data-x=\"" + fmt17(s.x[i]) + "\" data-y=\"" +
                                fmt17(s.y[i]) + "\"";
            if (!s.y_err.empty())
                attrs += " data-stderr=\"" + fmt17(s.y_err[i]) + "\"";
            append_marker(out, static_cast<int>(si), px(s.x[i]), py(s.y[i]),
                          color, attrs);
        }
    }

    const double legend_x = kLeft + plot_w + 12.0;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char *color = kPalette[si % kPalette.size()];
        const double ly = kTop + 14.0 + static_cast<double>(si) * 18.0;
        std::string dash;
        if (starts_with(series[si].label, "lower bound"))
            dash = " stroke-dasharray=\"7 4\"";
        else if (starts_with(series[si].label, "upper bound"))
            dash = " stroke-dasharray=\"2 3\"";
        out += "<line x1=\"" + fmt2(legend_x) + "\" y1=\"" + fmt2(ly) +
               "\" x2=\"" + fmt2(legend_x + 26.0) + "\" y2=\"" + fmt2(ly) +
               "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\"" + dash + "/>\n";
        append_marker(out, static_cast<int>(si), legend_x + 13.0, ly, color, "");
        out += "<text x=\"" + fmt2(legend_x + 32.0) + "\" y=\"" + fmt2(ly + 4.0) +
               "\" font-size=\"12\">" + xml_escape(series[si].label) +
               "</text>\n";
    }
    out += "</svg>\n";

    std::ofstream ofs(path, std::ios::binary);
    if (!ofs)
        throw IoError("cannot open '" + path + "' for writing");
    ofs << out;
    ofs.flush();
    if (!ofs)
        throw IoError("write failed for '" + path + "'");
}

namespace {

struct SubSweep {
    std::string file_stem;
    std::string label_suffix;
    ScenarioConfig cfg;
};

std::vector<double> linear_grid(double lo, double hi, double step) {
    std::vector<double> grid;
    const long n = std::lround((hi - lo) / step);
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i)
        grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

} // namespace

void reproduce_figure(const std::string &name, const ScenarioConfig &base,
                      const McSettings &mc, const std::string &out_dir,
                      bool want_csv, bool want_plot) {
    mc.validate();
    base.validate();

    SweepSpec spec;
    PlotSpec plot;
    std::vector<SubSweep> subs;
    if (name == "fig2") {
        spec = SweepSpec{"snr_db", linear_grid(0.0, 30.0, 5.0),
                         {"mc_noma", "lower", "upper"}};
        plot = PlotSpec{"Sum spectral efficiency vs transmit SNR",
                        "transmit SNR (dB)", "spectral efficiency (bits/s/Hz)"};
        for (int m : {16, 36, 64, 100})
            subs.push_back({"fig2_m" + std::to_string(m),
                            ", M=" + std::to_string(m),
                            scenario_at(base, "m_total", m)});
    } else if (name == "fig3") {
        spec = SweepSpec{"m_total", linear_grid(10.0, 100.0, 10.0),
                         {"mc_noma", "mc_oma"}};
        plot = PlotSpec{"Sum spectral efficiency vs surface size",
                        "reflecting elements", "spectral efficiency (bits/s/Hz)"};
        for (int snr : {10, 20})
            subs.push_back({"fig3_snr" + std::to_string(snr),
                            ", " + std::to_string(snr) + " dB",
                            scenario_at(base, "snr_db", snr)});
    } else if (name == "fig4") {
        spec = SweepSpec{"snr_db", linear_grid(20.0, 40.0, 2.0),
                         {"mc_noma", "mc_oma", "ee"}};
        plot = PlotSpec{"Energy efficiency vs transmit SNR", "transmit SNR (dB)",
                        "energy efficiency (bits/Joule/Hz)"};
        for (int m : {50, 100, 150, 200})
            subs.push_back({"fig4_m" + std::to_string(m),
                            ", M=" + std::to_string(m),
                            scenario_at(base, "m_total", m)});
    } else {
        throw ConfigError("unknown figure '" + name +
                          "' (expected fig2, fig3 or fig4)");
    }

    const std::filesystem::path dir =
        out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory '" + dir.string() +
                      "': " + ec.message());

    std::vector<PlotSeries> all_series;
    for (std::size_t k = 0; k < subs.size(); ++k) {
        McSettings sub_mc = mc;
        sub_mc.stream_offset =
            mc.stream_offset + static_cast<std::uint64_t>(k) *
                                   static_cast<std::uint64_t>(spec.grid.size()) *
                                   static_cast<std::uint64_t>(mc.n_trials);
        const SweepResult result = run_sweep(subs[k].cfg, spec, sub_mc);
        if (want_csv)
            emit_csv(result, (dir / (subs[k].file_stem + ".csv")).string());
        if (want_plot) {
            auto series = build_plot_series(result, subs[k].label_suffix);
            all_series.insert(all_series.end(),
                              std::make_move_iterator(series.begin()),
                              std::make_move_iterator(series.end()));
        }
    }
    if (want_plot)
        emit_plot(all_series, plot, (dir / (name + ".svg")).string());
}

} // namespace risnoma
