#pragma once

#include "risnoma/sweep.hpp"

#include <string>
#include <vector>

namespace risnoma {

/// Writes header plus one row per grid point, first column the sweep
/// variable, every number at full round-trip precision (%.17g). Identical
/// inputs produce byte-identical files. Throws IoError on any write failure.
void emit_csv(const SweepResult &result, const std::string &path);

/// One plotted curve; y_err empty means no error bars.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_err;
};

/// Collapses a sweep table to plottable curves: one series per requested rate
/// source, carrying the summed rate (or the energy-efficiency column when ee
/// was requested) with error bars on Monte-Carlo sources. label_suffix is
/// appended to each series label, e.g. ", M=64".
std::vector<PlotSeries> build_plot_series(const SweepResult &result,
                                          const std::string &label_suffix);

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Renders a self-contained SVG: fixed palette, per-series markers, legend,
/// error bars where provided, and the exact data values embedded on each
/// marker as data-x / data-y (and data-stderr) attributes at CSV precision.
/// Throws ConfigError when there is nothing to plot or a series has fewer
/// than two points, IoError on write failure.
void emit_plot(const std::vector<PlotSeries> &series, const PlotSpec &spec,
               const std::string &path);

/// Runs one of the canned figure experiments (fig2, fig3, fig4) and writes
/// its CSV files and/or its SVG into out_dir. Grids are documented in the
/// README; unknown names raise ConfigError.
void reproduce_figure(const std::string &name, const ScenarioConfig &base,
                      const McSettings &mc, const std::string &out_dir,
                      bool want_csv, bool want_plot);

} // namespace risnoma
