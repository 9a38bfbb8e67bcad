#pragma once

// Static SVG line plots and point files built from a training run directory.

#include <filesystem>
#include <string>
#include <vector>

namespace pinnfcg::app {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct HorizontalLine {
    std::string label;
    double y{0.0};
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x{false};
    bool log_y{false};
    std::vector<HorizontalLine> guides;
};

/// On log axes non-positive points are skipped and break the line.
/// Output depends only on the arguments.
std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series);

struct ReportSummary {
    std::vector<std::filesystem::path> written;
};

/// Reads fits, predictions and loss histories from `run_dir` and writes
/// paris_curves.svg, paris_curve_points.csv, loss_history.svg and
/// crack_size.svg into `out_dir`. Throws ParseError listing what is missing.
ReportSummary build_report(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir);

}  // namespace pinnfcg::app
