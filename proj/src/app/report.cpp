#include "pinnfcg/app/report.hpp"

#include "pinnfcg/app/formats.hpp"
#include "pinnfcg/app/manifest.hpp"
#include "pinnfcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pinnfcg::app {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Axis {
    bool log{false};
    double lo{0.0};
    double hi{1.0};

    double map(double v) const { return log ? std::log10(v) : v; }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis make_axis(bool log, const std::vector<double>& values) {
    Axis a{log, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double v : values) {
        if (a.usable(v)) {
            a.lo = std::min(a.lo, a.map(v));
            a.hi = std::max(a.hi, a.map(v));
        }
    }
    if (!(a.lo <= a.hi)) {
        a.lo = 0.0;
        a.hi = 1.0;
    }
    if (log) {
        a.lo = std::floor(a.lo);
        a.hi = std::ceil(a.hi);
        if (a.hi == a.lo) {
            a.hi += 1.0;
        }
    } else if (a.hi == a.lo) {
        double pad = a.lo == 0.0 ? 1.0 : std::abs(a.lo) * 0.1;
        a.lo -= pad;
        a.hi += pad;
    }
    return a;
}

std::vector<double> ticks(const Axis& a) {
    std::vector<double> out;
    if (a.log) {
        double step = std::max(1.0, std::ceil((a.hi - a.lo) / 8.0));
        for (double t = a.lo; t <= a.hi + 1e-9; t += step) {
            out.push_back(t);
        }
        return out;
    }
    double raw = (a.hi - a.lo) / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
        step = f * mag;
        if (step >= raw) {
            break;
        }
    }
    for (double t = std::ceil(a.lo / step) * step; t <= a.hi + step * 1e-9; t += step) {
        out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return out;
}

std::string tick_label(const Axis& a, double t) { return a.log ? "1e" + num(t, "%.0f") : num(t, "%g"); }

}  // namespace

std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
    std::vector<double> xs, ys;
    for (const auto& s : series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    for (const auto& g : spec.guides) {
        ys.push_back(g.y);
    }
    Axis ax = make_axis(spec.log_x, xs);
    Axis ay = make_axis(spec.log_y, ys);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return kTop + ph - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth, "%.0f") + "\" height=\"" +
           num(kHeight, "%.0f") + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(spec.title) + "</text>\n";

    for (double t : ticks(ax)) {
        double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" + num(kTop + ph) +
               "\" stroke=\"#e0e0e0\"/>\n";
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
               tick_label(ax, t) + "</text>\n";
    }
    for (double t : ticks(ay)) {
        double y = kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph;
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(y) +
               "\" stroke=\"#e0e0e0\"/>\n";
        svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
               tick_label(ay, t) + "</text>\n";
    }
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 18) + "\" text-anchor=\"middle\">" +
           escape(spec.x_label) + "</text>\n";
    svg += "<text transform=\"translate(18," + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
           escape(spec.y_label) + "</text>\n";

    std::size_t legend_row = 0;
    auto legend = [&](const std::string& label, const std::string& color, const char* dash) {
        double y = kTop + 10 + 18.0 * static_cast<double>(legend_row++);
        double x = kLeft + pw + 12;
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 22) + "\" y2=\"" + num(y) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"" + dash + "/>\n";
        svg += "<text x=\"" + num(x + 28) + "\" y=\"" + num(y + 4) + "\">" + escape(label) + "</text>\n";
    };

    for (const auto& g : spec.guides) {
        if (!ay.usable(g.y)) {
            continue;
        }
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(g.y)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
               num(py(g.y)) + "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
        legend(g.label, "black", " stroke-dasharray=\"6 4\"");
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        std::string color = kPalette[s % std::size(kPalette)];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points +
                       "\"/>\n";
                points.clear();
            }
        };
        std::size_t n = std::min(ser.x.size(), ser.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!ax.usable(ser.x[i]) || !ay.usable(ser.y[i])) {
                flush();
                continue;
            }
            if (!points.empty()) {
                points += ' ';
            }
            points += num(px(ser.x[i])) + "," + num(py(ser.y[i]));
        }
        flush();
        legend(ser.label, color, "");
    }
    svg += "</svg>\n";
    return svg;
}

ReportSummary build_report(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    const fs::path fits_path = run_dir / kFitsFile;
    auto predictions = list_with_suffix(run_dir, kPredictionSuffix);
    auto losses = list_with_suffix(run_dir, kLossSuffix);

    std::vector<std::string> missing;
    if (!fs::is_regular_file(fits_path)) {
        missing.push_back(std::string(kFitsFile));
    }
    if (predictions.empty()) {
        missing.push_back("*" + std::string(kPredictionSuffix));
    }
    if (losses.empty()) {
        missing.push_back("*" + std::string(kLossSuffix));
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw ParseError(run_dir.string(), 0, "not a completed training run; missing " + list);
    }
    read_fits(fits_path);

    GeometryConfig geom;
    if (fs::is_regular_file(run_dir / kManifestFile)) {
        geom = read_manifest(run_dir / kManifestFile).config.geometry;
    }

    std::vector<Series> paris, crack;
    std::string points("dataset_id,log10_delta_k,log10_rate\n");
    for (const auto& path : predictions) {
        std::string name = path.filename().string();
        std::string id = name.substr(0, name.size() - kPredictionSuffix.size());
        auto p = read_prediction(path);
        paris.push_back({id, p.delta_k, p.rate});
        crack.push_back({id, p.cycles, p.crack_size});
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.delta_k[i] > 0.0 && p.rate[i] > 0.0) {
                points += id + "," + format_double(std::log10(p.delta_k[i])) + "," +
                          format_double(std::log10(p.rate[i])) + "\n";
            }
        }
    }

    // Terms of the first history in name order; one file per run in combined mode.
    auto history = read_loss_history(losses.front());
    std::string loss_name = losses.front().filename().string();
    loss_name = loss_name.substr(0, loss_name.size() - kLossSuffix.size());
    std::vector<Series> loss_series(6);
    const char* labels[] = {"l_ic", "l_bc", "l_mon_a", "l_mon_k", "l_rss", "total"};
    for (std::size_t k = 0; k < 6; ++k) {
        loss_series[k].label = labels[k];
    }
    for (std::size_t e = 0; e < history.size(); ++e) {
        const auto& b = history[e];
        const double vals[] = {b.l_ic, b.l_bc, b.l_mon_a, b.l_mon_k, b.l_rss, b.total};
        for (std::size_t k = 0; k < 6; ++k) {
            loss_series[k].x.push_back(static_cast<double>(e + 1));
            loss_series[k].y.push_back(vals[k]);
        }
    }

    ReportSummary summary;
    auto emit = [&](const char* file, const std::string& content) {
        write_file_atomic(out_dir / file, content);
        summary.written.push_back(out_dir / file);
    };
    emit("paris_curves.svg",
         render_line_plot({"Paris curves", "stress intensity factor range (MPa m^0.5)", "da/dN (mm/cycle)", true, true, {}},
                          paris));
    emit("paris_curve_points.csv", points);
    emit("loss_history.svg",
         render_line_plot({"Loss history (" + loss_name + ")", "epoch", "loss term", false, true, {}}, loss_series));
    emit("crack_size.svg",
         render_line_plot({"Integrated crack size", "cycles", "crack size (mm)", false, true,
                           {{"W = " + num(geom.gauge_width_mm, "%g") + " mm", geom.gauge_width_mm}}},
                          crack));
    return summary;
}

}  // namespace pinnfcg::app
