#include "adhesion/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_file(const std::string& text, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    if (!os) throw IoError("write failed for '" + path + "'");
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

struct Panel {
    double x, y, w, h;
    Range xr, yr;
    double px(double v) const { return x + (v - xr.lo) / (xr.hi - xr.lo) * w; }
    double py(double v) const { return y + h - (v - yr.lo) / (yr.hi - yr.lo) * h; }
};

void panel_frame(std::string& out, const Panel& p, const std::string& title) {
    out += "<rect x=\"" + num(p.x) + "\" y=\"" + num(p.y) + "\" width=\"" + num(p.w) +
           "\" height=\"" + num(p.h) + "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(p.x + 4) + "\" y=\"" + num(p.y + 14) +
           "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#222\">" + title + "</text>\n";
    out += "<text x=\"" + num(p.x - 4) + "\" y=\"" + num(p.y + p.h) +
           "\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\" fill=\"#666\">" +
           num(p.yr.lo) + "</text>\n";
    out += "<text x=\"" + num(p.x - 4) + "\" y=\"" + num(p.y + 10) +
           "\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\" fill=\"#666\">" +
           num(p.yr.hi) + "</text>\n";
}

using Getter = std::function<double(const TraceSample&)>;

void polyline(std::string& out, const Panel& p, const Trace& trace, const Getter& get,
              const char* color, std::size_t max_points = 2000) {
    const auto n = trace.samples.size();
    const std::size_t stride = std::max<std::size_t>(1, n / max_points);
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& s = trace.samples[i];
        out += num(p.px(s.t)) + "," + num(p.py(get(s))) + " ";
    }
    const auto& last = trace.samples.back();
    out += num(p.px(last.t)) + "," + num(p.py(get(last)));
    out += "\"/>\n";
}

void legend(std::string& out, const Panel& p, std::vector<std::pair<const char*, const char*>> items) {
    double x = p.x + p.w - 12;
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        out += "<text x=\"" + num(x) + "\" y=\"" + num(p.y + 14) +
               "\" font-size=\"10\" text-anchor=\"end\" font-family=\"sans-serif\" fill=\"";
        out += it->second;
        out += "\">";
        out += it->first;
        out += "</text>\n";
        x -= 90;
    }
}

std::string svg_open(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" +
           num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

} // namespace

std::string time_stack_svg(const Trace& trace) {
    if (trace.samples.empty()) throw EmptyInput("time-stack plot: trace is empty");

    const double width = 920, panel_h = 150, gap = 26, left = 64, right = 16, top = 18;
    const double panel_w = width - left - right;
    const double height = top + 4 * (panel_h + gap) + 10;
    std::string out = svg_open(width, height);

    struct Spec {
        const char* title;
        std::vector<std::pair<Getter, const char*>> series;
        std::vector<std::pair<const char*, const char*>> names;
    };
    const std::vector<Spec> specs = {
        {"wheel torque [Nm]",
         {{[](const TraceSample& s) { return s.Te_cmd; }, "#888888"},
          {[](const TraceSample& s) { return s.Te_limited; }, "#1f77b4"},
          {[](const TraceSample& s) { return s.Te_hat; }, "#d62728"}},
         {{"command", "#888888"}, {"limited", "#1f77b4"}, {"estimated", "#d62728"}}},
        {"motor speeds [rad/s]",
         {{[](const TraceSample& s) { return s.omega_W; }, "#1f77b4"},
          {[](const TraceSample& s) { return s.omega_R; }, "#2ca02c"}},
         {{"wheel", "#1f77b4"}, {"roller", "#2ca02c"}}},
        {"slip velocity [m/s]",
         {{[](const TraceSample& s) { return s.v_slip_ref; }, "#888888"},
          {[](const TraceSample& s) { return s.v_slip; }, "#1f77b4"}},
         {{"command", "#888888"}, {"actual", "#1f77b4"}}},
        {"adhesion coefficient",
         {{[](const TraceSample& s) { return s.mu_hat; }, "#d62728"},
          {[](const TraceSample& s) { return s.mu_actual; }, "#1f77b4"}},
         {{"estimated", "#d62728"}, {"actual", "#1f77b4"}}},
    };

    double y = top;
    for (const auto& spec : specs) {
        Panel p{left, y, panel_w, panel_h, {}, {}};
        for (const auto& s : trace.samples) {
            p.xr.include(s.t);
            for (const auto& [get, color] : spec.series) p.yr.include(get(s));
        }
        p.xr.pad();
        p.yr.pad();
        panel_frame(out, p, spec.title);
        for (const auto& [get, color] : spec.series) polyline(out, p, trace, get, color);
        legend(out, p, spec.names);
        y += panel_h + gap;
    }
    out += "<text x=\"" + num(width / 2) + "\" y=\"" + num(height - 4) +
           "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "fill=\"#222\">time [s]</text>\n";
    out += "</svg>\n";
    return out;
}

std::string trajectory_svg(const Trace& trace, const std::vector<AdhesionCurveParams>& curves,
                           double v_max) {
    if (trace.samples.empty()) throw EmptyInput("trajectory plot: trace is empty");

    const double width = 640, height = 480, left = 60, bottom = 40, top = 20, right = 20;
    Panel p{left, top, width - left - right, height - top - bottom, {}, {}};
    p.xr.include(0.0);
    p.xr.include(v_max);
    p.yr.include(0.0);
    for (const auto& c : curves) p.yr.include(peak_oracle(c, v_max).mu);
    for (const auto& s : trace.samples) p.yr.include(s.mu_hat);
    p.xr.pad();
    p.yr.pad();

    std::string out = svg_open(width, height);
    panel_frame(out, p, "adhesion vs slip velocity");

    const char* palette[] = {"#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    int ci = 0;
    for (const auto& c : curves) {
        out += "<polyline fill=\"none\" stroke=\"";
        out += palette[ci % 5];
        out += "\" stroke-width=\"1.5\" points=\"";
        constexpr int kCurveSamples = 500;
        for (int i = 0; i < kCurveSamples; ++i) {
            const double v = v_max * static_cast<double>(i) / (kCurveSamples - 1);
            out += num(p.px(v)) + "," + num(p.py(mu(c, v))) + " ";
        }
        out.pop_back();
        out += "\"/>\n";
        out += "<text x=\"" + num(p.x + p.w - 8) + "\" y=\"" + num(p.y + 16 + 13 * ci) +
               "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\" fill=\"";
        out += palette[ci % 5];
        out += "\">";
        out += c.label;
        out += "</text>\n";
        ++ci;
    }

    polyline(
        out, p, trace, [](const TraceSample& s) { return s.mu_hat; }, "#1f77b4", 4000);
    out += "<text x=\"" + num(width / 2) + "\" y=\"" + num(height - 8) +
           "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "fill=\"#222\">slip velocity [m/s]</text>\n";
    out += "</svg>\n";
    return out;
}

std::string comparison_bars_svg(const ComparisonTable& table) {
    if (table.rows.empty()) throw EmptyInput("comparison plot: table is empty");

    struct Chart {
        std::string title;
        std::vector<std::pair<std::string, double>> bars; // label, value
    };
    std::vector<Chart> charts;
    const auto& conditions = table.rows.front().metrics.conditions;
    for (std::size_t c = 0; c < conditions.size(); ++c) {
        Chart st{"search time (" + conditions[c].condition + ") [s]", {}};
        Chart rp{"torque ripple (" + conditions[c].condition + ") [Nm]", {}};
        for (const auto& r : table.rows) {
            const auto& cm = r.metrics.conditions[c];
            st.bars.push_back({to_string(r.strategy), cm.converged ? cm.search_time : 0.0});
            rp.bars.push_back({to_string(r.strategy), cm.torque_ripple});
        }
        charts.push_back(std::move(st));
        charts.push_back(std::move(rp));
    }

    const double chart_w = 420, chart_h = 230, margin = 24;
    const int per_row = 2;
    const int n_rows = static_cast<int>((charts.size() + per_row - 1) / per_row);
    const double width = per_row * (chart_w + margin) + margin;
    const double height = n_rows * (chart_h + margin) + margin;
    std::string out = svg_open(width, height);

    for (std::size_t i = 0; i < charts.size(); ++i) {
        const auto& chart = charts[i];
        const double ox = margin + static_cast<double>(i % per_row) * (chart_w + margin);
        const double oy = margin + static_cast<double>(i / per_row) * (chart_h + margin);
        const double plot_h = chart_h - 52;
        const double plot_y = oy + 28;
        double vmax = 0.0;
        for (const auto& [label, v] : chart.bars) vmax = std::max(vmax, v);
        if (vmax <= 0.0) vmax = 1.0;

        out += "<text x=\"" + num(ox) + "\" y=\"" + num(oy + 14) +
               "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#222\">" + chart.title +
               "</text>\n";
        out += "<line x1=\"" + num(ox) + "\" y1=\"" + num(plot_y + plot_h) + "\" x2=\"" +
               num(ox + chart_w) + "\" y2=\"" + num(plot_y + plot_h) +
               "\" stroke=\"#444\" stroke-width=\"1\"/>\n";

        const double slot = chart_w / static_cast<double>(chart.bars.size());
        const double bar_w = slot * 0.6;
        for (std::size_t b = 0; b < chart.bars.size(); ++b) {
            const auto& [label, v] = chart.bars[b];
            const double h = v / vmax * plot_h;
            const double bx = ox + slot * static_cast<double>(b) + (slot - bar_w) / 2.0;
            out += "<rect class=\"bar\" data-chart=\"" + std::to_string(i) + "\" data-value=\"" +
                   num(v) + "\" data-scale=\"" + num(vmax / plot_h) + "\" x=\"" + num(bx) +
                   "\" y=\"" + num(plot_y + plot_h - h) + "\" width=\"" + num(bar_w) +
                   "\" height=\"" + num(h) + "\" fill=\"#1f77b4\"/>\n";
            out += "<text x=\"" + num(bx + bar_w / 2) + "\" y=\"" + num(plot_y + plot_h + 14) +
                   "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "fill=\"#222\">" +
                   label + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

void render_time_stack_svg(const Trace& trace, const std::string& path) {
    write_file(time_stack_svg(trace), path);
}

void render_trajectory_svg(const Trace& trace, const std::vector<AdhesionCurveParams>& curves,
                           double v_max, const std::string& path) {
    write_file(trajectory_svg(trace, curves, v_max), path);
}

void render_comparison_bars_svg(const ComparisonTable& table, const std::string& path) {
    write_file(comparison_bars_svg(table), path);
}

} // namespace adhesion
