#include "adhesion/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {

constexpr char kHeader[] = "t,Te_cmd,Te_limited,Te_hat,omega_W,omega_R,v_slip_ref,v_slip,mu_hat,mu_actual";

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out += buf;
}

void write_file(const std::string& text, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) throw IoError("write failed for '" + path + "'");
}

} // namespace

std::string trace_to_csv(const Trace& trace) {
    if (trace.samples.empty()) throw EmptyInput("trace is empty");
    std::string out;
    out.reserve(trace.samples.size() * 96 + 128);
    out += kHeader;
    out += '\n';
    for (const auto& s : trace.samples) {
        append_number(out, s.t);
        out += ',';
        append_number(out, s.Te_cmd);
        out += ',';
        append_number(out, s.Te_limited);
        out += ',';
        append_number(out, s.Te_hat);
        out += ',';
        append_number(out, s.omega_W);
        out += ',';
        append_number(out, s.omega_R);
        out += ',';
        append_number(out, s.v_slip_ref);
        out += ',';
        append_number(out, s.v_slip);
        out += ',';
        append_number(out, s.mu_hat);
        out += ',';
        append_number(out, s.mu_actual);
        out += '\n';
    }
    return out;
}

void emit_trace_csv(const Trace& trace, const std::string& path) {
    write_file(trace_to_csv(trace), path);
}

Trace parse_trace_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw EmptyInput("csv text is empty");
    if (line != kHeader) throw IoError("unexpected csv header: " + line);
    Trace trace;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        TraceSample s;
        double* fields[10] = {&s.t,       &s.Te_cmd,     &s.Te_limited, &s.Te_hat, &s.omega_W,
                              &s.omega_R, &s.v_slip_ref, &s.v_slip,     &s.mu_hat, &s.mu_actual};
        std::size_t pos = 0;
        for (int f = 0; f < 10; ++f) {
            const std::size_t next = line.find(',', pos);
            const std::string tok = line.substr(pos, next == std::string::npos ? next : next - pos);
            *fields[f] = std::stod(tok);
            if (next == std::string::npos && f != 9) throw IoError("short csv row: " + line);
            pos = next + 1;
        }
        trace.samples.push_back(s);
    }
    if (trace.samples.size() >= 2) trace.dt = trace.samples[1].t - trace.samples[0].t;
    return trace;
}

std::string comparison_to_csv(const ComparisonTable& table) {
    if (table.rows.empty()) throw EmptyInput("comparison table is empty");
    std::string out = "strategy";
    for (const auto& c : table.rows.front().metrics.conditions) {
        out += ",search_time_" + c.condition;
        out += ",torque_ripple_" + c.condition;
        out += ",mu_steady_" + c.condition;
        out += ",peak_utilization_" + c.condition;
    }
    out += ",slip_rms_error\n";
    for (const auto& r : table.rows) {
        out += to_string(r.strategy);
        for (const auto& c : r.metrics.conditions) {
            out += ',';
            if (c.converged)
                append_number(out, c.search_time);
            else
                out += "n/a";
            out += ',';
            append_number(out, c.torque_ripple);
            out += ',';
            append_number(out, c.mu_steady);
            out += ',';
            append_number(out, c.peak_utilization);
        }
        out += ',';
        append_number(out, r.metrics.slip_rms_error);
        out += '\n';
    }
    return out;
}

void emit_comparison_csv(const ComparisonTable& table, const std::string& path) {
    write_file(comparison_to_csv(table), path);
}

} // namespace adhesion
