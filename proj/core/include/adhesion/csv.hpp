#pragma once

#include <string>

#include "adhesion/harness.hpp"

namespace adhesion {

/// Writes the trace as CSV: fixed header
/// t,Te_cmd,Te_limited,Te_hat,omega_W,omega_R,v_slip_ref,v_slip,mu_hat,mu_actual
/// with '.' decimal point, ',' separator, '\n' newlines and 6 significant
/// digits, rows in time order. Throws EmptyInput on an empty trace and
/// IoError when the file cannot be written.
void emit_trace_csv(const Trace& trace, const std::string& path);

/// Same serialization into a string (used by the writers and the tests).
std::string trace_to_csv(const Trace& trace);

/// Parses a trace back from CSV text (testing aid; ignores the active flag).
Trace parse_trace_csv(const std::string& text);

/// Comparison summary as CSV, one row per strategy.
std::string comparison_to_csv(const ComparisonTable& table);
void emit_comparison_csv(const ComparisonTable& table, const std::string& path);

} // namespace adhesion
