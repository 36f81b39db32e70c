#pragma once

#include <string>
#include <vector>

#include "adhesion/harness.hpp"

namespace adhesion {

/// Four stacked time-series panels (torque chain, speeds, slip command vs.
/// actual, estimated vs. actual adhesion). Throws EmptyInput on an empty
/// trace, IoError on write failure.
void render_time_stack_svg(const Trace& trace, const std::string& path);

/// Estimated-adhesion vs. slip trajectory overlaid on the analytic curves of
/// the given profiles, each sampled at 500 points.
void render_trajectory_svg(const Trace& trace, const std::vector<AdhesionCurveParams>& curves,
                           double v_max, const std::string& path);

/// Per-strategy bar charts of search time and torque ripple for every
/// condition. Bars carry a data-value attribute and heights proportional to
/// the metric, so the chart can be parsed back for verification.
void render_comparison_bars_svg(const ComparisonTable& table, const std::string& path);

/// String-returning variants used by the writers and tests.
std::string time_stack_svg(const Trace& trace);
std::string trajectory_svg(const Trace& trace, const std::vector<AdhesionCurveParams>& curves,
                           double v_max);
std::string comparison_bars_svg(const ComparisonTable& table);

} // namespace adhesion
