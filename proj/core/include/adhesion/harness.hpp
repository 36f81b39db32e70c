#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "adhesion/adhesion_curve.hpp"
#include "adhesion/scenario.hpp"

namespace adhesion {

/// One controller-rate sample of every signal the reference figures plot:
/// the torque chain (driver command, limited command, drive estimate), both
/// motor speeds, slip command vs. actual, and estimated vs. actual adhesion.
struct TraceSample {
    double t = 0.0;
    double Te_cmd = 0.0;     ///< driver torque request, N*m
    double Te_limited = 0.0; ///< arbitrated command sent to the drive, N*m
    double Te_hat = 0.0;     ///< drive torque estimate, N*m
    double omega_W = 0.0;    ///< wheel motor speed, rad/s
    double omega_R = 0.0;    ///< roller motor speed, rad/s
    double v_slip_ref = 0.0; ///< slip command, m/s (0 while the loop is idle)
    double v_slip = 0.0;     ///< actual slip, m/s
    double mu_hat = 0.0;
    double mu_actual = 0.0;
    bool slip_active = false; ///< not emitted to CSV
};

struct Trace {
    std::vector<TraceSample> samples;
    double dt = 1e-3;
    double activation_time = std::numeric_limits<double>::quiet_NaN();
    double torque_off_time = std::numeric_limits<double>::quiet_NaN();

    bool has_activation() const { return activation_time == activation_time; }
};

/// Metric window for one contact condition.
struct ConditionWindow {
    std::string name;    ///< "dry" / "wet" / profile label
    double t_begin = 0.0;
    double t_end = 0.0;
    CurvePeak oracle;    ///< ground-truth peak of the settled condition
};

struct ConditionMetrics {
    std::string condition;
    bool converged = false;
    double search_time = std::numeric_limits<double>::quiet_NaN(); ///< s from window start
    double torque_ripple = 0.0; ///< N*m, peak-to-peak of detrended estimate
    double mu_steady = 0.0;
    double peak_utilization = 0.0;
    double mu_peak_oracle = 0.0;
};

struct RunMetrics {
    std::vector<ConditionMetrics> conditions;
    double slip_rms_error = 0.0;
    double activation_time = std::numeric_limits<double>::quiet_NaN();

    const ConditionMetrics* condition(const std::string& name) const;
    /// Sum of per-condition search times; +inf when any condition never
    /// converged (used for the strategy comparison ratios).
    double total_search_time() const;
    /// Mean of per-condition torque ripples.
    double mean_ripple() const;
};

struct MetricParams {
    double band_fraction = 0.05;  ///< adhesion band around the oracle peak
    double hold_duration = 1.0;   ///< s the band must be held
    double steady_window = 5.0;   ///< s at the end of each condition
};

/// Search time, ripple and steady adhesion per condition window plus the
/// global slip-tracking error. Pure function of the recorded trace.
RunMetrics compute_metrics(const Trace& trace, const std::vector<ConditionWindow>& windows,
                           const MetricParams& params = {});

struct RunResult {
    Trace trace;
    RunMetrics metrics;
    std::vector<ConditionWindow> windows;
};

/// Executes the full control loop (plant + estimation + slip control +
/// strategy) for one scenario and computes its metrics. Deterministic:
/// (scenario, seed) fixes the trace byte for byte. Throws NonFiniteState
/// with the offending timestamp if the plant diverges.
RunResult run_scenario(const Scenario& scenario);

/// Condition windows implied by a scenario's events (wet_on splits the run
/// into a dry and a wet condition); `activation_time` anchors the first
/// window.
std::vector<ConditionWindow> condition_windows(const Scenario& scenario, double activation_time);

struct ComparisonRow {
    StrategyKind strategy = StrategyKind::ConstantSlip;
    std::string scenario_name;
    RunMetrics metrics;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;

    const ComparisonRow* row(StrategyKind kind) const;
    /// total_search_time(a) / total_search_time(b)
    double search_time_ratio(StrategyKind a, StrategyKind b) const;
    /// mean_ripple(a) / mean_ripple(b)
    double ripple_ratio(StrategyKind a, StrategyKind b) const;
    std::string to_text() const;
};

/// Runs every scenario (which must differ only in the strategy under test)
/// and tabulates the metrics with the pairwise ratios.
ComparisonTable compare_strategies(const std::vector<Scenario>& scenarios);

/// The traces of the runs behind compare_strategies, keyed like its rows.
struct ComparisonResult {
    ComparisonTable table;
    std::vector<RunResult> runs;
};
ComparisonResult compare_strategies_with_traces(const std::vector<Scenario>& scenarios);

} // namespace adhesion
