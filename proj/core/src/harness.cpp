#include "adhesion/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "adhesion/errors.hpp"
#include "adhesion/estimation.hpp"
#include "adhesion/plant.hpp"
#include "adhesion/slip_control.hpp"
#include "adhesion/strategies/constant_slip.hpp"

namespace adhesion {

namespace {

std::unique_ptr<MatStrategy> make_strategy(const Scenario& s) {
    switch (s.strategy) {
    case StrategyKind::ConstantSlip:
        return std::make_unique<ConstantSlipStrategy>(s.constant_v_slip);
    case StrategyKind::PerturbObserve: return std::make_unique<PerturbObserveStrategy>(s.po);
    case StrategyKind::SteepestGradient:
        return std::make_unique<SteepestGradientStrategy>(s.sg);
    case StrategyKind::Flc: return std::make_unique<FlcStrategy>(s.flc);
    case StrategyKind::Pso: return std::make_unique<PsoStrategy>(s.pso);
    }
    throw ValidationError("unhandled strategy kind");
}

constexpr double kPi = 3.14159265358979323846;

} // namespace

RunResult run_scenario(const Scenario& scenario) {
    scenario.validate();

    const RigParameters& rig = scenario.rig;
    const ProfileSchedule schedule = scenario.effective_schedule();
    const double dt_c = scenario.dt_ctrl;
    const double dt_p = scenario.dt_plant;
    const int substeps = scenario.plant_substeps();
    const double t_end = scenario.end_time();

    // roller wheel rpm -> motor-frame speed reference
    const double omega_mR_ref = scenario.roller_speed_rpm * (2.0 * kPi / 60.0) * rig.Rg_R;
    const double v_R0 = rig.roller_surface_speed(omega_mR_ref);

    SimState state;
    state.omega_mR = omega_mR_ref;
    state.omega_mW = v_R0 * rig.Rg_W / rig.r_W; // synchronous start, zero slip
    state.Te_R = rig.beta_R * omega_mR_ref;     // torque holding the roller at speed
    state.Te_W = 0.0;
    state.v_slip = slip_velocity(state.omega_mW, state.omega_mR, rig);
    state.mu_actual = mu(scheduled_params(schedule, 0.0), state.v_slip);

    RollerSpeedLoop roller(scenario.roller_bandwidth, rig);
    roller.preload(state.Te_R);

    SlipDetector detector(scenario.slip_activation);
    SlipPiController pi(scenario.slip_kp, scenario.slip_ki);
    ObserverState observer;
    auto strategy = make_strategy(scenario);
    Rng sensor_rng(scenario.seed);

    Trace trace;
    trace.dt = dt_c;
    const auto t_off = scenario.event_time(EventAction::TorqueOff);
    trace.torque_off_time = t_off ? *t_off : t_end;
    const auto n_ticks = static_cast<long>(std::llround(t_end / dt_c));
    trace.samples.reserve(static_cast<std::size_t>(n_ticks) + 1);

    // perturb-and-observe integrates its acceleration command into a wheel
    // speed reference; kept here so every strategy produces a slip command
    double po_v_W_ref = 0.0;
    bool limiting = false; // slip controller was binding on the previous tick

    for (long k = 0; k <= n_ticks; ++k) {
        const double t = static_cast<double>(k) * dt_c;

        const double omega_mW_meas = scenario.sensor.measure(state.omega_mW, sensor_rng);
        const double omega_mR_meas = scenario.sensor.measure(state.omega_mR, sensor_rng);
        const double v_slip_meas = slip_velocity(omega_mW_meas, omega_mR_meas, rig);
        const double v_R_meas = rig.roller_surface_speed(omega_mR_meas);
        const double Te_hat = state.Te_W;

        const double T_l_hat = estimate_load_torque(observer, Te_hat, omega_mW_meas, rig, dt_c);
        const double mu_hat_now = estimate_mu(T_l_hat, rig);

        const double driver = scenario.driver_torque(t);

        const bool was_active = detector.active();
        const bool active = detector.update(v_slip_meas, dt_c, limiting);

        StrategyInputs inputs;
        inputs.Te_hat = Te_hat;
        inputs.v_slip = v_slip_meas;
        inputs.v_R = v_R_meas;
        inputs.mu_hat = mu_hat_now;
        inputs.t = t;
        inputs.dt_ctrl = dt_c;

        double v_ref = 0.0;
        if (active) {
            if (!was_active) {
                if (!trace.has_activation()) trace.activation_time = t;
                strategy->on_activation(inputs);
                // perturb-and-observe climbs from zero commanded slip
                po_v_W_ref = v_R_meas;
            }
            StrategyDecision decision = strategy->update(inputs);
            if (decision.v_slip_ref) {
                v_ref = std::clamp(*decision.v_slip_ref, 0.0, scenario.v_max);
            } else if (decision.wheel_accel_ref) {
                po_v_W_ref += *decision.wheel_accel_ref * dt_c;
                v_ref = std::clamp(po_v_W_ref - v_R_meas, 0.0, scenario.v_max);
                po_v_W_ref = v_ref + v_R_meas; // anti-windup against the clamp
            }
        } else {
            strategy->sync(inputs);
        }

        double Te_W_cmd;
        if (active) {
            const double T_pi = pi.update(v_ref, v_slip_meas, driver, dt_c);
            Te_W_cmd = arbitrate_torque(driver, T_pi, true);
            limiting = Te_W_cmd < driver - 1e-9;
        } else {
            pi.hold(driver);
            Te_W_cmd = arbitrate_torque(driver, 0.0, false);
            limiting = false;
        }
        const double Te_R_cmd = roller.update(omega_mR_ref, omega_mR_meas, dt_c);

        TraceSample sample;
        sample.t = t;
        sample.Te_cmd = driver;
        sample.Te_limited = Te_W_cmd;
        sample.Te_hat = Te_hat;
        sample.omega_W = state.omega_mW;
        sample.omega_R = state.omega_mR;
        sample.v_slip_ref = active ? v_ref : 0.0;
        sample.v_slip = state.v_slip;
        sample.mu_hat = mu_hat_now;
        sample.mu_actual = state.mu_actual;
        sample.slip_active = active;
        trace.samples.push_back(sample);

        if (k == n_ticks) break;
        for (int i = 0; i < substeps; ++i)
            state = step(state, Te_W_cmd, Te_R_cmd, schedule, rig, dt_p);
    }

    RunResult result;
    result.windows = condition_windows(scenario, trace.activation_time);
    result.metrics = compute_metrics(trace, result.windows);
    result.metrics.activation_time = trace.activation_time;
    result.trace = std::move(trace);
    return result;
}

std::vector<ConditionWindow> condition_windows(const Scenario& scenario, double activation_time) {
    const double t_begin =
        activation_time == activation_time ? activation_time : 0.0; // NaN-safe
    const auto t_off = scenario.event_time(EventAction::TorqueOff);
    const double t_last = t_off ? *t_off : scenario.end_time();
    const auto t_wet = scenario.event_time(EventAction::WetOn);
    const ProfileSchedule schedule = scenario.effective_schedule();

    std::vector<ConditionWindow> windows;
    if (t_wet && scenario.wet_profile) {
        const AdhesionCurveParams dry_params = scheduled_params(schedule, *t_wet - 1e-9);
        windows.push_back({"dry", t_begin, *t_wet, peak_oracle(dry_params, scenario.v_max)});
        windows.push_back(
            {"wet", *t_wet, t_last, peak_oracle(*scenario.wet_profile, scenario.v_max)});
    } else {
        const AdhesionCurveParams end_params = scheduled_params(schedule, t_last);
        windows.push_back(
            {end_params.label, t_begin, t_last, peak_oracle(end_params, scenario.v_max)});
    }
    return windows;
}

namespace {

std::pair<std::size_t, std::size_t> sample_range(const Trace& trace, double t0, double t1) {
    const auto& s = trace.samples;
    auto lo = std::lower_bound(s.begin(), s.end(), t0,
                               [](const TraceSample& a, double t) { return a.t < t; });
    auto hi = std::upper_bound(s.begin(), s.end(), t1,
                               [](double t, const TraceSample& a) { return t < a.t; });
    return {static_cast<std::size_t>(lo - s.begin()), static_cast<std::size_t>(hi - s.begin())};
}

} // namespace

RunMetrics compute_metrics(const Trace& trace, const std::vector<ConditionWindow>& windows,
                           const MetricParams& params) {
    RunMetrics metrics;
    metrics.activation_time = trace.activation_time;
    const auto& s = trace.samples;

    for (const auto& w : windows) {
        ConditionMetrics cm;
        cm.condition = w.name;
        cm.mu_peak_oracle = w.oracle.mu;

        const auto [i0, i1] = sample_range(trace, w.t_begin, w.t_end);
        if (i0 >= i1) {
            metrics.conditions.push_back(cm);
            continue;
        }

        // search time: first instant from which mu_hat stays inside the
        // band around the oracle peak for at least hold_duration
        const double band = params.band_fraction * w.oracle.mu;
        double run_start = -1.0;
        for (std::size_t i = i0; i < i1; ++i) {
            const bool in_band = std::abs(s[i].mu_hat - w.oracle.mu) <= band;
            if (in_band) {
                if (run_start < 0.0) run_start = s[i].t;
                if (s[i].t - run_start >= params.hold_duration) {
                    cm.converged = true;
                    cm.search_time = run_start - w.t_begin;
                    break;
                }
            } else {
                run_start = -1.0;
            }
        }

        // steady window: last steady_window seconds of the condition
        const double t_sw = std::max(w.t_begin, w.t_end - params.steady_window);
        const auto [j0, j1] = sample_range(trace, t_sw, w.t_end);
        if (j0 < j1) {
            const std::size_t n = j1 - j0;
            double mean_t = 0.0, mean_te = 0.0, mean_mu = 0.0;
            for (std::size_t i = j0; i < j1; ++i) {
                mean_t += s[i].t;
                mean_te += s[i].Te_hat;
                mean_mu += s[i].mu_hat;
            }
            mean_t /= static_cast<double>(n);
            mean_te /= static_cast<double>(n);
            mean_mu /= static_cast<double>(n);

            double sxx = 0.0, sxy = 0.0;
            for (std::size_t i = j0; i < j1; ++i) {
                const double dx = s[i].t - mean_t;
                sxx += dx * dx;
                sxy += dx * (s[i].Te_hat - mean_te);
            }
            const double slope = sxx > 0.0 ? sxy / sxx : 0.0;

            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (std::size_t i = j0; i < j1; ++i) {
                const double resid = s[i].Te_hat - (mean_te + slope * (s[i].t - mean_t));
                if (first) {
                    lo = hi = resid;
                    first = false;
                } else {
                    lo = std::min(lo, resid);
                    hi = std::max(hi, resid);
                }
            }
            cm.torque_ripple = hi - lo;
            cm.mu_steady = mean_mu;
            cm.peak_utilization = w.oracle.mu > 0.0 ? mean_mu / w.oracle.mu : 0.0;
        }
        metrics.conditions.push_back(cm);
    }

    // slip tracking error while the loop is active, torque-off tail excluded
    double acc = 0.0;
    std::size_t n_err = 0;
    for (const auto& sample : s) {
        if (!sample.slip_active || sample.t > trace.torque_off_time) continue;
        const double e = sample.v_slip_ref - sample.v_slip;
        acc += e * e;
        ++n_err;
    }
    metrics.slip_rms_error = n_err > 0 ? std::sqrt(acc / static_cast<double>(n_err)) : 0.0;
    return metrics;
}

const ConditionMetrics* RunMetrics::condition(const std::string& name) const {
    for (const auto& c : conditions)
        if (c.condition == name) return &c;
    return nullptr;
}

double RunMetrics::total_search_time() const {
    double total = 0.0;
    for (const auto& c : conditions) {
        if (!c.converged) return std::numeric_limits<double>::infinity();
        total += c.search_time;
    }
    return total;
}

double RunMetrics::mean_ripple() const {
    if (conditions.empty()) return 0.0;
    double total = 0.0;
    for (const auto& c : conditions) total += c.torque_ripple;
    return total / static_cast<double>(conditions.size());
}

const ComparisonRow* ComparisonTable::row(StrategyKind kind) const {
    for (const auto& r : rows)
        if (r.strategy == kind) return &r;
    return nullptr;
}

double ComparisonTable::search_time_ratio(StrategyKind a, StrategyKind b) const {
    const auto* ra = row(a);
    const auto* rb = row(b);
    if (!ra || !rb) return std::numeric_limits<double>::quiet_NaN();
    return ra->metrics.total_search_time() / rb->metrics.total_search_time();
}

double ComparisonTable::ripple_ratio(StrategyKind a, StrategyKind b) const {
    const auto* ra = row(a);
    const auto* rb = row(b);
    if (!ra || !rb) return std::numeric_limits<double>::quiet_NaN();
    return ra->metrics.mean_ripple() / rb->metrics.mean_ripple();
}

std::string ComparisonTable::to_text() const {
    std::ostringstream os;
    os << "strategy";
    if (!rows.empty())
        for (const auto& c : rows.front().metrics.conditions)
            os << "  search_" << c.condition << "[s]  ripple_" << c.condition << "[Nm]  mu_"
               << c.condition;
    os << "  slip_rms[m/s]\n";
    for (const auto& r : rows) {
        os << to_string(r.strategy);
        for (const auto& c : r.metrics.conditions) {
            os << "  ";
            if (c.converged)
                os << c.search_time;
            else
                os << "n/a";
            os << "  " << c.torque_ripple << "  " << c.mu_steady;
        }
        os << "  " << r.metrics.slip_rms_error << "\n";
    }
    os << "\npairwise ratios (row/column):\n";
    os << "search-time:\n";
    for (const auto& a : rows) {
        os << "  " << to_string(a.strategy) << ":";
        for (const auto& b : rows)
            os << " " << search_time_ratio(a.strategy, b.strategy);
        os << "\n";
    }
    os << "ripple:\n";
    for (const auto& a : rows) {
        os << "  " << to_string(a.strategy) << ":";
        for (const auto& b : rows)
            os << " " << ripple_ratio(a.strategy, b.strategy);
        os << "\n";
    }
    return os.str();
}

ComparisonResult compare_strategies_with_traces(const std::vector<Scenario>& scenarios) {
    if (scenarios.empty()) throw ValidationError("compare_strategies needs at least one scenario");

    // the runs must differ only in the strategy under test
    const Scenario& ref = scenarios.front();
    for (const auto& s : scenarios) {
        const bool same =
            s.seed == ref.seed && s.events.size() == ref.events.size() &&
            s.rig.F_N == ref.rig.F_N && s.dt_plant == ref.dt_plant && s.dt_ctrl == ref.dt_ctrl &&
            s.schedule.segments.size() == ref.schedule.segments.size();
        if (!same)
            throw ValidationError("compare_strategies scenarios must differ only in strategy");
    }

    ComparisonResult result;
    for (const auto& s : scenarios) {
        RunResult run = run_scenario(s);
        result.table.rows.push_back({s.strategy, s.name, run.metrics});
        result.runs.push_back(std::move(run));
    }
    return result;
}

ComparisonTable compare_strategies(const std::vector<Scenario>& scenarios) {
    return compare_strategies_with_traces(scenarios).table;
}

} // namespace adhesion
