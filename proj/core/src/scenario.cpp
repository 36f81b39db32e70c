#include "adhesion/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "adhesion/errors.hpp"

namespace adhesion {

std::string to_string(EventAction a) {
    switch (a) {
    case EventAction::TorqueOn: return "torque_on";
    case EventAction::WetOn: return "wet_on";
    case EventAction::TorqueOff: return "torque_off";
    case EventAction::End: return "end";
    }
    return "?";
}

EventAction event_action_from_string(const std::string& s) {
    if (s == "torque_on") return EventAction::TorqueOn;
    if (s == "wet_on") return EventAction::WetOn;
    if (s == "torque_off") return EventAction::TorqueOff;
    if (s == "end") return EventAction::End;
    throw ValidationError("unknown event action '" + s +
                          "' (expected torque_on|wet_on|torque_off|end)");
}

void Scenario::validate() const {
    std::vector<std::string> problems;
    auto check = [&](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            problems.emplace_back(e.what());
        }
    };

    check([&] { rig.validate(); });
    check([&] { schedule.validate(); });
    check([&] { po.validate(); });
    check([&] { sg.validate(); });
    check([&] { flc.validate(); });
    check([&] { pso.validate(); });

    if (events.empty() || events.back().action != EventAction::End)
        problems.emplace_back("event list must be present and finish with an 'end' event");
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].time <= events[i - 1].time) {
            problems.emplace_back("event times must be strictly increasing");
            break;
        }
    }
    if (!events.empty() && events.front().time < 0.0)
        problems.emplace_back("event times must be >= 0");
    if (event_time(EventAction::WetOn) && !wet_profile)
        problems.emplace_back("wet_on event requires a wet profile");

    if (roller_speed_rpm < 0.0) problems.emplace_back("roller_speed_rpm must be >= 0");
    if (torque_final < 0.0) problems.emplace_back("torque_final must be >= 0");
    if (torque_gradient <= 0.0) problems.emplace_back("torque_gradient must be > 0");
    if (constant_v_slip <= 0.0) problems.emplace_back("constant slip setpoint must be > 0");
    if (wet_transition_time < 0.0) problems.emplace_back("wet_transition_time must be >= 0");

    if (dt_plant <= 0.0) problems.emplace_back("dt_plant must be > 0");
    if (dt_ctrl <= 0.0) problems.emplace_back("dt_ctrl must be > 0");
    if (dt_plant > 0.0 && dt_ctrl > 0.0) {
        const double ratio = dt_ctrl / dt_plant;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 || ratio < 1.0 - 1e-9)
            problems.emplace_back("dt_ctrl must be an integer multiple of dt_plant");
    }
    if (slip_activation <= 0.0) problems.emplace_back("slip_activation must be > 0");
    if (slip_kp < 0.0 || slip_ki < 0.0) problems.emplace_back("slip PI gains must be >= 0");
    if (v_max <= 0.0) problems.emplace_back("v_max must be > 0");
    if (roller_bandwidth <= 0.0) problems.emplace_back("roller_bandwidth must be > 0");
    if (sensor.noise_amp < 0.0) problems.emplace_back("sensor noise amplitude must be >= 0");
    if (sensor.pulses_per_rev <= 0) problems.emplace_back("encoder pulses_per_rev must be > 0");

    if (!problems.empty()) {
        std::string msg = "scenario '" + name + "' is invalid:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }
}

std::optional<double> Scenario::event_time(EventAction a) const {
    for (const auto& e : events)
        if (e.action == a) return e.time;
    return std::nullopt;
}

double Scenario::end_time() const {
    const auto t = event_time(EventAction::End);
    return t ? *t : 0.0;
}

double Scenario::driver_torque(double t) const {
    const auto t_on = event_time(EventAction::TorqueOn);
    if (!t_on || t < *t_on) return 0.0;
    const auto t_off = event_time(EventAction::TorqueOff);
    if (t_off && t >= *t_off) return 0.0;
    return std::min(torque_final, torque_gradient * (t - *t_on));
}

ProfileSchedule Scenario::effective_schedule() const {
    ProfileSchedule s = schedule;
    const auto t_wet = event_time(EventAction::WetOn);
    if (t_wet && wet_profile) {
        s.segments.push_back({*t_wet, *wet_profile});
        s.transition_time = wet_transition_time;
    }
    return s;
}

int Scenario::plant_substeps() const {
    return static_cast<int>(std::llround(dt_ctrl / dt_plant));
}

namespace presets {

namespace {

/// Normal force used by the replica scenarios: with the P1 peak of 0.45 the
/// wheel-motor adhesion limit lands at 5 N*m, matching where the reference
/// simulation loses adhesion under the 10 N*m ramp.
constexpr double kReplicaNormalForce = 1000.0 / 3.0;

Scenario base(StrategyKind strategy) {
    Scenario s;
    s.strategy = strategy;
    s.rig = RigParameters{};
    s.rig.F_N = kReplicaNormalForce;
    s.seed = 1;
    s.sensor.noise_amp = 0.03; // rad/s, keeps estimator paths realistically busy

    s.constant_v_slip = 1.0;

    s.po.delta_a = 0.06;
    s.po.period = 0.3;
    s.po.t_threshold = 0.1;
    s.po.a_max = 2.0;
    s.po.v_max = s.v_max;
    s.po.tau_filter = 0.1;

    s.sg.alpha = 0.0055;
    s.sg.tau_v = 0.1;
    s.sg.tau_mu = 0.1;
    s.sg.v_max = s.v_max;
    s.sg.eval_every = 200;
    s.sg.k_clamp = 0.8;
    s.sg.slew_rate = 0.03;

    s.flc.x1_T = 0.005;
    s.flc.x2_T = 0.01;
    s.flc.x1_v = 0.002;
    s.flc.x2_v = 0.004;
    s.flc.y1 = 0.004;
    s.flc.y2 = 0.008;
    s.flc.tau_filter = 0.02;
    s.flc.eval_every = 50;
    s.flc.v_max = s.v_max;

    s.pso.np = 4;
    s.pso.w = 0.5;
    s.pso.c1 = 0.6;
    s.pso.c2 = 1.0;
    s.pso.v_min = 0.05;
    s.pso.v_max_bound = 0.5;
    s.pso.reset_dT = 0.6;
    s.pso.reset_dv = 0.3;
    s.pso.rng_seed = 7;
    s.pso.start_delay = 0.6;
    s.pso.settle_window = 0.12;
    s.pso.probe_window = 0.15;
    s.pso.probe_dv = 0.05;
    s.pso.iteration_cap = 4;
    s.pso.convergence_spread = 0.04;
    s.pso.tau_filter = 0.025;
    return s;
}

} // namespace

Scenario sim_replica(StrategyKind strategy) {
    Scenario s = base(strategy);
    s.name = "sim-replica-" + to_string(strategy);
    s.schedule.segments = {{0.0, profiles::p1()}, {7.0, profiles::p2()}, {11.0, profiles::p3()}};
    s.schedule.transition_time = 0.0;
    s.events = {{1.0, EventAction::TorqueOn}, {18.0, EventAction::TorqueOff},
                {20.0, EventAction::End}};
    return s;
}

Scenario experiment(StrategyKind strategy) {
    Scenario s = base(strategy);
    s.name = "experiment-" + to_string(strategy);
    s.schedule.segments = {{0.0, profiles::dry()}};
    s.schedule.transition_time = 0.0;
    s.wet_profile = profiles::wet();
    s.wet_transition_time = 1.0;
    s.pso.reset_dT = 5.0;
    s.po.delta_a = 0.17;
    s.po.t_threshold = 0.35;
    s.events = {{5.0, EventAction::TorqueOn},
                {35.0, EventAction::WetOn},
                {65.0, EventAction::TorqueOff},
                {70.0, EventAction::End}};
    return s;
}

Scenario single_profile(StrategyKind strategy, const std::string& profile_label) {
    Scenario s = base(strategy);
    s.name = "single-" + profile_label + "-" + to_string(strategy);
    s.schedule.segments = {{0.0, profiles::by_label(profile_label)}};
    s.schedule.transition_time = 0.0;
    s.events = {{5.0, EventAction::TorqueOn}, {30.0, EventAction::TorqueOff},
                {32.0, EventAction::End}};
    return s;
}

} // namespace presets
} // namespace adhesion
