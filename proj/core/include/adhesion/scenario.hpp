#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adhesion/plant.hpp"
#include "adhesion/profile_schedule.hpp"
#include "adhesion/rig.hpp"
#include "adhesion/strategies/flc.hpp"
#include "adhesion/strategies/perturb_observe.hpp"
#include "adhesion/strategies/pso.hpp"
#include "adhesion/strategies/steepest_gradient.hpp"
#include "adhesion/strategy.hpp"

namespace adhesion {

enum class EventAction { TorqueOn, WetOn, TorqueOff, End };

std::string to_string(EventAction a);
EventAction event_action_from_string(const std::string& s);

/// Complete description of one run: the test-sequence timeline (roller spin,
/// torque ramp, optional water-on and torque-off), the adhesion condition
/// schedule, the strategy under test with its tuning, and the solver rates.
struct Scenario {
    std::string name = "scenario";

    double roller_speed_rpm = 60.0; ///< roller wheel speed setpoint
    double torque_final = 10.0;     ///< N*m
    double torque_gradient = 5.0;   ///< N*m/s

    struct Event {
        double time = 0.0;
        EventAction action = EventAction::End;
    };
    std::vector<Event> events;

    ProfileSchedule schedule; ///< conditions before any wet_on event
    std::optional<AdhesionCurveParams> wet_profile;
    double wet_transition_time = 3.0; ///< s, blend constant used when wet_on fires

    StrategyKind strategy = StrategyKind::ConstantSlip;
    double constant_v_slip = 1.0;
    PoConfig po;
    SgConfig sg;
    FlcConfig flc;
    PsoConfig pso;

    std::uint64_t seed = 1;
    double dt_plant = 1e-4; ///< s
    double dt_ctrl = 1e-3;  ///< s, must be an integer multiple of dt_plant

    RigParameters rig;
    double slip_activation = 0.3; ///< m/s
    double slip_kp = 8.0;         ///< N*m*s/m
    double slip_ki = 60.0;        ///< N*m/m
    double v_max = 2.0;           ///< slip command clamp, m/s

    SpeedSensor sensor;
    double roller_bandwidth = 20.0; ///< rad/s

    /// Throws ValidationError listing every violated invariant.
    void validate() const;

    std::optional<double> event_time(EventAction a) const;
    double end_time() const;

    /// Driver torque request at time t (ramp between torque_on and torque_off).
    double driver_torque(double t) const;

    /// Condition schedule with the wet_on event folded in as a final blended
    /// segment.
    ProfileSchedule effective_schedule() const;

    /// Curve parameters that are active once each condition has settled, and
    /// the matching condition windows (used for metrics). Filled by the
    /// harness with the observed activation time.
    int plant_substeps() const;
};

/// Built-in scenario families. All of them run the standard sequence: roller
/// at 60 rpm, 10 N*m ramp at 5 N*m/s, and a normal force set so the adhesion
/// limit is crossed well below the torque target.
namespace presets {

/// P1 -> P2 -> P3 instantaneous switches at 7 s and 11 s (simulation replica).
Scenario sim_replica(StrategyKind strategy);

/// Dry start, water on at 35 s with a gradual transition, torque off at 65 s
/// (experiment replica).
Scenario experiment(StrategyKind strategy);

/// Single calibrated profile held for the whole run.
Scenario single_profile(StrategyKind strategy, const std::string& profile_label);

} // namespace presets

} // namespace adhesion
