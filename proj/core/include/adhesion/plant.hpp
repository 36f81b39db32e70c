#pragma once

#include "adhesion/adhesion_curve.hpp"
#include "adhesion/profile_schedule.hpp"
#include "adhesion/rig.hpp"
#include "adhesion/rng.hpp"

namespace adhesion {

/// Full dynamic state of the two-inertia rig. A value type: snapshots can be
/// copied across threads and independent simulations may run concurrently.
struct SimState {
    double t = 0.0;        ///< s
    double omega_mW = 0.0; ///< wheel motor speed, rad/s
    double omega_mR = 0.0; ///< roller motor speed, rad/s
    double Te_W = 0.0;     ///< actual wheel motor torque, N*m
    double Te_R = 0.0;     ///< actual roller motor torque, N*m
    double v_slip = 0.0;   ///< m/s, derived
    double mu_actual = 0.0;///< dimensionless, derived
};

/// Advances the plant by one fixed step of classical fourth-order
/// Runge-Kutta. Torque commands pass through first-order actuator lags; each
/// inertia integrates (torque - adhesion load - viscous friction)/J. The
/// adhesion curve is sampled per integration stage, so time-varying schedules
/// stay smooth inside a step. `T_ext_W` injects an extra wheel-shaft load
/// (used by observer tests), positive opposing rotation.
///
/// Requires dt > 0 and dt <= tau_drive/5; throws NonFiniteState if any
/// component stops being finite after the step.
SimState step(const SimState& state, double Te_W_cmd, double Te_R_cmd,
              const AdhesionCurveParams& params, const RigParameters& rig, double dt,
              double T_ext_W = 0.0);

/// Same integrator with the curve evaluated from a schedule at stage times.
SimState step(const SimState& state, double Te_W_cmd, double Te_R_cmd,
              const ProfileSchedule& schedule, const RigParameters& rig, double dt,
              double T_ext_W = 0.0);

/// Speed measurement model: optional quantization to the encoder LSB and
/// zero-mean uniform noise, both off by default. Applied at the controller
/// rate so the measurement sequence does not depend on the plant step size.
struct SpeedSensor {
    bool quantize = false;
    int pulses_per_rev = 500;
    double noise_amp = 0.0; ///< rad/s, half-width of the uniform noise

    double measure(double omega, Rng& rng) const;
};

/// Stiff PI speed regulator emulating the commercial roller drive in speed
/// mode. Gains follow from the requested loop bandwidth and the roller
/// inertia (critically damped design).
class RollerSpeedLoop {
public:
    RollerSpeedLoop(double bandwidth_rad_s, const RigParameters& rig)
        : kp_(2.0 * bandwidth_rad_s * rig.J_R),
          ki_(bandwidth_rad_s * bandwidth_rad_s * rig.J_R) {}

    double update(double omega_ref, double omega_meas, double dt) {
        const double e = omega_ref - omega_meas;
        integrator_ += ki_ * e * dt;
        return kp_ * e + integrator_;
    }

    void preload(double torque) { integrator_ = torque; }
    void reset() { integrator_ = 0.0; }

private:
    double kp_;
    double ki_;
    double integrator_ = 0.0;
};

} // namespace adhesion
