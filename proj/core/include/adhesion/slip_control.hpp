#pragma once

#include <algorithm>

namespace adhesion {

/// Slip-event detector with deactivation hysteresis: arms as soon as |v_slip|
/// exceeds the activation threshold, disarms only after the slip has stayed
/// below half the threshold for `release_hold` seconds. While the slip
/// controller is still limiting the driver request (`inhibit_release`), the
/// release timer is held: letting go there would immediately re-slip the
/// wheel, since low slip under an active limiter means the loop is doing its
/// job near the adhesion peak, not that the slip event is over.
class SlipDetector {
public:
    explicit SlipDetector(double v_slip_activation = 0.3, double release_hold = 0.2)
        : threshold_(v_slip_activation), release_hold_(release_hold) {}

    bool update(double v_slip, double dt, bool inhibit_release = false) {
        const double mag = std::abs(v_slip);
        if (!active_) {
            if (mag > threshold_) {
                active_ = true;
                below_timer_ = 0.0;
            }
            return active_;
        }
        if (mag < 0.5 * threshold_ && !inhibit_release) {
            below_timer_ += dt;
            if (below_timer_ >= release_hold_) {
                active_ = false;
                below_timer_ = 0.0;
            }
        } else {
            below_timer_ = 0.0;
        }
        return active_;
    }

    bool active() const { return active_; }
    double threshold() const { return threshold_; }
    void reset() {
        active_ = false;
        below_timer_ = 0.0;
    }

private:
    double threshold_;
    double release_hold_;
    bool active_ = false;
    double below_timer_ = 0.0;
};

/// PI slip-velocity controller with a dynamic output ceiling and
/// conditional-integration anti-windup. Output and integrator both live in
/// [0, ceiling]; the ceiling tracks the driver torque command, so the slip
/// loop can only ever reduce the requested torque.
class SlipPiController {
public:
    SlipPiController(double kp = 8.0, double ki = 120.0) : kp_(kp), ki_(ki) {}

    /// One controller period while the loop is active.
    double update(double v_slip_ref, double v_slip, double ceiling, double dt) {
        ceiling = std::max(0.0, ceiling);
        const double e = v_slip_ref - v_slip;
        const double unsat = kp_ * e + integrator_;
        const bool push_high = unsat > ceiling && e > 0.0;
        const bool push_low = unsat < 0.0 && e < 0.0;
        if (!push_high && !push_low) integrator_ += ki_ * e * dt;
        integrator_ = std::clamp(integrator_, 0.0, ceiling);
        last_output_ = std::clamp(kp_ * e + integrator_, 0.0, ceiling);
        return last_output_;
    }

    /// While the loop is inactive the integrator is frozen; only the ceiling
    /// clamp is maintained.
    void hold(double ceiling) { integrator_ = std::clamp(integrator_, 0.0, std::max(0.0, ceiling)); }

    double integrator() const { return integrator_; }
    double output() const { return last_output_; }
    void reset() {
        integrator_ = 0.0;
        last_output_ = 0.0;
    }

    double kp() const { return kp_; }
    double ki() const { return ki_; }

private:
    double kp_;
    double ki_;
    double integrator_ = 0.0;
    double last_output_ = 0.0;
};

/// Min arbitration between the driver torque request and the slip
/// controller's torque: pass-through while no slip is detected.
inline double arbitrate_torque(double T_driver, double T_slip_ctrl, bool active) {
    return active ? std::min(T_driver, T_slip_ctrl) : T_driver;
}

} // namespace adhesion
