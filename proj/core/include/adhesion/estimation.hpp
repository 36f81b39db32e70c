#pragma once

#include "adhesion/rig.hpp"

namespace adhesion {

/// First-order low-pass discretized by backward difference, stable at any dt.
class LowPass {
public:
    explicit LowPass(double tau = 0.05) : tau_(tau) {}

    double update(double u, double dt) {
        if (!primed_) {
            y_ = u;
            primed_ = true;
            return y_;
        }
        y_ = (tau_ * y_ + dt * u) / (tau_ + dt);
        return y_;
    }

    double value() const { return y_; }
    bool primed() const { return primed_; }
    void reset() { y_ = 0.0; primed_ = false; }
    void set_tau(double tau) { tau_ = tau; }

private:
    double tau_;
    double y_ = 0.0;
    bool primed_ = false;
};

/// State of the load-torque observer and the adhesion-slope estimator.
/// Owned by exactly one control loop.
struct ObserverState {
    double tau_obs = 0.020; ///< filtered-derivative constant, s
    double tau_v = 0.050;   ///< slip-signal LPF constant, s
    double tau_mu = 0.050;  ///< adhesion-estimate LPF constant, s

    // filtered-derivative path of the wheel motor speed
    double deriv = 0.0;
    double last_omega = 0.0;
    bool omega_primed = false;

    // gradient path
    LowPass mu_filter{0.050};
    LowPass v_filter{0.050};
    double last_mu_f = 0.0;
    double last_v_f = 0.0;
    bool grad_primed = false;
    double last_K = 0.0;

    void apply_taus() {
        mu_filter.set_tau(tau_mu);
        v_filter.set_tau(tau_v);
    }
};

/// Division guard for the discrete slope: increments below this hold the
/// previous slope estimate.
inline constexpr double kGradientEpsilonV = 1e-4; // m/s

/// Load torque seen by the wheel motor, reconstructed from the drive's torque
/// estimate, the measured speed, and the rig's friction/inertia. The speed
/// derivative runs through J*s/(tau_obs*s + 1) discretized by backward
/// difference, avoiding a pure differentiator.
double estimate_load_torque(ObserverState& obs, double Te_hat, double omega_mW,
                            const RigParameters& rig, double dt);

/// Adhesion coefficient implied by a wheel-motor load torque.
double estimate_mu(double T_l_hat, const RigParameters& rig);

/// Slope of the adhesion-slip curve from one controller period's increments
/// of the low-pass-filtered estimate and slip signals. Holds the previous
/// value while |delta v| is under the division guard.
double discrete_gradient(ObserverState& obs, double mu_hat, double v_slip, double dt);

} // namespace adhesion
