#include "adhesion/estimation.hpp"

#include <cmath>

#include "adhesion/errors.hpp"

namespace adhesion {

double estimate_load_torque(ObserverState& obs, double Te_hat, double omega_mW,
                            const RigParameters& rig, double dt) {
    if (dt <= 0.0) throw ValidationError("estimate_load_torque requires dt > 0");
    if (!obs.omega_primed) {
        obs.last_omega = omega_mW;
        obs.omega_primed = true;
    }
    // y_k = (tau*y_{k-1} + (w_k - w_{k-1})) / (tau + dt)  ==  s/(tau s + 1) on omega
    obs.deriv = (obs.tau_obs * obs.deriv + (omega_mW - obs.last_omega)) / (obs.tau_obs + dt);
    obs.last_omega = omega_mW;
    return Te_hat - rig.beta_W * omega_mW - rig.J_W * obs.deriv;
}

double estimate_mu(double T_l_hat, const RigParameters& rig) {
    return T_l_hat * rig.Rg_W / (rig.F_N * rig.r_W);
}

double discrete_gradient(ObserverState& obs, double mu_hat, double v_slip, double dt) {
    if (dt <= 0.0) throw ValidationError("discrete_gradient requires dt > 0");
    const double mu_f = obs.mu_filter.update(mu_hat, dt);
    const double v_f = obs.v_filter.update(v_slip, dt);
    if (!obs.grad_primed) {
        obs.last_mu_f = mu_f;
        obs.last_v_f = v_f;
        obs.grad_primed = true;
        return obs.last_K;
    }
    const double d_mu = mu_f - obs.last_mu_f;
    const double d_v = v_f - obs.last_v_f;
    obs.last_mu_f = mu_f;
    obs.last_v_f = v_f;
    if (std::abs(d_v) >= kGradientEpsilonV) obs.last_K = d_mu / d_v;
    return obs.last_K;
}

} // namespace adhesion
