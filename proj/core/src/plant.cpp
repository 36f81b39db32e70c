#include "adhesion/plant.hpp"

#include <cmath>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {

struct Derivatives {
    double d_omega_mW, d_omega_mR, d_Te_W, d_Te_R;
};

struct Inputs {
    double Te_W_cmd, Te_R_cmd, T_ext_W;
};

template <typename CurveAt>
Derivatives rhs(double t, double omega_mW, double omega_mR, double Te_W, double Te_R,
                const Inputs& u, const RigParameters& rig, const CurveAt& curve_at) {
    const double v_slip = slip_velocity(omega_mW, omega_mR, rig);
    const double m = mu(curve_at(t), v_slip);
    const auto [load_W, drive_R] = adhesion_torques(m, rig);
    return {
        (Te_W - load_W - rig.beta_W * omega_mW - u.T_ext_W) / rig.J_W,
        (Te_R + drive_R - rig.beta_R * omega_mR) / rig.J_R,
        (u.Te_W_cmd - Te_W) / rig.tau_drive,
        (u.Te_R_cmd - Te_R) / rig.tau_drive,
    };
}

template <typename CurveAt>
SimState rk4_step(const SimState& s, const Inputs& u, const RigParameters& rig, double dt,
                  const CurveAt& curve_at) {
    if (dt <= 0.0) throw ValidationError("plant step requires dt > 0");
    if (dt > rig.tau_drive / 5.0)
        throw ValidationError("plant step requires dt <= tau_drive/5 for stability");

    const auto k1 = rhs(s.t, s.omega_mW, s.omega_mR, s.Te_W, s.Te_R, u, rig, curve_at);
    const double h = dt / 2.0;
    const auto k2 = rhs(s.t + h, s.omega_mW + h * k1.d_omega_mW, s.omega_mR + h * k1.d_omega_mR,
                        s.Te_W + h * k1.d_Te_W, s.Te_R + h * k1.d_Te_R, u, rig, curve_at);
    const auto k3 = rhs(s.t + h, s.omega_mW + h * k2.d_omega_mW, s.omega_mR + h * k2.d_omega_mR,
                        s.Te_W + h * k2.d_Te_W, s.Te_R + h * k2.d_Te_R, u, rig, curve_at);
    const auto k4 = rhs(s.t + dt, s.omega_mW + dt * k3.d_omega_mW, s.omega_mR + dt * k3.d_omega_mR,
                        s.Te_W + dt * k3.d_Te_W, s.Te_R + dt * k3.d_Te_R, u, rig, curve_at);

    SimState n;
    n.t = s.t + dt;
    n.omega_mW =
        s.omega_mW + dt / 6.0 * (k1.d_omega_mW + 2.0 * k2.d_omega_mW + 2.0 * k3.d_omega_mW + k4.d_omega_mW);
    n.omega_mR =
        s.omega_mR + dt / 6.0 * (k1.d_omega_mR + 2.0 * k2.d_omega_mR + 2.0 * k3.d_omega_mR + k4.d_omega_mR);
    n.Te_W = s.Te_W + dt / 6.0 * (k1.d_Te_W + 2.0 * k2.d_Te_W + 2.0 * k3.d_Te_W + k4.d_Te_W);
    n.Te_R = s.Te_R + dt / 6.0 * (k1.d_Te_R + 2.0 * k2.d_Te_R + 2.0 * k3.d_Te_R + k4.d_Te_R);
    n.v_slip = slip_velocity(n.omega_mW, n.omega_mR, rig);
    n.mu_actual = mu(curve_at(n.t), n.v_slip);

    if (!std::isfinite(n.omega_mW) || !std::isfinite(n.omega_mR) || !std::isfinite(n.Te_W) ||
        !std::isfinite(n.Te_R) || !std::isfinite(n.v_slip) || !std::isfinite(n.mu_actual))
        throw NonFiniteState(n.t);
    return n;
}

} // namespace

SimState step(const SimState& state, double Te_W_cmd, double Te_R_cmd,
              const AdhesionCurveParams& params, const RigParameters& rig, double dt,
              double T_ext_W) {
    return rk4_step(state, {Te_W_cmd, Te_R_cmd, T_ext_W}, rig, dt,
                    [&](double) -> const AdhesionCurveParams& { return params; });
}

SimState step(const SimState& state, double Te_W_cmd, double Te_R_cmd,
              const ProfileSchedule& schedule, const RigParameters& rig, double dt,
              double T_ext_W) {
    return rk4_step(state, {Te_W_cmd, Te_R_cmd, T_ext_W}, rig, dt,
                    [&](double t) { return scheduled_params(schedule, t); });
}

double SpeedSensor::measure(double omega, Rng& rng) const {
    double m = omega;
    if (noise_amp > 0.0) m += rng.symmetric(noise_amp);
    if (quantize) {
        const double lsb = 2.0 * 3.14159265358979323846 / (4.0 * pulses_per_rev);
        m = std::round(m / lsb) * lsb;
    }
    return m;
}

} // namespace adhesion
