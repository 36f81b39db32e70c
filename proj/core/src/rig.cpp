#include "adhesion/rig.hpp"

#include "adhesion/errors.hpp"

namespace adhesion {

void RigParameters::validate() const {
    auto positive = [](double v) { return v > 0.0; };
    if (!positive(r_W) || !positive(r_R) || !positive(Rg_W) || !positive(Rg_R) ||
        !positive(J_W) || !positive(J_R) || !positive(F_N) || !positive(tau_drive))
        throw ValidationError("rig radii, gear ratios, inertias, F_N and tau_drive must be > 0");
    if (beta_W < 0.0 || beta_R < 0.0)
        throw ValidationError("rig viscous frictions must be >= 0");
}

double slip_velocity(double omega_mW, double omega_mR, const RigParameters& rig) {
    return rig.wheel_surface_speed(omega_mW) - rig.roller_surface_speed(omega_mR);
}

std::pair<double, double> adhesion_torques(double mu_actual, const RigParameters& rig) {
    const double contact_force = mu_actual * rig.F_N;
    return {contact_force * rig.r_W / rig.Rg_W, contact_force * rig.r_R / rig.Rg_R};
}

} // namespace adhesion
