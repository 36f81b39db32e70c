#pragma once

#include <utility>

namespace adhesion {

/// Geometry, transmission, inertia and drive constants of the scaled
/// wheel-roller rig. Inertias and frictions are expressed in the respective
/// motor frames; the torque actuators replacing the field-oriented drives are
/// modeled as first-order lags with time constant `tau_drive`.
struct RigParameters {
    double r_W = 0.125;        ///< wheel radius, m
    double r_R = 0.25;         ///< roller radius, m
    double Rg_W = 90.0 / 24.0; ///< wheel gear ratio (motor:wheel)
    double Rg_R = 192.0 / 26.0;///< roller gear ratio (motor:roller)
    double J_W = 0.002;        ///< wheel-side inertia, kg*m^2, motor frame
    double J_R = 0.007;        ///< roller-side inertia, kg*m^2, motor frame
    double beta_W = 0.001;     ///< wheel viscous friction, N*m*s
    double beta_R = 0.001;     ///< roller viscous friction, N*m*s
    double F_N = 843.0;        ///< contact normal force, N
    double tau_drive = 0.005;  ///< torque-actuator lag, s

    /// Throws ValidationError when a positivity invariant is violated.
    void validate() const;

    /// Wheel surface speed for a motor-frame speed, m/s.
    double wheel_surface_speed(double omega_mW) const { return omega_mW * r_W / Rg_W; }
    /// Roller surface speed for a motor-frame speed, m/s.
    double roller_surface_speed(double omega_mR) const { return omega_mR * r_R / Rg_R; }
};

/// Slip velocity between wheel and roller surfaces from motor-frame speeds.
double slip_velocity(double omega_mW, double omega_mR, const RigParameters& rig);

/// Adhesion reaction reflected to both motor shafts for a given adhesion
/// coefficient: {load torque at the wheel motor, drive torque at the roller
/// motor}. Both equal mu*F_N divided by the respective gear reflection, so
/// the contact force obeys Newton's third law by construction.
std::pair<double, double> adhesion_torques(double mu_actual, const RigParameters& rig);

} // namespace adhesion
