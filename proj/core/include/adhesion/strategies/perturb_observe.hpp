#pragma once

#include "adhesion/estimation.hpp"
#include "adhesion/strategy.hpp"

namespace adhesion {

struct PoConfig {
    double delta_a = 0.2;      ///< acceleration perturbation step, m/s^2
    double period = 0.25;      ///< perturbation period (decision interval), s
    double t_threshold = 0.3;  ///< torque-drop threshold, N*m
    double a_max = 5.0;        ///< |wheel_accel_ref| clamp, m/s^2
    double v_max = 2.0;        ///< slip range used for the clamp reflection, m/s
    double tau_filter = 0.03;  ///< torque LPF ahead of the max-hold, s

    void validate() const;
};

/// Perturb-and-observe hill climbing on the drive torque. The wheel
/// acceleration command is held at +delta_a (S_m = 1) or -delta_a (S_m = 0);
/// the maximum torque seen since the last reversal is held, and when the
/// current torque at a decision instant has dropped more than `t_threshold`
/// below that maximum the operating point has moved past the adhesion peak
/// in the current direction, so the direction reverses and the max-hold
/// resets. Decisions are latched for one perturbation period. The search
/// starts from zero commanded slip and climbs; hitting either end of the
/// slip range reflects the direction.
class PerturbObserveStrategy final : public MatStrategy {
public:
    explicit PerturbObserveStrategy(const PoConfig& cfg);

    StrategyKind kind() const override { return StrategyKind::PerturbObserve; }
    void sync(const StrategyInputs& in) override;
    void on_activation(const StrategyInputs& in) override;
    StrategyDecision update(const StrategyInputs& in) override;
    void reset() override;

    bool last_sm() const { return up_; }
    /// Strategy-side copy of the integrated slip reference (mirrors the
    /// control loop's integral, used for the clamp reflection).
    double ref_estimate() const { return v_ref_est_; }

private:
    PoConfig cfg_;
    LowPass te_filter_;
    bool up_ = true;
    double te_max_ = 0.0;
    double dwell_ = 0.0;
    double v_ref_est_ = 0.0;
};

} // namespace adhesion
