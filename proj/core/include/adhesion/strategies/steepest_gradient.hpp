#pragma once

#include "adhesion/estimation.hpp"
#include "adhesion/strategy.hpp"

namespace adhesion {

struct SgConfig {
    double alpha = 0.01; ///< adaptation constant, m^2/s
    double v_max = 2.0;  ///< slip reference clamp, m/s
    double tau_v = 0.05; ///< slip LPF ahead of the differencing, s
    double tau_mu = 0.05;///< adhesion-estimate LPF, s
    int eval_every = 1;  ///< gradient-block period in controller ticks
    double k_clamp = 40.0; ///< |K| limit applied to the slope estimate, (m/s)^-1
    double slew_rate = 1e9; ///< reference slew limit, m/s per s

    void validate() const;
};

/// One steepest-gradient step: the new slip reference is the previous
/// measured slip plus alpha times the current curve slope, clamped.
double steepest_gradient_step(double v_slip_prev, double K_vslip, double alpha, double v_max);

/// Climbs the adhesion-slip curve by following the filtered discrete slope
/// estimate: positive slope (micro-slip region) raises the slip command,
/// negative slope lowers it, zero slope leaves it unchanged.
class SteepestGradientStrategy final : public MatStrategy {
public:
    explicit SteepestGradientStrategy(const SgConfig& cfg);

    StrategyKind kind() const override { return StrategyKind::SteepestGradient; }
    void sync(const StrategyInputs& in) override;
    StrategyDecision update(const StrategyInputs& in) override;
    void reset() override;

    double last_gradient() const { return obs_.last_K; }

private:
    SgConfig cfg_;
    ObserverState obs_;
    double prev_v_slip_ = 0.0;
    double v_ref_ = 0.0;
    int tick_ = 0;
};

} // namespace adhesion
