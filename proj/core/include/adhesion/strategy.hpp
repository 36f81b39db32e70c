#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adhesion {

enum class StrategyKind { ConstantSlip, PerturbObserve, SteepestGradient, Flc, Pso };

std::string to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);

/// Signals sampled for the strategies at the controller rate. Strategies see
/// only what the drive itself can measure: torque estimate, slip, roller
/// (train) speed, and for the gradient method the adhesion estimate.
struct StrategyInputs {
    double Te_hat = 0.0;  ///< estimated wheel motor torque, N*m
    double v_slip = 0.0;  ///< measured slip velocity, m/s
    double v_R = 0.0;     ///< roller surface (train) speed, m/s
    double mu_hat = 0.0;  ///< adhesion estimate (steepest gradient only)
    double t = 0.0;       ///< s
    double dt_ctrl = 0.0; ///< controller period, s
};

/// Per-tick output of a strategy. Exactly one of the two references is
/// present, fixed by the strategy kind: every strategy commands a slip
/// velocity except perturb-and-observe, which commands a wheel acceleration
/// that the control loop integrates into a speed reference.
struct StrategyDecision {
    std::optional<double> v_slip_ref;      ///< m/s
    std::optional<double> wheel_accel_ref; ///< m/s^2
    std::vector<std::pair<const char*, double>> debug;
};

/// Common interface of the five slip-command generators. Instances are pure
/// state machines fed sampled inputs; one control loop owns each instance,
/// and independent instances may run in parallel scenario sweeps.
class MatStrategy {
public:
    virtual ~MatStrategy() = default;
    virtual StrategyKind kind() const = 0;

    /// Called every controller period while the slip loop is inactive so the
    /// strategy's internal references and filters track the plant.
    virtual void sync(const StrategyInputs& in) { (void)in; }

    /// Called once on the inactive-to-active edge of the slip loop.
    virtual void on_activation(const StrategyInputs& in) { (void)in; }

    /// One controller period while the slip loop is active.
    virtual StrategyDecision update(const StrategyInputs& in) = 0;

    virtual void reset() = 0;
};

} // namespace adhesion
