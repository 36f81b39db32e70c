#pragma once

#include "adhesion/errors.hpp"
#include "adhesion/strategy.hpp"

namespace adhesion {

/// Fixed slip-velocity reference, the conventional anti-slip mode. The
/// setpoint stays constant for the whole run regardless of the adhesion
/// condition, so it does not track the adhesion peak.
class ConstantSlipStrategy final : public MatStrategy {
public:
    explicit ConstantSlipStrategy(double v_slip_set) : setpoint_(v_slip_set) {
        if (v_slip_set <= 0.0)
            throw ValidationError("constant slip setpoint must be > 0");
    }

    StrategyKind kind() const override { return StrategyKind::ConstantSlip; }

    StrategyDecision update(const StrategyInputs&) override {
        StrategyDecision d;
        d.v_slip_ref = setpoint_;
        return d;
    }

    void reset() override {}

    double setpoint() const { return setpoint_; }

private:
    double setpoint_;
};

} // namespace adhesion
