#include "adhesion/strategies/perturb_observe.hpp"

#include <algorithm>

#include "adhesion/errors.hpp"

namespace adhesion {

void PoConfig::validate() const {
    if (delta_a <= 0.0 || period <= 0.0 || t_threshold <= 0.0 || a_max <= 0.0)
        throw ValidationError("P&O delta_a, period, t_threshold, a_max must be > 0");
    if (v_max <= 0.0) throw ValidationError("P&O v_max must be > 0");
    if (tau_filter <= 0.0) throw ValidationError("P&O tau_filter must be > 0");
}

PerturbObserveStrategy::PerturbObserveStrategy(const PoConfig& cfg)
    : cfg_(cfg), te_filter_(cfg.tau_filter) {
    cfg_.validate();
}

void PerturbObserveStrategy::sync(const StrategyInputs& in) {
    te_max_ = te_filter_.update(in.Te_hat, in.dt_ctrl);
    dwell_ = 0.0;
    up_ = true;
    v_ref_est_ = 0.0;
}

void PerturbObserveStrategy::on_activation(const StrategyInputs& in) {
    te_max_ = te_filter_.primed() ? te_filter_.value() : in.Te_hat;
    dwell_ = 0.0;
    up_ = true;
    v_ref_est_ = 0.0; // the search climbs from zero commanded slip
}

StrategyDecision PerturbObserveStrategy::update(const StrategyInputs& in) {
    const double te_f = te_filter_.update(in.Te_hat, in.dt_ctrl);
    te_max_ = std::max(te_max_, te_f);
    dwell_ += in.dt_ctrl;
    const double delta_T = te_max_ - te_f;

    if (dwell_ >= cfg_.period) {
        dwell_ = 0.0;
        if (delta_T > cfg_.t_threshold) {
            // torque has moved away from its held maximum: reverse and let
            // the reset restart the max-hold for the new direction
            up_ = !up_;
            te_max_ = te_f;
        }
    }

    double accel = up_ ? cfg_.delta_a : -cfg_.delta_a;
    accel = std::clamp(accel, -cfg_.a_max, cfg_.a_max);

    // mirror the control loop's clamped integration; reflect at the range ends
    v_ref_est_ = std::clamp(v_ref_est_ + accel * in.dt_ctrl, 0.0, cfg_.v_max);
    if (v_ref_est_ <= 0.0 && !up_) {
        up_ = true;
        te_max_ = te_f;
        dwell_ = 0.0;
    } else if (v_ref_est_ >= cfg_.v_max && up_) {
        up_ = false;
        te_max_ = te_f;
        dwell_ = 0.0;
    }

    StrategyDecision d;
    d.wheel_accel_ref = accel;
    d.debug = {{"sm", up_ ? 1.0 : 0.0}, {"te_max", te_max_}, {"delta_T", delta_T}};
    return d;
}

void PerturbObserveStrategy::reset() {
    te_filter_.reset();
    up_ = true;
    te_max_ = 0.0;
    dwell_ = 0.0;
    v_ref_est_ = 0.0;
}

} // namespace adhesion
