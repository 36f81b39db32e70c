#include "adhesion/strategies/steepest_gradient.hpp"

#include <algorithm>

#include "adhesion/errors.hpp"

namespace adhesion {

void SgConfig::validate() const {
    if (alpha <= 0.0) throw ValidationError("SG alpha must be > 0");
    if (v_max <= 0.0) throw ValidationError("SG v_max must be > 0");
    if (tau_v <= 0.0 || tau_mu <= 0.0) throw ValidationError("SG filter constants must be > 0");
    if (eval_every < 1) throw ValidationError("SG eval_every must be >= 1");
    if (k_clamp <= 0.0) throw ValidationError("SG k_clamp must be > 0");
    if (slew_rate <= 0.0) throw ValidationError("SG slew_rate must be > 0");
}

double steepest_gradient_step(double v_slip_prev, double K_vslip, double alpha, double v_max) {
    return std::clamp(v_slip_prev + alpha * K_vslip, 0.0, v_max);
}

SteepestGradientStrategy::SteepestGradientStrategy(const SgConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    obs_.tau_v = cfg_.tau_v;
    obs_.tau_mu = cfg_.tau_mu;
    obs_.apply_taus();
}

void SteepestGradientStrategy::sync(const StrategyInputs& in) {
    if (++tick_ >= cfg_.eval_every) {
        tick_ = 0;
        // keep the filters warm so the first active slope is meaningful
        discrete_gradient(obs_, in.mu_hat, in.v_slip, cfg_.eval_every * in.dt_ctrl);
        prev_v_slip_ = in.v_slip;
    }
    v_ref_ = std::clamp(in.v_slip, 0.0, cfg_.v_max);
}

StrategyDecision SteepestGradientStrategy::update(const StrategyInputs& in) {
    if (++tick_ >= cfg_.eval_every) {
        tick_ = 0;
        const double dt_eval = cfg_.eval_every * in.dt_ctrl;
        double K = discrete_gradient(obs_, in.mu_hat, in.v_slip, dt_eval);
        K = std::clamp(K, -cfg_.k_clamp, cfg_.k_clamp);
        const double target = steepest_gradient_step(prev_v_slip_, K, cfg_.alpha, cfg_.v_max);
        const double max_step = cfg_.slew_rate * dt_eval;
        v_ref_ = std::clamp(target, v_ref_ - max_step, v_ref_ + max_step);
        prev_v_slip_ = in.v_slip;
    }
    StrategyDecision d;
    d.v_slip_ref = v_ref_;
    d.debug = {{"K", obs_.last_K}};
    return d;
}

void SteepestGradientStrategy::reset() {
    obs_ = ObserverState{};
    obs_.tau_v = cfg_.tau_v;
    obs_.tau_mu = cfg_.tau_mu;
    obs_.apply_taus();
    prev_v_slip_ = 0.0;
    v_ref_ = 0.0;
    tick_ = 0;
}

} // namespace adhesion
