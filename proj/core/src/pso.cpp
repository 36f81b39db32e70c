#include "adhesion/strategies/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void PsoConfig::validate() const {
    std::vector<std::string> problems;
    if (np < 2) problems.emplace_back("PsoConfig.np must be >= 2");
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(w)) problems.emplace_back("PsoConfig.w must be in (0, 1]");
    if (!in_unit(c1)) problems.emplace_back("PsoConfig.c1 must be in (0, 1]");
    if (!in_unit(c2)) problems.emplace_back("PsoConfig.c2 must be in (0, 1]");
    if (v_min < 0.0 || v_min >= v_max_bound)
        problems.emplace_back("PsoConfig slip bounds must satisfy 0 <= v_min < v_max");
    if (reset_dT <= 0.0 || reset_dv <= 0.0)
        problems.emplace_back("PsoConfig reset limits must be > 0");
    if (start_delay < 0.0) problems.emplace_back("PsoConfig.start_delay must be >= 0");
    if (settle_window <= 0.0) problems.emplace_back("PsoConfig.settle_window must be > 0");
    if (probe_window < 0.0) problems.emplace_back("PsoConfig.probe_window must be >= 0");
    if (probe_dv <= 0.0) problems.emplace_back("PsoConfig.probe_dv must be > 0");
    if (iteration_cap < 1) problems.emplace_back("PsoConfig.iteration_cap must be >= 1");
    if (convergence_spread <= 0.0)
        problems.emplace_back("PsoConfig.convergence_spread must be > 0");
    if (tau_filter <= 0.0) problems.emplace_back("PsoConfig.tau_filter must be > 0");
    if (!problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw ValidationError(msg);
    }
}

std::vector<double> PsoStrategy::initial_positions(const PsoConfig& cfg) {
    const double lo = cfg.v_min;
    const double range = cfg.v_max_bound - cfg.v_min;
    std::vector<double> p(static_cast<std::size_t>(cfg.np));
    if (cfg.np == 4) {
        const double f[4] = {0.1, 0.3, 0.6, 0.9};
        for (int i = 0; i < 4; ++i) p[i] = lo + f[i] * range;
    } else {
        for (int i = 0; i < cfg.np; ++i) {
            const double f = 0.1 + 0.8 * static_cast<double>(i) / (cfg.np - 1);
            p[i] = lo + f * range;
        }
    }
    return p;
}

PsoStrategy::PsoStrategy(const PsoConfig& cfg)
    : cfg_(cfg), rng_(cfg.rng_seed), te_filter_(cfg.tau_filter), v_filter_(cfg.tau_filter) {
    cfg_.validate();
    reset();
}

void PsoStrategy::start_search(bool initial) {
    pos_ = initial_positions(cfg_);
    vel_.assign(pos_.size(), 0.0);
    fit_.assign(pos_.size(), kInf);
    p_best_pos_ = pos_;
    p_best_fit_.assign(pos_.size(), kInf);
    g_best_pos_ = pos_.front();
    g_best_fit_ = kInf;
    current_ = 0;
    iteration_ = 0;
    dwell_ = initial ? -cfg_.start_delay : 0.0; // let the activation transient die first
    probing_ = false;
    hold_ref_captured_ = false;
    sweep_ascending_ = true;
    plan_sweep();
    phase_ = Phase::Search;
}

// visit particles in position order, alternating direction per sweep, so the
// reference hops stay small and the dwell windows settle cleanly
void PsoStrategy::plan_sweep() {
    visit_order_.resize(pos_.size());
    std::iota(visit_order_.begin(), visit_order_.end(), 0);
    std::sort(visit_order_.begin(), visit_order_.end(),
              [&](int a, int b) { return pos_[a] < pos_[b]; });
    if (!sweep_ascending_) std::reverse(visit_order_.begin(), visit_order_.end());
    sweep_ascending_ = !sweep_ascending_;
}

double PsoStrategy::probe_position(double base) const {
    // step up unless that would leave the search range
    if (base + cfg_.probe_dv <= cfg_.v_max_bound) return base + cfg_.probe_dv;
    return base - cfg_.probe_dv;
}

double PsoStrategy::hold_position() const {
    // the measured secant represents the midpoint of the probe chord
    const double mid = g_best_pos_ + (probe_position(g_best_pos_) - g_best_pos_) / 2.0;
    return std::clamp(mid, cfg_.v_min, cfg_.v_max_bound);
}

void PsoStrategy::evaluate_particle(double te_f, double v_f) {
    const int p = active_particle();
    const double d_te = te_f - base_te_f_;
    const double d_v = v_f - base_v_f_;
    const double expected = probe_position(pos_[p]) - pos_[p];
    if (std::abs(d_v - expected) > 0.5 * cfg_.probe_dv) {
        // the operating point did not perform the commanded probe step
        // (activation or condition transient): discard this evaluation
        return;
    }
    if (std::abs(d_v) >= kGradientEpsilonV) last_fitness_ = std::abs(d_te / d_v);
    // below the guard the previous fitness estimate is held
    fit_[p] = last_fitness_;

    if (fit_[p] < p_best_fit_[p]) {
        p_best_fit_[p] = fit_[p];
        p_best_pos_[p] = pos_[p];
    }
    if (fit_[p] < g_best_fit_) {
        g_best_fit_ = fit_[p];
        g_best_pos_ = pos_[p];
    }
}

void PsoStrategy::move_particles() {
    for (std::size_t i = 0; i < pos_.size(); ++i) {
        const double r1 = rng_.uniform01();
        const double r2 = rng_.uniform01();
        vel_[i] = cfg_.w * vel_[i] + cfg_.c1 * r1 * (p_best_pos_[i] - pos_[i]) +
                  cfg_.c2 * r2 * (g_best_pos_ - pos_[i]);
        pos_[i] += vel_[i];
        if (pos_[i] < cfg_.v_min) {
            pos_[i] = cfg_.v_min;
            vel_[i] = 0.0;
        } else if (pos_[i] > cfg_.v_max_bound) {
            pos_[i] = cfg_.v_max_bound;
            vel_[i] = 0.0;
        }
    }
}

double PsoStrategy::spread() const {
    const auto [lo, hi] = std::minmax_element(pos_.begin(), pos_.end());
    return *hi - *lo;
}

void PsoStrategy::sync(const StrategyInputs& in) {
    te_filter_.update(in.Te_hat, in.dt_ctrl);
    v_filter_.update(in.v_slip, in.dt_ctrl);
}

void PsoStrategy::on_activation(const StrategyInputs&) {
    start_search(true);
}

StrategyDecision PsoStrategy::update(const StrategyInputs& in) {
    const double te_f = te_filter_.update(in.Te_hat, in.dt_ctrl);
    const double v_f = v_filter_.update(in.v_slip, in.dt_ctrl);

    if (phase_ == Phase::Idle) start_search(true);

    if (phase_ == Phase::Search) {
        dwell_ += in.dt_ctrl;
        const double window =
            probing_ ? (cfg_.probe_window > 0.0 ? cfg_.probe_window : cfg_.settle_window)
                     : cfg_.settle_window;
        if (dwell_ >= window) {
            dwell_ = 0.0;
            if (!probing_) {
                // base sample taken, move to the probe offset
                base_te_f_ = te_f;
                base_v_f_ = v_f;
                probing_ = true;
            } else {
                evaluate_particle(te_f, v_f);
                probing_ = false;
                ++current_;
                if (current_ >= static_cast<int>(pos_.size())) {
                    current_ = 0;
                    ++iteration_;
                    if (spread() < cfg_.convergence_spread ||
                        iteration_ >= cfg_.iteration_cap) {
                        phase_ = Phase::Hold;
                        hold_ref_captured_ = false;
                        dwell_ = 0.0;
                    } else {
                        move_particles();
                        plan_sweep();
                    }
                }
            }
        }
    } else if (phase_ == Phase::Hold) {
        if (!hold_ref_captured_) {
            dwell_ += in.dt_ctrl;
            if (dwell_ >= cfg_.settle_window) {
                hold_te_ = te_f;
                hold_v_ = v_f;
                hold_ref_captured_ = true;
            }
        } else if (std::abs(te_f - hold_te_) > cfg_.reset_dT ||
                   std::abs(v_f - hold_v_) > cfg_.reset_dv) {
            // the operating point moved: the track condition changed
            ++reset_count_;
            start_search(false);
        }
    }

    StrategyDecision d;
    if (phase_ == Phase::Hold) {
        d.v_slip_ref = hold_position();
    } else {
        const double base = pos_[active_particle()];
        d.v_slip_ref = probing_ ? probe_position(base) : base;
    }
    d.debug = {{"phase", static_cast<double>(phase_ == Phase::Search ? 1 : 2)},
               {"iteration", static_cast<double>(iteration_)},
               {"g_best_pos", g_best_pos_},
               {"g_best_fit", std::isfinite(g_best_fit_) ? g_best_fit_ : -1.0}};
    return d;
}

void PsoStrategy::reset() {
    rng_ = Rng(cfg_.rng_seed);
    te_filter_.reset();
    v_filter_.reset();
    phase_ = Phase::Idle;
    probing_ = false;
    pos_ = initial_positions(cfg_);
    vel_.assign(pos_.size(), 0.0);
    fit_.assign(pos_.size(), kInf);
    p_best_pos_ = pos_;
    p_best_fit_.assign(pos_.size(), kInf);
    g_best_pos_ = pos_.front();
    g_best_fit_ = kInf;
    current_ = 0;
    iteration_ = 0;
    dwell_ = 0.0;
    base_te_f_ = 0.0;
    base_v_f_ = 0.0;
    last_fitness_ = kInf;
    sweep_ascending_ = true;
    plan_sweep();
    hold_ref_captured_ = false;
    hold_te_ = 0.0;
    hold_v_ = 0.0;
    reset_count_ = 0;
}

} // namespace adhesion
