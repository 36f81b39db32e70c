#pragma once

#include <cstdint>
#include <vector>

#include "adhesion/estimation.hpp"
#include "adhesion/rng.hpp"
#include "adhesion/strategy.hpp"

namespace adhesion {

struct PsoConfig {
    int np = 4;                ///< particle count, >= 2
    double w = 0.6;            ///< inertia weight, (0, 1]
    double c1 = 0.8;           ///< cognitive acceleration, (0, 1]
    double c2 = 0.8;           ///< social acceleration, (0, 1]
    double v_min = 0.0;        ///< slip search range lower bound, m/s
    double v_max_bound = 1.0;  ///< slip search range upper bound, m/s
    double reset_dT = 3.0;     ///< torque change that re-triggers the search, N*m
    double reset_dv = 0.3;     ///< slip change that re-triggers the search, m/s
    std::uint64_t rng_seed = 1;
    double start_delay = 0.0;        ///< extra settling before the first sweep, s
    double settle_window = 0.3;      ///< dwell at a particle position, s
    double probe_window = 0.0;       ///< dwell at the probe offset, s (0: = settle_window)
    double probe_dv = 0.03;          ///< slip offset used to sample the local slope, m/s
    int iteration_cap = 25;          ///< sweeps before the search gives up and holds
    double convergence_spread = 0.02;///< particle spread that ends the search, m/s
    double tau_filter = 0.03;        ///< input LPF constant, s

    void validate() const;
};

/// Swarm search for the slip velocity that minimizes |dT/dv|, i.e. the peak
/// of the adhesion-slip curve. Each particle is evaluated by dwelling the
/// slip reference at its position, stepping it by `probe_dv`, and taking the
/// absolute secant slope across that step as the fitness. After convergence
/// the global best position is held until the operating point moves by more
/// than the reset limits, which re-initializes the swarm (a changed track
/// condition).
class PsoStrategy final : public MatStrategy {
public:
    explicit PsoStrategy(const PsoConfig& cfg);

    StrategyKind kind() const override { return StrategyKind::Pso; }
    void sync(const StrategyInputs& in) override;
    void on_activation(const StrategyInputs& in) override;
    StrategyDecision update(const StrategyInputs& in) override;
    void reset() override;

    enum class Phase { Idle, Search, Hold };
    Phase phase() const { return phase_; }
    int iteration() const { return iteration_; }
    int reset_count() const { return reset_count_; }
    double g_best_position() const { return g_best_pos_; }
    /// Reference commanded while holding: the midpoint of the best chord.
    double hold_position() const;
    double g_best_fitness() const { return g_best_fit_; }
    const std::vector<double>& positions() const { return pos_; }
    const std::vector<double>& fitnesses() const { return fit_; }

    /// Deterministic initial particle spread across [v_min, v_max_bound].
    static std::vector<double> initial_positions(const PsoConfig& cfg);

private:
    void start_search(bool initial);
    void plan_sweep();
    int active_particle() const { return visit_order_[static_cast<std::size_t>(current_)]; }
    double probe_position(double base) const;
    void evaluate_particle(double te_f, double v_f);
    void move_particles();
    double spread() const;

    PsoConfig cfg_;
    Rng rng_;
    LowPass te_filter_;
    LowPass v_filter_;

    Phase phase_ = Phase::Idle;
    bool probing_ = false; ///< second sub-dwell of the current evaluation
    std::vector<double> pos_, vel_, fit_, p_best_pos_, p_best_fit_;
    std::vector<int> visit_order_;
    bool sweep_ascending_ = true;
    double g_best_pos_ = 0.0;
    double g_best_fit_ = 0.0;
    int current_ = 0;
    int iteration_ = 0;
    double dwell_ = 0.0;
    double base_te_f_ = 0.0;
    double base_v_f_ = 0.0;
    double last_fitness_ = 0.0;
    bool hold_ref_captured_ = false;
    double hold_te_ = 0.0;
    double hold_v_ = 0.0;
    int reset_count_ = 0;
};

} // namespace adhesion
