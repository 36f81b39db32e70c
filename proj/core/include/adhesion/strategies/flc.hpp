#pragma once

#include <array>
#include <string>

#include "adhesion/estimation.hpp"
#include "adhesion/strategy.hpp"

namespace adhesion {

/// Linguistic terms of the five-set partitions used on both inputs and the
/// output: Negative Big, Negative Small, Zero, Positive Small, Positive Big.
enum class FuzzyLabel : int { NB = 0, NS = 1, Z = 2, PS = 3, PB = 4 };

FuzzyLabel fuzzy_label_from_string(const std::string& s);
const char* to_string(FuzzyLabel l);

/// Breakpoints and rule base of the MAT fuzzy controller. The defaults are
/// the full-scale tuning (torque breakpoints 7.5/15 N*m, slip 0.5/1.0 m/s,
/// output 0.25/0.5 m/s); scenario configurations scale them to the rig.
struct FlcConfig {
    double x1_T = 7.5;  ///< torque-increment small breakpoint, N*m
    double x2_T = 15.0; ///< torque-increment big breakpoint, N*m
    double x1_v = 0.5;  ///< slip-increment small breakpoint, m/s
    double x2_v = 1.0;  ///< slip-increment big breakpoint, m/s
    double y1 = 0.25;   ///< output small breakpoint, m/s
    double y2 = 0.5;    ///< output big breakpoint, m/s

    /// rule_table[dv][dT] with indices ordered NB..PB. Default encodes
    /// gradient ascent: output sign follows sign(dT*dv), output magnitude
    /// follows the torque label, and the Z row and Z column are all Z.
    std::array<std::array<FuzzyLabel, 5>, 5> rule_table = default_rule_table();

    double tau_filter = 0.05; ///< input LPF constant, s
    double v_max = 2.0;       ///< slip reference clamp, m/s
    int eval_every = 1;       ///< inference period in controller ticks

    static std::array<std::array<FuzzyLabel, 5>, 5> default_rule_table();
    void validate() const;
};

/// One Mamdani inference step: fuzzify the torque and slip increments with
/// triangular memberships centered {-x2, -x1, 0, +x1, +x2}, fire the 5x5
/// rule table with min-AND / max-aggregation, and defuzzify by centroid over
/// output sets centered {-y2, -y1, 0, +y1, +y2}. Returns the slip-command
/// increment, bounded by [-y2, y2].
double flc_infer(const FlcConfig& cfg, double delta_T, double delta_v);

/// Triangular membership grades of `u` over the five-set partition with
/// breakpoints (x1, x2); inputs are clamped to [-x2, x2].
std::array<double, 5> fuzzify(double u, double x1, double x2);

/// Fuzzy-logic MAT strategy: integrates the inferred slip-command increment
/// each controller period and clamps the result to [0, v_max].
class FlcStrategy final : public MatStrategy {
public:
    explicit FlcStrategy(const FlcConfig& cfg);

    StrategyKind kind() const override { return StrategyKind::Flc; }
    void sync(const StrategyInputs& in) override;
    void on_activation(const StrategyInputs& in) override;
    StrategyDecision update(const StrategyInputs& in) override;
    void reset() override;

private:
    bool feed_filters(const StrategyInputs& in, double& dT, double& dv);

    FlcConfig cfg_;
    LowPass te_filter_;
    LowPass v_filter_;
    double last_te_f_ = 0.0;
    double last_v_f_ = 0.0;
    bool primed_ = false;
    double v_ref_ = 0.0;
    int tick_ = 0;
};

} // namespace adhesion
