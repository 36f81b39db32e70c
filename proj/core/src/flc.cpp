#include "adhesion/strategies/flc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "adhesion/errors.hpp"

namespace adhesion {

FuzzyLabel fuzzy_label_from_string(const std::string& s) {
    if (s == "NB") return FuzzyLabel::NB;
    if (s == "NS") return FuzzyLabel::NS;
    if (s == "Z") return FuzzyLabel::Z;
    if (s == "PS") return FuzzyLabel::PS;
    if (s == "PB") return FuzzyLabel::PB;
    throw ConfigError("unknown fuzzy label '" + s + "' (expected NB|NS|Z|PS|PB)");
}

const char* to_string(FuzzyLabel l) {
    switch (l) {
    case FuzzyLabel::NB: return "NB";
    case FuzzyLabel::NS: return "NS";
    case FuzzyLabel::Z: return "Z";
    case FuzzyLabel::PS: return "PS";
    case FuzzyLabel::PB: return "PB";
    }
    return "?";
}

std::array<std::array<FuzzyLabel, 5>, 5> FlcConfig::default_rule_table() {
    using L = FuzzyLabel;
    std::array<std::array<L, 5>, 5> table{};
    auto sign_of = [](int idx) { return idx < 2 ? -1 : (idx > 2 ? 1 : 0); };
    auto big = [](int idx) { return idx == 0 || idx == 4; };
    for (int dv = 0; dv < 5; ++dv) {
        for (int dT = 0; dT < 5; ++dT) {
            const int s = sign_of(dv) * sign_of(dT);
            if (s == 0) {
                table[dv][dT] = L::Z;
            } else if (s > 0) {
                table[dv][dT] = big(dT) ? L::PB : L::PS;
            } else {
                table[dv][dT] = big(dT) ? L::NB : L::NS;
            }
        }
    }
    return table;
}

void FlcConfig::validate() const {
    std::vector<std::string> problems;
    if (!(0.0 < x1_T && x1_T < x2_T))
        problems.emplace_back("FLC torque breakpoints must satisfy 0 < x1_T < x2_T");
    if (!(0.0 < x1_v && x1_v < x2_v))
        problems.emplace_back("FLC slip breakpoints must satisfy 0 < x1_v < x2_v");
    if (!(0.0 < y1 && y1 < y2))
        problems.emplace_back("FLC output breakpoints must satisfy 0 < y1 < y2");
    if (tau_filter <= 0.0) problems.emplace_back("FLC tau_filter must be > 0");
    if (v_max <= 0.0) problems.emplace_back("FLC v_max must be > 0");
    if (eval_every < 1) problems.emplace_back("FLC eval_every must be >= 1");
    if (!problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw ValidationError(msg);
    }
}

std::array<double, 5> fuzzify(double u, double x1, double x2) {
    u = std::clamp(u, -x2, x2);
    const std::array<double, 5> centers{-x2, -x1, 0.0, x1, x2};
    std::array<double, 5> m{};
    for (int i = 0; i < 5; ++i) {
        const double left = i == 0 ? x2 - x1 : centers[i] - centers[i - 1];
        const double right = i == 4 ? x2 - x1 : centers[i + 1] - centers[i];
        const double d = u - centers[i];
        double g = 0.0;
        if (d >= 0.0 && right > 0.0) g = 1.0 - d / right;
        if (d < 0.0 && left > 0.0) g = 1.0 + d / left;
        m[i] = std::max(0.0, g);
    }
    return m;
}

namespace {

// Membership of x in output set l, centered {-y2,-y1,0,y1,y2}. Interior sets
// span to their neighbors; the extreme sets are symmetric triangles so an
// isolated NB/PB centroid lands exactly on its center.
double output_membership(int l, double x, double y1, double y2) {
    const std::array<double, 5> centers{-y2, -y1, 0.0, y1, y2};
    const double c = centers[l];
    double left = 0.0;
    double right = 0.0;
    switch (l) {
    case 0: left = right = y2 - y1; break;
    case 1: left = y2 - y1; right = y1; break;
    case 2: left = right = y1; break;
    case 3: left = y1; right = y2 - y1; break;
    case 4: left = right = y2 - y1; break;
    }
    const double d = x - c;
    double g = 0.0;
    if (d >= 0.0 && right > 0.0) g = 1.0 - d / right;
    if (d < 0.0 && left > 0.0) g = 1.0 + d / left;
    return std::max(0.0, g);
}

} // namespace

double flc_infer(const FlcConfig& cfg, double delta_T, double delta_v) {
    const auto m_T = fuzzify(delta_T, cfg.x1_T, cfg.x2_T);
    const auto m_v = fuzzify(delta_v, cfg.x1_v, cfg.x2_v);

    // rule firing: min-AND per rule, max-aggregation per output label
    std::array<double, 5> strength{};
    for (int dv = 0; dv < 5; ++dv) {
        if (m_v[dv] <= 0.0) continue;
        for (int dT = 0; dT < 5; ++dT) {
            if (m_T[dT] <= 0.0) continue;
            const double w = std::min(m_v[dv], m_T[dT]);
            auto& s = strength[static_cast<int>(cfg.rule_table[dv][dT])];
            s = std::max(s, w);
        }
    }

    // centroid of the clipped-and-united output sets on a symmetric grid;
    // the grid pairs +x with -x so a symmetric aggregate defuzzifies to an
    // exact zero
    const double span = 2.0 * cfg.y2 - cfg.y1;
    constexpr int kGrid = 601;
    constexpr int kMid = (kGrid - 1) / 2;
    const double step = span / kMid;

    auto shape = [&](double x) {
        double agg = 0.0;
        for (int l = 0; l < 5; ++l) {
            if (strength[l] <= 0.0) continue;
            agg = std::max(agg, std::min(strength[l], output_membership(l, x, cfg.y1, cfg.y2)));
        }
        return agg;
    };

    double num = 0.0;
    double den = shape(0.0);
    for (int i = 1; i <= kMid; ++i) {
        const double x = i * step;
        const double wp = shape(x);
        const double wn = shape(-x);
        num += x * wp + (-x) * wn;
        den += wp + wn;
    }
    if (den <= 0.0) return 0.0;
    return num / den;
}

FlcStrategy::FlcStrategy(const FlcConfig& cfg)
    : cfg_(cfg), te_filter_(cfg.tau_filter), v_filter_(cfg.tau_filter) {
    cfg_.validate();
}

bool FlcStrategy::feed_filters(const StrategyInputs& in, double& dT, double& dv) {
    const double te_f = te_filter_.update(in.Te_hat, in.dt_ctrl);
    const double v_f = v_filter_.update(in.v_slip, in.dt_ctrl);
    if (!primed_) {
        last_te_f_ = te_f;
        last_v_f_ = v_f;
        primed_ = true;
    }
    if (++tick_ < cfg_.eval_every) return false;
    tick_ = 0;
    dT = te_f - last_te_f_;
    dv = v_f - last_v_f_;
    last_te_f_ = te_f;
    last_v_f_ = v_f;
    return true;
}

void FlcStrategy::sync(const StrategyInputs& in) {
    double dT = 0.0, dv = 0.0;
    feed_filters(in, dT, dv);
    v_ref_ = std::clamp(in.v_slip, 0.0, cfg_.v_max);
}

void FlcStrategy::on_activation(const StrategyInputs& in) {
    v_ref_ = std::clamp(in.v_slip, 0.0, cfg_.v_max);
}

StrategyDecision FlcStrategy::update(const StrategyInputs& in) {
    double dT = 0.0, dv = 0.0;
    StrategyDecision d;
    if (feed_filters(in, dT, dv)) {
        const double dv_cmd = flc_infer(cfg_, dT, dv);
        v_ref_ = std::clamp(v_ref_ + dv_cmd, 0.0, cfg_.v_max);
        d.debug = {{"dT", dT}, {"dv", dv}, {"dv_cmd", dv_cmd}};
    }
    d.v_slip_ref = v_ref_;
    return d;
}

void FlcStrategy::reset() {
    te_filter_.reset();
    v_filter_.reset();
    last_te_f_ = 0.0;
    last_v_f_ = 0.0;
    primed_ = false;
    v_ref_ = 0.0;
    tick_ = 0;
}

} // namespace adhesion
