#include "adhesion/adhesion_curve.hpp"

#include <algorithm>
#include <cmath>

#include "adhesion/errors.hpp"

namespace adhesion {

double mu(const AdhesionCurveParams& p, double v_slip) {
    const double v = std::abs(v_slip);
    // the falling branch is floored at zero: adhesion opposes slip, it never
    // pushes the wheel along
    const double m = std::max(0.0, p.c1 * (1.0 - std::exp(-p.c2 * v)) - p.c3 * v);
    return v_slip < 0.0 ? -m : m;
}

double mu_slope(const AdhesionCurveParams& p, double v_slip) {
    const double v = std::abs(v_slip);
    if (p.c1 * (1.0 - std::exp(-p.c2 * v)) - p.c3 * v < 0.0) return 0.0;
    return p.c1 * p.c2 * std::exp(-p.c2 * v) - p.c3;
}

CurvePeak analytic_peak(const AdhesionCurveParams& p, double v_max) {
    double v_star = v_max;
    if (p.c3 > 0.0 && p.c1 * p.c2 > p.c3) {
        v_star = std::min(v_max, std::log(p.c1 * p.c2 / p.c3) / p.c2);
    } else if (p.c3 >= p.c1 * p.c2) {
        v_star = 0.0; // monotone falling from the origin
    }
    return {v_star, mu(p, v_star)};
}

CurvePeak peak_oracle(const AdhesionCurveParams& p, double v_max) {
    const double target_step = 1e-4;
    const auto n = static_cast<long>(std::ceil(v_max / target_step));
    const double step = v_max / static_cast<double>(n);
    CurvePeak best{0.0, mu(p, 0.0)};
    for (long i = 1; i <= n; ++i) {
        const double v = static_cast<double>(i) * step;
        const double m = mu(p, v);
        if (m > best.mu) best = {v, m};
    }
    return best;
}

AdhesionCurveParams calibrate_peak(const std::string& label, double mu_peak, double v_peak,
                                   double sharpness) {
    if (mu_peak <= 0.0 || v_peak <= 0.0 || sharpness <= 0.0)
        throw ValidationError("calibrate_peak: mu_peak, v_peak, sharpness must be > 0");
    const double x = sharpness;
    const double e = std::exp(-x);
    const double denom = 1.0 - (1.0 + x) * e; // > 0 for any x > 0
    AdhesionCurveParams p;
    p.c1 = mu_peak / denom;
    p.c2 = x / v_peak;
    p.c3 = p.c1 * p.c2 * e; // stationarity: c1*c2*exp(-c2*v_peak) == c3
    p.label = label;
    return p;
}

namespace profiles {

AdhesionCurveParams p1() { return calibrate_peak("P1", 0.45, 0.10, 5.0); }
AdhesionCurveParams p2() { return calibrate_peak("P2", 0.30, 0.20, 5.0); }
AdhesionCurveParams p3() { return calibrate_peak("P3", 0.20, 0.45, 5.0); }
AdhesionCurveParams dry() { return calibrate_peak("dry", 0.60, 0.10, 4.2); }
AdhesionCurveParams wet() { return calibrate_peak("wet", 0.25, 0.15, 3.5); }

AdhesionCurveParams by_label(const std::string& label) {
    if (label == "P1") return p1();
    if (label == "P2") return p2();
    if (label == "P3") return p3();
    if (label == "dry") return dry();
    if (label == "wet") return wet();
    throw ValidationError("unknown adhesion profile label: " + label);
}

} // namespace profiles
} // namespace adhesion
