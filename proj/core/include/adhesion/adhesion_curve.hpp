#pragma once

#include <string>

namespace adhesion {

/// Parameters of the exponential-minus-linear adhesion curve
///
///   mu(v) = c1 * (1 - exp(-c2 * v)) - c3 * v        for v >= 0,
///
/// extended to negative slip as an odd function. With c3 > 0 and c1*c2 > c3
/// the curve rises through a micro-slip region, peaks once, and falls with
/// asymptotic slope -c3 (macro-slip region).
struct AdhesionCurveParams {
    double c1 = 0.0;   ///< peak-shaping gain, dimensionless, > 0
    double c2 = 0.0;   ///< rise rate, s/m, > 0
    double c3 = 0.0;   ///< falling slope, s/m, >= 0
    std::string label = "custom";

    bool valid() const { return c1 > 0.0 && c2 > 0.0 && c3 >= 0.0; }
};

/// Adhesion coefficient at slip velocity v_slip (m/s). Total on the reals;
/// negative slip evaluates on |v_slip| and negates.
double mu(const AdhesionCurveParams& p, double v_slip);

/// Analytic d(mu)/d(v_slip) at v_slip >= 0 (even extension for v < 0).
double mu_slope(const AdhesionCurveParams& p, double v_slip);

/// Location/value of the curve maximum on [0, v_max].
struct CurvePeak {
    double v_slip = 0.0;
    double mu = 0.0;
};

/// Closed-form stationary point ln(c1*c2/c3)/c2 clamped to [0, v_max];
/// returns the boundary when the curve is monotone on the interval.
CurvePeak analytic_peak(const AdhesionCurveParams& p, double v_max);

/// Ground-truth peak by exhaustive grid search at resolution <= 1e-4 m/s.
/// Used as the oracle against which strategies and the analytic form are
/// checked; it must stay independent of analytic_peak.
CurvePeak peak_oracle(const AdhesionCurveParams& p, double v_max);

/// Solves (c1, c2, c3) so that the curve peaks exactly at (v_peak, mu_peak).
/// `sharpness` is the dimensionless product c2*v_peak; higher values make the
/// micro-slip rise steeper and the macro-slip fall gentler.
AdhesionCurveParams calibrate_peak(const std::string& label, double mu_peak, double v_peak,
                                   double sharpness = 5.0);

/// Built-in calibrated profiles. P1/P2/P3 mirror the simulation profile set
/// (0.45 @ 0.10 m/s, 0.30 @ 0.20 m/s, 0.20 @ 0.45 m/s); dry/wet are the
/// experiment-level pair (0.60 and 0.25 peaks).
namespace profiles {
AdhesionCurveParams p1();
AdhesionCurveParams p2();
AdhesionCurveParams p3();
AdhesionCurveParams dry();
AdhesionCurveParams wet();
/// Lookup by label, throws ValidationError for unknown names.
AdhesionCurveParams by_label(const std::string& label);
} // namespace profiles

} // namespace adhesion
