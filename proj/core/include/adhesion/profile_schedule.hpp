#pragma once

#include <vector>

#include "adhesion/adhesion_curve.hpp"

namespace adhesion {

/// Piecewise adhesion-condition timeline. Each segment names the curve that
/// becomes the blend target at its start time; `transition_time` is the
/// first-order time constant of the blend (0 switches instantaneously).
struct ProfileSchedule {
    struct Segment {
        double start_time = 0.0; ///< s
        AdhesionCurveParams params;
    };

    std::vector<Segment> segments;
    double transition_time = 0.0; ///< s, >= 0

    bool empty() const { return segments.empty(); }

    /// Throws ValidationError unless start times are strictly increasing,
    /// the first segment starts at t = 0, and transition_time >= 0.
    void validate() const;
};

/// Curve parameters active at time t: the current segment's target params,
/// first-order blended from the state reached at the segment boundary.
/// Blending acts componentwise on (c1, c2, c3); the label is the target's.
AdhesionCurveParams scheduled_params(const ProfileSchedule& schedule, double t);

} // namespace adhesion
