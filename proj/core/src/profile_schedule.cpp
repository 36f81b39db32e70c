#include "adhesion/profile_schedule.hpp"

#include <cmath>

#include "adhesion/errors.hpp"

namespace adhesion {

void ProfileSchedule::validate() const {
    if (segments.empty()) throw ValidationError("profile schedule has no segments");
    if (segments.front().start_time != 0.0)
        throw ValidationError("first schedule segment must start at t = 0");
    for (std::size_t i = 1; i < segments.size(); ++i) {
        if (segments[i].start_time <= segments[i - 1].start_time)
            throw ValidationError("schedule segment start times must be strictly increasing");
    }
    if (transition_time < 0.0) throw ValidationError("transition_time must be >= 0");
    for (const auto& s : segments) {
        if (!s.params.valid())
            throw ValidationError("schedule segment '" + s.params.label +
                                  "' violates c1 > 0, c2 > 0, c3 >= 0");
    }
}

namespace {

struct Triple {
    double c1, c2, c3;
};

Triple as_triple(const AdhesionCurveParams& p) { return {p.c1, p.c2, p.c3}; }

Triple blend(const Triple& from, const Triple& to, double elapsed, double tau) {
    if (tau <= 0.0) return to;
    const double k = std::exp(-elapsed / tau);
    return {to.c1 + (from.c1 - to.c1) * k, to.c2 + (from.c2 - to.c2) * k,
            to.c3 + (from.c3 - to.c3) * k};
}

} // namespace

AdhesionCurveParams scheduled_params(const ProfileSchedule& schedule, double t) {
    const auto& segs = schedule.segments;
    if (segs.empty()) throw ValidationError("profile schedule has no segments");
    if (t < 0.0) t = 0.0;

    // Chain the closed-form first-order response through each boundary the
    // query time has passed.
    Triple state = as_triple(segs.front().params);
    std::size_t active = 0;
    for (std::size_t i = 1; i < segs.size() && segs[i].start_time <= t; ++i) {
        const double span = segs[i].start_time - segs[active].start_time;
        state = blend(state, as_triple(segs[active].params), span, schedule.transition_time);
        // `state` is now the blended value at the boundary; the new segment
        // becomes the target from here on.
        active = i;
    }
    const Triple target = as_triple(segs[active].params);
    const Triple now = blend(state, target, t - segs[active].start_time, schedule.transition_time);

    AdhesionCurveParams out;
    out.c1 = now.c1;
    out.c2 = now.c2;
    out.c3 = now.c3;
    out.label = segs[active].params.label;
    return out;
}

} // namespace adhesion
