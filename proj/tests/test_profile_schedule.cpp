#include <cmath>

#include "adhesion/errors.hpp"
#include "adhesion/profile_schedule.hpp"
#include "doctest.h"

using namespace adhesion;

namespace {

ProfileSchedule p1_p2(double transition) {
    ProfileSchedule s;
    s.segments = {{0.0, profiles::p1()}, {7.0, profiles::p2()}};
    s.transition_time = transition;
    return s;
}

} // namespace

TEST_CASE("inside the first segment the first params apply exactly") {
    const auto s = p1_p2(0.5);
    const auto p = scheduled_params(s, 3.0);
    const auto p1 = profiles::p1();
    CHECK(p.c1 == p1.c1);
    CHECK(p.c2 == p1.c2);
    CHECK(p.c3 == p1.c3);
    CHECK(p.label == "P1");
}

TEST_CASE("instantaneous switch lands exactly on the new segment") {
    const auto s = p1_p2(0.0);
    const auto p = scheduled_params(s, 7.0);
    const auto p2 = profiles::p2();
    CHECK(p.c1 == p2.c1);
    CHECK(p.c2 == p2.c2);
    CHECK(p.c3 == p2.c3);
    CHECK(p.label == "P2");
}

TEST_CASE("one time constant into a blend leaves an e^-1 gap") {
    const double tau = 0.8;
    const auto s = p1_p2(tau);
    const auto p = scheduled_params(s, 7.0 + tau);
    const auto p1 = profiles::p1();
    const auto p2 = profiles::p2();
    const double k = std::exp(-1.0);
    CHECK(p.c1 == doctest::Approx(p2.c1 + (p1.c1 - p2.c1) * k).epsilon(1e-12));
    CHECK(p.c2 == doctest::Approx(p2.c2 + (p1.c2 - p2.c2) * k).epsilon(1e-12));
    CHECK(p.c3 == doctest::Approx(p2.c3 + (p1.c3 - p2.c3) * k).epsilon(1e-12));
}

TEST_CASE("blend converges to the target long after the switch") {
    const auto s = p1_p2(0.5);
    const auto p = scheduled_params(s, 30.0);
    const auto p2 = profiles::p2();
    CHECK(p.c1 == doctest::Approx(p2.c1).epsilon(1e-9));
}

TEST_CASE("three-segment chain blends through the middle state") {
    ProfileSchedule s;
    s.segments = {{0.0, profiles::p1()}, {7.0, profiles::p2()}, {11.0, profiles::p3()}};
    s.transition_time = 2.0;
    // state at t=11 is P2 + (P1-P2)*exp(-4/2); afterwards it decays to P3
    const auto p1 = profiles::p1();
    const auto p2 = profiles::p2();
    const auto p3 = profiles::p3();
    const double mid_c1 = p2.c1 + (p1.c1 - p2.c1) * std::exp(-2.0);
    const auto p = scheduled_params(s, 12.0);
    const double expect = p3.c1 + (mid_c1 - p3.c1) * std::exp(-0.5);
    CHECK(p.c1 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(p.label == "P3");
}

TEST_CASE("schedule validation") {
    ProfileSchedule bad;
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    bad.segments = {{1.0, profiles::p1()}};
    CHECK_THROWS_AS(bad.validate(), ValidationError); // must start at 0

    bad.segments = {{0.0, profiles::p1()}, {0.0, profiles::p2()}};
    CHECK_THROWS_AS(bad.validate(), ValidationError); // strictly increasing

    bad.segments = {{0.0, profiles::p1()}, {5.0, profiles::p2()}};
    bad.transition_time = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    bad.transition_time = 0.0;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("negative query times clamp to the schedule start") {
    const auto s = p1_p2(0.5);
    const auto p = scheduled_params(s, -3.0);
    CHECK(p.c1 == profiles::p1().c1);
    CHECK(p.label == "P1");
}
