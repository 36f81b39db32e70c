#include <cmath>

#include "adhesion/adhesion_curve.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/rng.hpp"
#include "doctest.h"

using namespace adhesion;

namespace {

// independent finite-difference slope used to cross-check the curve shape
double fd_slope(const AdhesionCurveParams& p, double v, double h = 1e-6) {
    return (mu(p, v + h) - mu(p, v - h)) / (2.0 * h);
}

int slope_sign_changes(const AdhesionCurveParams& p, double v_max) {
    int changes = 0;
    int last_sign = 0;
    for (int i = 0; i < 2000; ++i) {
        const double v = v_max * (i + 0.5) / 2000.0;
        const double s = fd_slope(p, v);
        const int sign = s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
        if (sign != 0 && last_sign != 0 && sign != last_sign) ++changes;
        if (sign != 0) last_sign = sign;
    }
    return changes;
}

} // namespace

TEST_CASE("mu is zero at zero slip for any parameters") {
    for (const auto& p : {profiles::p1(), profiles::p2(), profiles::p3(), profiles::dry(),
                          profiles::wet()}) {
        CHECK(mu(p, 0.0) == 0.0);
    }
}

TEST_CASE("P1 calibration hits the documented peak") {
    const auto p1 = profiles::p1();
    const auto peak = peak_oracle(p1, 2.0);
    CHECK(peak.mu == doctest::Approx(0.45).epsilon(0.005 / 0.45));
    CHECK(peak.v_slip == doctest::Approx(0.10).epsilon(0.01));
    // beyond the peak the curve must fall
    CHECK(mu(p1, 2.0 * peak.v_slip) < peak.mu);
}

TEST_CASE("P3 peak sits at 0.45 m/s") {
    const auto peak = peak_oracle(profiles::p3(), 2.0);
    CHECK(peak.v_slip == doctest::Approx(0.45).epsilon(1e-3));
    CHECK(peak.mu == doctest::Approx(0.20).epsilon(1e-3));
}

TEST_CASE("monotone curve peaks at the boundary") {
    AdhesionCurveParams p{0.5, 10.0, 0.0, "rise-only"};
    const auto peak = peak_oracle(p, 1.5);
    CHECK(peak.v_slip == doctest::Approx(1.5));
}

TEST_CASE("oracle output is a stationary point of the analytic form") {
    const auto p1 = profiles::p1();
    const auto peak = peak_oracle(p1, 2.0);
    CHECK(std::abs(fd_slope(p1, peak.v_slip, 1e-5)) < 1e-3);
}

TEST_CASE("oracle agrees with the analytic stationary point on random curves") {
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        AdhesionCurveParams p;
        p.c1 = rng.uniform(0.1, 1.0);
        p.c2 = rng.uniform(5.0, 60.0);
        const double x = rng.uniform(2.0, 8.0); // interior peak at x/c2 < 2
        p.c3 = p.c1 * p.c2 * std::exp(-x);
        p.label = "rand";

        const auto grid = peak_oracle(p, 2.0);
        const auto exact = analytic_peak(p, 2.0);
        CHECK(std::abs(grid.v_slip - exact.v_slip) <= 1e-4 + 1e-12);
        CHECK(grid.mu == doctest::Approx(exact.mu).epsilon(1e-6));
        CHECK(slope_sign_changes(p, 2.0) == 1);
    }
}

TEST_CASE("calibrated profiles are unimodal") {
    for (const auto& p : {profiles::p1(), profiles::p2(), profiles::p3(), profiles::dry(),
                          profiles::wet()}) {
        CHECK(slope_sign_changes(p, 2.0) == 1);
    }
}

TEST_CASE("mu is Lipschitz with constant c1*c2 + c3") {
    const auto p = profiles::p2();
    const double bound = p.c1 * p.c2 + p.c3;
    double worst = 0.0;
    const int n = 5000;
    double prev = mu(p, 0.0);
    for (int i = 1; i <= n; ++i) {
        const double v = 2.0 * i / n;
        const double cur = mu(p, v);
        worst = std::max(worst, std::abs(cur - prev) / (2.0 / n));
        prev = cur;
    }
    CHECK(worst <= bound * (1.0 + 1e-9));
}

TEST_CASE("odd symmetry of the extended curve") {
    const auto p = profiles::dry();
    for (double v : {0.01, 0.13, 0.6, 1.7}) {
        CHECK(mu(p, -v) == doctest::Approx(-mu(p, v)).epsilon(1e-12));
    }
}

TEST_CASE("calibrate_peak rejects non-positive targets") {
    CHECK_THROWS_AS(calibrate_peak("x", -0.1, 0.1), ValidationError);
    CHECK_THROWS_AS(calibrate_peak("x", 0.4, 0.0), ValidationError);
}

TEST_CASE("profile lookup by label") {
    CHECK(profiles::by_label("P2").label == "P2");
    CHECK_THROWS_AS(profiles::by_label("P9"), ValidationError);
}
