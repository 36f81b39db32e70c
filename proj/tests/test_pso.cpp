#include <cmath>
#include <cstring>

#include "adhesion/errors.hpp"
#include "adhesion/strategies/pso.hpp"
#include "doctest.h"
#include "synthetic_plant.hpp"

using namespace adhesion;

TEST_CASE("config validation mirrors the documented bounds") {
    PsoConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    cfg.np = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), "PsoConfig.np must be >= 2", ValidationError);

    cfg = PsoConfig{};
    cfg.w = 1.5;
    CHECK_THROWS_WITH_AS(cfg.validate(), "PsoConfig.w must be in (0, 1]", ValidationError);

    cfg = PsoConfig{};
    cfg.c1 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);

    cfg = PsoConfig{};
    cfg.v_min = 1.0;
    cfg.v_max_bound = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("four particles start at the documented spread") {
    PsoConfig cfg;
    const auto p = PsoStrategy::initial_positions(cfg);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == doctest::Approx(0.1));
    CHECK(p[1] == doctest::Approx(0.3));
    CHECK(p[2] == doctest::Approx(0.6));
    CHECK(p[3] == doctest::Approx(0.9));
}

namespace {

StrategyInputs inputs_at(double te, double v, double t) {
    StrategyInputs in;
    in.Te_hat = te;
    in.v_slip = v;
    in.t = t;
    in.dt_ctrl = 1e-3;
    return in;
}

} // namespace

TEST_CASE("a particle probing flat torque becomes the global best immediately") {
    PsoConfig cfg;
    cfg.settle_window = 0.01;
    cfg.probe_window = 0.01;
    cfg.probe_dv = 0.05;
    cfg.tau_filter = 1e-4; // effectively unfiltered
    PsoStrategy pso(cfg);

    // particle 0 sits at 0.1; the torque does not change across its probe
    // step to 0.15: zero secant slope, the global minimum of |slope|
    pso.on_activation(inputs_at(2.0, 0.1, 0.0));
    double t = 0.0;
    for (int i = 0; i < 12; ++i) pso.update(inputs_at(2.0, 0.1, t += 1e-3));  // base dwell
    for (int i = 0; i < 12; ++i) pso.update(inputs_at(2.0, 0.15, t += 1e-3)); // probe dwell
    CHECK(pso.g_best_fitness() == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(pso.g_best_position() == doctest::Approx(0.1));
}

TEST_CASE("identical seeds and input traces give bit-identical decision traces") {
    PsoConfig cfg;
    cfg.settle_window = 0.02;
    PsoStrategy a(cfg), b(cfg);

    testutil::SyntheticPlant plant_a(profiles::p3());
    testutil::SyntheticPlant plant_b(profiles::p3());

    const auto in0 = inputs_at(plant_a.torque_at(0.3), 0.3, 0.0);
    a.on_activation(in0);
    b.on_activation(in0);

    double ref_a = 0.3, ref_b = 0.3;
    for (int i = 0; i < 20000; ++i) {
        const auto ia = plant_a.tick(ref_a, 1e-3);
        const auto ib = plant_b.tick(ref_b, 1e-3);
        const auto da = a.update(ia);
        const auto db = b.update(ib);
        ref_a = *da.v_slip_ref;
        ref_b = *db.v_slip_ref;
        // bitwise identity, not approximate equality
        CHECK(std::memcmp(&ref_a, &ref_b, sizeof ref_a) == 0);
    }
}

TEST_CASE("global best fitness never increases between resets") {
    PsoConfig cfg;
    cfg.settle_window = 0.05;
    PsoStrategy pso(cfg);

    testutil::SyntheticPlant plant(profiles::p2());
    plant.v_slip = 0.3;
    plant.te = plant.torque_at(0.3);
    pso.on_activation(inputs_at(plant.te, 0.3, 0.0));

    double ref = 0.3;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 40000; ++i) {
        const auto in = plant.tick(ref, 1e-3);
        const auto d = pso.update(in);
        ref = *d.v_slip_ref;
        if (pso.reset_count() > 0) break;
        const double g = pso.g_best_fitness();
        CHECK(g <= best + 1e-15);
        best = g;
    }
}

TEST_CASE("swarm converges near the flat P3 peak and holds the reference") {
    const auto p3 = profiles::p3();
    PsoConfig cfg;
    cfg.settle_window = 0.12;
    cfg.probe_window = 0.15;
    cfg.probe_dv = 0.05;
    cfg.iteration_cap = 20;
    cfg.convergence_spread = 0.04;
    cfg.w = 0.5;
    cfg.c1 = 0.6;
    cfg.c2 = 1.0;
    PsoStrategy pso(cfg);

    testutil::SyntheticPlant plant(p3);
    plant.v_slip = 0.3;
    plant.te = plant.torque_at(0.3);
    pso.on_activation(inputs_at(plant.te, 0.3, 0.0));

    double ref = 0.3;
    int iterations_at_hold = -1;
    for (int i = 0; i < 60000; ++i) {
        const auto in = plant.tick(ref, 1e-3);
        const auto d = pso.update(in);
        ref = *d.v_slip_ref;
        if (pso.phase() == PsoStrategy::Phase::Hold && iterations_at_hold < 0)
            iterations_at_hold = pso.iteration();
    }
    REQUIRE(pso.phase() == PsoStrategy::Phase::Hold);
    CHECK(iterations_at_hold <= 20);
    CHECK(std::abs(pso.hold_position() - 0.45) <= 0.05);
}

TEST_CASE("a large torque shift fires the reset exactly once") {
    PsoConfig cfg;
    cfg.settle_window = 0.02;
    cfg.reset_dT = 0.5;
    cfg.iteration_cap = 2; // reach hold quickly
    PsoStrategy pso(cfg);

    pso.on_activation(inputs_at(2.0, 0.3, 0.0));
    double t = 0.0;
    // let it reach hold on a flat landscape
    for (int i = 0; i < 3000; ++i) pso.update(inputs_at(2.0, 0.3, t += 1e-3));
    REQUIRE(pso.phase() == PsoStrategy::Phase::Hold);
    CHECK(pso.reset_count() == 0);

    // a profile switch drops the torque well past reset_dT
    for (int i = 0; i < 100; ++i) pso.update(inputs_at(0.8, 0.3, t += 1e-3));
    CHECK(pso.reset_count() == 1);

    // the re-search and subsequent hold at the new level fire no further resets
    for (int i = 0; i < 2000; ++i) pso.update(inputs_at(0.8, 0.3, t += 1e-3));
    CHECK(pso.reset_count() == 1);
}

TEST_CASE("particle positions stay inside the search bounds") {
    PsoConfig cfg;
    cfg.settle_window = 0.01;
    PsoStrategy pso(cfg);

    testutil::SyntheticPlant plant(profiles::p1());
    pso.on_activation(inputs_at(plant.torque_at(0.3), 0.3, 0.0));
    double ref = 0.3;
    for (int i = 0; i < 30000; ++i) {
        const auto in = plant.tick(ref, 1e-3);
        ref = *pso.update(in).v_slip_ref;
        for (double x : pso.positions()) {
            CHECK(x >= cfg.v_min);
            CHECK(x <= cfg.v_max_bound);
        }
    }
}
