#include <benchmark/benchmark.h>

#include "adhesion/adhesion_curve.hpp"
#include "adhesion/estimation.hpp"
#include "adhesion/harness.hpp"
#include "adhesion/plant.hpp"
#include "adhesion/strategies/flc.hpp"

namespace {

using namespace adhesion;

void BM_MuEval(benchmark::State& state) {
    const auto p = profiles::p1();
    double v = 0.0;
    for (auto _ : state) {
        v += 1e-6;
        benchmark::DoNotOptimize(mu(p, v));
    }
}
BENCHMARK(BM_MuEval);

void BM_PeakOracle(benchmark::State& state) {
    const auto p = profiles::p3();
    for (auto _ : state) benchmark::DoNotOptimize(peak_oracle(p, 2.0));
}
BENCHMARK(BM_PeakOracle);

void BM_PlantStep(benchmark::State& state) {
    RigParameters rig;
    rig.F_N = 1000.0 / 3.0;
    const auto p = profiles::p1();
    SimState s;
    s.omega_mR = 46.0;
    s.omega_mW = rig.roller_surface_speed(s.omega_mR) * rig.Rg_W / rig.r_W;
    for (auto _ : state) {
        s = step(s, 5.0, 1.0, p, rig, 1e-4);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PlantStep);

void BM_ScheduledPlantStep(benchmark::State& state) {
    RigParameters rig;
    rig.F_N = 1000.0 / 3.0;
    ProfileSchedule schedule;
    schedule.segments = {{0.0, profiles::dry()}, {35.0, profiles::wet()}};
    schedule.transition_time = 3.0;
    SimState s;
    s.omega_mR = 46.0;
    s.omega_mW = rig.roller_surface_speed(s.omega_mR) * rig.Rg_W / rig.r_W;
    s.t = 34.0;
    for (auto _ : state) {
        s = step(s, 5.0, 1.0, schedule, rig, 1e-4);
        if (s.t > 40.0) s.t = 34.0;
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_ScheduledPlantStep);

void BM_ObserverTick(benchmark::State& state) {
    RigParameters rig;
    ObserverState obs;
    double omega = 0.0;
    for (auto _ : state) {
        omega += 0.01;
        const double tl = estimate_load_torque(obs, 5.0, omega, rig, 1e-3);
        benchmark::DoNotOptimize(discrete_gradient(obs, estimate_mu(tl, rig), omega * 0.03, 1e-3));
    }
}
BENCHMARK(BM_ObserverTick);

void BM_FuzzyInference(benchmark::State& state) {
    FlcConfig cfg;
    double dT = -10.0;
    for (auto _ : state) {
        dT += 0.01;
        if (dT > 10.0) dT = -10.0;
        benchmark::DoNotOptimize(flc_infer(cfg, dT, 0.3));
    }
}
BENCHMARK(BM_FuzzyInference);

void BM_OneSimulatedSecond(benchmark::State& state) {
    Scenario s = presets::single_profile(StrategyKind::Flc, "P1");
    s.events = {{0.5, EventAction::TorqueOn}, {1.0, EventAction::End}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(s));
    }
}
BENCHMARK(BM_OneSimulatedSecond)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
