// adhesion-lab: scenario runner, strategy comparison and oracle inspection
// for the wheel-roller adhesion test rig simulator.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adhesion/config.hpp"
#include "adhesion/csv.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/harness.hpp"
#include "adhesion/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

namespace fs = std::filesystem;

std::string default_out_dir() {
    if (const char* env = std::getenv("ADHESION_LAB_OUT")) return env;
    return ".";
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw adhesion::IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw adhesion::IoError("cannot create output directory '" + dir + "'");
}

std::vector<adhesion::AdhesionCurveParams> scenario_curves(const adhesion::Scenario& s) {
    std::vector<adhesion::AdhesionCurveParams> curves;
    for (const auto& seg : s.schedule.segments) curves.push_back(seg.params);
    if (s.wet_profile && s.event_time(adhesion::EventAction::WetOn))
        curves.push_back(*s.wet_profile);
    return curves;
}

adhesion::Scenario load_scenario(const std::string& config_path, const std::string& strategy,
                                 const std::string& profile, long long seed, double dt_plant,
                                 double dt_ctrl) {
    adhesion::Scenario s = adhesion::load_scenario_file(config_path);
    if (!strategy.empty()) s.strategy = adhesion::strategy_from_string(strategy);
    if (!profile.empty()) {
        const std::string text = read_file(config_path);
        s.schedule.segments = {{0.0, adhesion::profile_from_config(text, profile)}};
        s.wet_profile.reset();
        std::erase_if(s.events, [](const adhesion::Scenario::Event& e) {
            return e.action == adhesion::EventAction::WetOn;
        });
    }
    if (seed >= 0) s.seed = static_cast<std::uint64_t>(seed);
    if (dt_plant > 0.0) s.dt_plant = dt_plant;
    if (dt_ctrl > 0.0) s.dt_ctrl = dt_ctrl;
    s.validate();
    return s;
}

void write_run_outputs(const adhesion::RunResult& result, const adhesion::Scenario& s,
                       const std::string& out_dir, bool plots) {
    ensure_dir(out_dir);
    const std::string stem = out_dir + "/" + s.name;
    adhesion::emit_trace_csv(result.trace, stem + ".csv");
    std::cout << "trace: " << stem << ".csv\n";
    if (plots) {
        adhesion::render_time_stack_svg(result.trace, stem + "_time.svg");
        adhesion::render_trajectory_svg(result.trace, scenario_curves(s), s.v_max,
                                        stem + "_trajectory.svg");
        std::cout << "plots: " << stem << "_time.svg, " << stem << "_trajectory.svg\n";
    }
}

void print_metrics(const adhesion::RunMetrics& m) {
    for (const auto& c : m.conditions) {
        std::cout << "condition " << c.condition << ": search_time=";
        if (c.converged)
            std::cout << c.search_time << " s";
        else
            std::cout << "not-converged";
        std::cout << ", ripple=" << c.torque_ripple << " Nm, mu_steady=" << c.mu_steady
                  << " (" << 100.0 * c.peak_utilization << "% of oracle peak "
                  << c.mu_peak_oracle << ")\n";
    }
    std::cout << "slip rms error: " << m.slip_rms_error << " m/s\n";
}

int run_command(const std::string& config_path, const std::string& strategy,
                const std::string& profile, long long seed, const std::string& out_dir,
                bool plots, double dt_plant, double dt_ctrl) {
    const adhesion::Scenario s =
        load_scenario(config_path, strategy, profile, seed, dt_plant, dt_ctrl);
    const adhesion::RunResult result = adhesion::run_scenario(s);
    write_run_outputs(result, s, out_dir, plots);
    print_metrics(result.metrics);
    return kExitOk;
}

int compare_command(const std::string& config_path, const std::string& strategies_csv,
                    const std::string& out_dir, bool plots) {
    std::vector<adhesion::Scenario> scenarios;
    std::stringstream ss(strategies_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        adhesion::Scenario s = adhesion::load_scenario_file(config_path);
        s.strategy = adhesion::strategy_from_string(item);
        s.name += "-" + item;
        scenarios.push_back(std::move(s));
    }
    if (scenarios.empty()) throw adhesion::ValidationError("no strategies given");

    const adhesion::ComparisonResult result = adhesion::compare_strategies_with_traces(scenarios);
    ensure_dir(out_dir);
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        adhesion::emit_trace_csv(result.runs[i].trace,
                                 out_dir + "/" + scenarios[i].name + ".csv");
    }
    adhesion::emit_comparison_csv(result.table, out_dir + "/comparison.csv");
    if (plots) adhesion::render_comparison_bars_svg(result.table, out_dir + "/comparison.svg");
    std::cout << result.table.to_text();
    std::cout << "outputs in " << out_dir << "\n";
    return kExitOk;
}

int oracle_command(const std::string& profile, const std::string& config_path, double v_max) {
    adhesion::AdhesionCurveParams params;
    if (!config_path.empty()) {
        params = adhesion::profile_from_config(read_file(config_path), profile);
    } else {
        params = adhesion::profiles::by_label(profile);
    }
    const auto peak = adhesion::peak_oracle(params, v_max);
    std::cout << "profile " << params.label << ": c1=" << params.c1 << " c2=" << params.c2
              << " c3=" << params.c3 << "\n";
    std::cout << "peak: mu=" << peak.mu << " at v_slip=" << peak.v_slip << " m/s\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wheel-roller adhesion rig simulator and MAT strategy lab"};
    app.require_subcommand(1);

    std::string config_path, strategy, profile, strategies_csv;
    std::string out_dir = default_out_dir();
    long long seed = -1;
    bool plots = false;
    double dt_plant = 0.0, dt_ctrl = 0.0, v_max = 2.0;

    auto* run = app.add_subcommand("run", "run one scenario and write its trace");
    run->add_option("--config", config_path, "scenario config file")->required();
    run->add_option("--strategy", strategy, "override the strategy (constant|po|sg|flc|pso)");
    run->add_option("--profile", profile, "run a single adhesion profile instead of the schedule");
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", out_dir, "output directory (default $ADHESION_LAB_OUT or .)");
    run->add_flag("--plots", plots, "also render SVG plots");
    run->add_option("--dt-plant", dt_plant, "override the plant step, s");
    run->add_option("--dt-ctrl", dt_ctrl, "override the controller period, s");

    auto* compare = app.add_subcommand("compare", "run several strategies on one scenario");
    compare->add_option("--config", config_path, "scenario config file")->required();
    compare->add_option("--strategies", strategies_csv, "comma-separated strategy list")
        ->required();
    compare->add_option("--out", out_dir, "output directory");
    compare->add_flag("--plots", plots, "also render the comparison bar chart");

    auto* oracle = app.add_subcommand("oracle", "print the ground-truth adhesion peak");
    oracle->add_option("--profile", profile, "profile label (P1|P2|P3|dry|wet or custom)")
        ->required();
    oracle->add_option("--config", config_path, "config file defining custom profiles");
    oracle->add_option("--vmax", v_max, "search range upper bound, m/s");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(config_path, strategy, profile, seed, out_dir, plots, dt_plant,
                               dt_ctrl);
        if (compare->parsed()) return compare_command(config_path, strategies_csv, out_dir, plots);
        if (oracle->parsed()) return oracle_command(profile, config_path, v_max);
    } catch (const adhesion::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const adhesion::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const adhesion::NonFiniteState& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const adhesion::EmptyInput& e) {
        std::cerr << "empty input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const adhesion::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
