// Command-line front end: single runs, parameter sweeps, solver
// comparisons, and beat spectroscopy over the preset figure scenarios.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavity/scenario.hpp"

namespace fs = std::filesystem;
using namespace cavity;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitGuard = 3;

struct ScenarioFlags {
    std::string preset;
    std::string config;
    std::string out = ".";
    std::string name;
    double delta1 = 0.0, delta2 = 0.0, delta = 0.0;
    double big_r = 0.0, r1 = 0.0, s = 0.0, phi = 0.0;
    double tmax = 0.0, dt = 0.0, guard = 0.0;
    std::size_t points = 0;
    std::vector<std::string> solvers;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
    cmd->add_option("--preset", flags.preset, "start from a named preset scenario");
    cmd->add_option("--config", flags.config, "flat key = value config file");
    cmd->add_option("--out", flags.out, "output directory")->capture_default_str();
    cmd->add_option("--name", flags.name, "run name (output file prefix)");
    cmd->add_option("--delta1", flags.delta1, "qubit 1 detuning, units of lambda");
    cmd->add_option("--delta2", flags.delta2, "qubit 2 detuning, units of lambda");
    cmd->add_option("--delta", flags.delta, "common detuning (sets both)");
    cmd->add_option("--R", flags.big_r, "vacuum Rabi frequency over lambda");
    cmd->add_option("--r1", flags.r1, "relative coupling of qubit 1, in [0, 1]");
    cmd->add_option("--s", flags.s, "separability parameter, in [-1, 1]");
    cmd->add_option("--phi", flags.phi, "initial relative phase, radians");
    cmd->add_option("--tmax", flags.tmax, "grid end, units of 1/lambda");
    cmd->add_option("--points", flags.points, "number of grid points");
    cmd->add_option("--dt", flags.dt, "internal step request for rk4/volterra");
    cmd->add_option("--guard", flags.guard, "cross-solver disagreement guard");
    cmd->add_option("--solver", flags.solvers,
                    "solver (repeatable): closed | exact | rk4 | volterra | approx:<regime>");
}

Scenario build_scenario(const CLI::App* cmd, const ScenarioFlags& flags) {
    Scenario sc;
    if (!flags.preset.empty()) {
        const auto preset = find_preset(flags.preset);
        if (!preset)
            fail(ErrorCode::InvalidScenario, "preset", "unknown preset '" + flags.preset + "'");
        sc = *preset;
    }
    if (!flags.config.empty()) {
        std::ifstream in(flags.config);
        if (!in)
            fail(ErrorCode::InvalidScenario, "config", "cannot open '" + flags.config + "'");
        apply_config(sc, read_config(in));
    }
    if (cmd->count("--name")) sc.name = flags.name;
    if (cmd->count("--delta")) sc.delta_1 = sc.delta_2 = flags.delta;
    if (cmd->count("--delta1")) sc.delta_1 = flags.delta1;
    if (cmd->count("--delta2")) sc.delta_2 = flags.delta2;
    if (cmd->count("--R")) sc.big_r = flags.big_r;
    if (cmd->count("--r1")) sc.r_1 = flags.r1;
    if (cmd->count("--s")) { sc.s = flags.s; sc.init_from_s_phi = true; }
    if (cmd->count("--phi")) { sc.phi = flags.phi; sc.init_from_s_phi = true; }
    if (cmd->count("--tmax")) sc.t_max = flags.tmax;
    if (cmd->count("--points")) sc.n_points = flags.points;
    if (cmd->count("--dt")) sc.dt = flags.dt;
    if (cmd->count("--guard")) sc.guard = flags.guard;
    if (!flags.solvers.empty()) {
        sc.solvers.clear();
        for (const std::string& text : flags.solvers)
            sc.solvers.push_back(parse_solver(text));
    }
    return sc;
}

fs::path output_path(const ScenarioFlags& flags, const Scenario& sc, const std::string& suffix) {
    fs::create_directories(flags.out);
    return fs::path(flags.out) / (sc.name + "_" + suffix);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::InvalidScenario, "out", "cannot write '" + path.string() + "'");
    out << content;
}

void warn_approx_regimes(const Scenario& sc) {
    for (const SolverChoice& choice : sc.solvers) {
        if (choice.kind != SolverKind::Approx) continue;
        const RegimeCheck check = check_regime(sc.initial_state(), sc.params(), choice.regime);
        if (!check.ok)
            std::cerr << "warning: " << choice.label() << ": " << check.message << "\n";
    }
}

int cmd_solve(const CLI::App* cmd, const ScenarioFlags& flags) {
    const Scenario sc = build_scenario(cmd, flags);
    validate_scenario(sc);
    warn_approx_regimes(sc);
    const SolveResult result = run_solve(sc);

    std::ostringstream csv;
    write_trajectory_csv(csv, result, sc.grid());
    const fs::path traj_path = output_path(flags, sc, "trajectory.csv");
    write_file(traj_path, csv.str());
    const fs::path manifest_path = output_path(flags, sc, "manifest.json");
    write_file(manifest_path, manifest_json(sc, {traj_path.filename().string()}));

    double max_c = 0.0, argmax = 0.0;
    for (std::size_t i = 0; i < result.trajectory.size(); ++i)
        if (result.trajectory.concurrence[i] > max_c) {
            max_c = result.trajectory.concurrence[i];
            argmax = result.trajectory.times[i];
        }
    std::cout << "solve " << sc.name << ": " << sc.n_points << " points, solver "
              << result.primary.label() << ", max concurrence " << max_c
              << " at lambda t = " << argmax << "\n"
              << "wrote " << traj_path.string() << "\n";
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const ScenarioFlags& flags, const std::string& axis_text,
              std::vector<double>& values, double from, double to, std::size_t steps,
              const CLI::App* self) {
    const Scenario sc = build_scenario(cmd, flags);
    const SweepAxis axis = parse_axis(axis_text);
    if (values.empty() && self->count("--from")) {
        if (steps < 2)
            fail(ErrorCode::InvalidScenario, "steps", "sweep needs at least 2 steps");
        for (std::size_t i = 0; i < steps; ++i)
            values.push_back(from + (to - from) * static_cast<double>(i) /
                                        static_cast<double>(steps - 1));
    }
    if (values.empty())
        fail(ErrorCode::InvalidScenario, "values", "no sweep values given");

    const SweepResult result = run_sweep(sc, axis, values);

    std::ostringstream long_csv;
    write_sweep_csv(long_csv, sc, result);
    const fs::path sweep_path = output_path(flags, sc, "sweep.csv");
    write_file(sweep_path, long_csv.str());

    std::ostringstream summary_csv;
    write_sweep_summary_csv(summary_csv, result);
    const fs::path summary_path = output_path(flags, sc, "summary.csv");
    write_file(summary_path, summary_csv.str());

    write_file(output_path(flags, sc, "manifest.json"),
               manifest_json(sc, {sweep_path.filename().string(),
                                  summary_path.filename().string()},
                             {{"sweep_axis", axis_name(axis)}}));

    std::cout << "sweep " << sc.name << ": axis " << axis_name(axis) << ", "
              << values.size() << " values\nwrote " << sweep_path.string() << ", "
              << summary_path.string() << "\n";
    return 0;
}

int cmd_compare(const CLI::App* cmd, const ScenarioFlags& flags) {
    const Scenario sc = build_scenario(cmd, flags);
    const CompareResult result = run_compare(sc);

    std::ostringstream csv;
    write_compare_csv(csv, result);
    const fs::path path = output_path(flags, sc, "compare.csv");
    write_file(path, csv.str());
    write_file(output_path(flags, sc, "manifest.json"),
               manifest_json(sc, {path.filename().string()},
                             {{"guard_tripped", result.guard_tripped ? "true" : "false"}}));

    for (const ComparePair& pair : result.pairs)
        std::cout << pair.solver_a << " vs " << pair.solver_b
                  << ": sup_conc = " << pair.sup_concurrence
                  << (pair.has_amplitudes
                          ? ", sup_amp = " + format_double(pair.sup_amplitude)
                          : std::string())
                  << (pair.tripped ? "  [guard tripped]" : "") << "\n";
    std::cout << "wrote " << path.string() << "\n";
    if (result.guard_tripped) {
        std::cerr << "error: cross-solver guard tripped\n";
        return kExitGuard;
    }
    return 0;
}

int cmd_beats(const CLI::App* cmd, const ScenarioFlags& flags) {
    const Scenario sc = build_scenario(cmd, flags);
    const BeatsResult result = run_beats(sc);
    if (result.bad_cavity_warning)
        std::cerr << "warning: 2R <= lambda, the dressed splitting is not resolved; "
                     "beats are not expected\n";

    std::ostringstream csv;
    write_beats_csv(csv, result);
    const fs::path path = output_path(flags, sc, "beats.csv");
    write_file(path, csv.str());

    std::map<std::string, std::string> extra;
    extra["bad_cavity_warning"] = result.bad_cavity_warning ? "true" : "false";
    for (const BeatsSeries& series : result.series)
        extra["no_resolvable_beats_" + series.name] =
            series.no_resolvable_beats ? "true" : "false";
    write_file(output_path(flags, sc, "manifest.json"),
               manifest_json(sc, {path.filename().string()}, extra));

    for (const BeatsSeries& series : result.series) {
        std::cout << series.name << ": ";
        if (series.no_resolvable_beats) {
            std::cout << "no resolvable peaks\n";
        } else {
            for (const SpectrumPeak& peak : series.peaks)
                std::cout << peak.frequency << " (amp " << peak.amplitude << ") ";
            std::cout << "\n";
        }
    }
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_presets() {
    for (const Scenario& sc : presets()) {
        std::cout << sc.name << "\n  " << sc.provenance << "\n  delta1 = " << sc.delta_1
                  << ", delta2 = " << sc.delta_2 << ", R = " << sc.big_r
                  << ", r1 = " << sc.r_1 << ", s = " << sc.s << ", phi = " << sc.phi
                  << ", tmax = " << sc.t_max << ", points = " << sc.n_points << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two qubits in a common lossy cavity: exact and approximate "
                 "entanglement dynamics"};
    app.require_subcommand(1);

    ScenarioFlags solve_flags, sweep_flags, compare_flags, beats_flags;

    CLI::App* solve = app.add_subcommand("solve", "compute one trajectory and its concurrence");
    add_scenario_flags(solve, solve_flags);

    CLI::App* sweep = app.add_subcommand("sweep", "repeat a scenario along one parameter axis");
    add_scenario_flags(sweep, sweep_flags);
    std::string axis_text;
    std::vector<double> sweep_values;
    double sweep_from = 0.0, sweep_to = 1.0;
    std::size_t sweep_steps = 0;
    sweep->add_option("--axis", axis_text, "delta | r1 | s | phi | R")->required();
    sweep->add_option("--values", sweep_values, "explicit axis values")->delimiter(',');
    sweep->add_option("--from", sweep_from, "range start");
    sweep->add_option("--to", sweep_to, "range end");
    sweep->add_option("--steps", sweep_steps, "number of range points");

    CLI::App* compare = app.add_subcommand("compare", "cross-check two or more solvers");
    add_scenario_flags(compare, compare_flags);

    CLI::App* beats = app.add_subcommand("beats", "FFT peak tables of concurrence and population");
    add_scenario_flags(beats, beats_flags);

    CLI::App* presets_cmd = app.add_subcommand("presets", "list the built-in figure scenarios");
    std::string presets_action = "list";
    presets_cmd->add_option("action", presets_action, "only 'list' is supported");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve, solve_flags);
        if (sweep->parsed())
            return cmd_sweep(sweep, sweep_flags, axis_text, sweep_values, sweep_from, sweep_to,
                             sweep_steps, sweep);
        if (compare->parsed()) return cmd_compare(compare, compare_flags);
        if (beats->parsed()) return cmd_beats(beats, beats_flags);
        if (presets_cmd->parsed()) {
            if (presets_action != "list") {
                std::cerr << "error: unknown presets action '" << presets_action << "'\n";
                return kExitValidation;
            }
            return cmd_presets();
        }
    } catch (const Error& e) {
        std::cerr << "error [" << e.field() << "]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
