#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cavity/beats.hpp"
#include "cavity/core.hpp"
#include "cavity/dispersive.hpp"
#include "cavity/oracle.hpp"

namespace cavity {

enum class SolverKind { Closed, Exact, Rk4, Volterra, Approx };

struct SolverChoice {
    SolverKind kind = SolverKind::Exact;
    Regime regime = Regime::DispersiveFactorized; // meaningful for Approx only
    std::string label() const;
};

SolverChoice parse_solver(const std::string& text);

/// A fully specified run: physical inputs in lambda units, initial state,
/// grid, and solver selection. Presets encode the published figure
/// scenarios; config files and CLI flags override fields.
struct Scenario {
    std::string name = "run";
    double delta_1 = 0.0;  // qubit detunings, units of lambda
    double delta_2 = 0.0;
    double big_r = 0.1;    // vacuum Rabi frequency over lambda
    double r_1 = M_SQRT1_2;
    double lambda = 1.0;

    bool init_from_s_phi = true;
    double s = 0.0;
    double phi = 0.0;
    Complex c01{1.0, 0.0}; // used when init_from_s_phi is false
    Complex c02{0.0, 0.0};

    double t_max = 100.0;
    std::size_t n_points = 2001;
    std::vector<SolverChoice> solvers{{SolverKind::Exact}};

    double dt = 0.0;       // oracle step request; 0 -> default
    double guard = 1e-6;   // cross-solver disagreement guard
    std::string provenance; // which published curve this encodes, if any

    SystemParams params() const;
    InitialState initial_state() const;
    std::vector<double> grid() const;
    IntegratorConfig integrator(IntegratorMethod method) const;
};

void validate_scenario(const Scenario& scenario);

const std::vector<Scenario>& presets();
std::optional<Scenario> find_preset(const std::string& name);

/// Flat `key = value` config with `#` comments; unknown keys are errors.
std::map<std::string, std::string> read_config(std::istream& in);
void apply_config(Scenario& scenario, const std::map<std::string, std::string>& kv);

// ---- runners ------------------------------------------------------------

struct SolveResult {
    Trajectory trajectory; // amplitudes + concurrence from the primary solver
    SolverChoice primary;
    std::vector<std::pair<Regime, std::vector<double>>> approx_series;
};

SolveResult run_solve(const Scenario& scenario);

enum class SweepAxis { Delta, R1, S, Phi, BigR };
SweepAxis parse_axis(const std::string& name);
const char* axis_name(SweepAxis axis);

struct SweepPoint {
    double value = 0.0;
    SolveResult solve;
    double stationary_concurrence = 0.0;
    double max_concurrence = 0.0;
    double argmax_time = 0.0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::R1;
    std::vector<SweepPoint> points;
};

/// One solve per axis value; points run on an OpenMP worker pool and are
/// stored in axis order.
SweepResult run_sweep(const Scenario& scenario, SweepAxis axis,
                      const std::vector<double>& values);

struct ComparePair {
    std::string solver_a;
    std::string solver_b;
    bool has_amplitudes = false;
    double sup_amplitude = 0.0;
    double l2_amplitude = 0.0;
    double sup_concurrence = 0.0;
    double l2_concurrence = 0.0;
    bool guarded = false;
    double guard_tolerance = 0.0;
    bool tripped = false;
};

struct CompareResult {
    std::vector<ComparePair> pairs;
    bool guard_tripped = false;
};

CompareResult run_compare(const Scenario& scenario);

struct BeatsSeries {
    std::string name;
    std::vector<SpectrumPeak> peaks;
    double bin_width = 0.0;
    bool no_resolvable_beats = false;
};

struct BeatsResult {
    std::vector<BeatsSeries> series;
    bool bad_cavity_warning = false; // 2 R <= lambda: splitting unresolved
};

BeatsResult run_beats(const Scenario& scenario);

// ---- output -------------------------------------------------------------

std::string format_double(double value); // %.17g

void write_trajectory_csv(std::ostream& out, const SolveResult& result,
                          const std::vector<double>& times);
void write_sweep_csv(std::ostream& out, const Scenario& scenario, const SweepResult& result);
void write_sweep_summary_csv(std::ostream& out, const SweepResult& result);
void write_compare_csv(std::ostream& out, const CompareResult& result);
void write_beats_csv(std::ostream& out, const BeatsResult& result);

/// Machine-readable record of a run: normalized parameters, grid, solver
/// list, tolerances, and preset provenance.
std::string manifest_json(const Scenario& scenario,
                          const std::vector<std::string>& outputs,
                          const std::map<std::string, std::string>& extra = {});

} // namespace cavity
