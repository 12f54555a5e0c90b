#include "cavity/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <omp.h>

#include "cavity/entanglement.hpp"
#include "cavity/general.hpp"
#include "cavity/subradiant.hpp"
#include "cavity/threads.hpp"

namespace cavity {

using nlohmann::json;

std::string SolverChoice::label() const {
    switch (kind) {
        case SolverKind::Closed: return "closed";
        case SolverKind::Exact: return "exact";
        case SolverKind::Rk4: return "rk4";
        case SolverKind::Volterra: return "volterra";
        case SolverKind::Approx: return std::string("approx:") + regime_name(regime);
    }
    return "unknown";
}

SolverChoice parse_solver(const std::string& text) {
    if (text == "closed") return {SolverKind::Closed};
    if (text == "exact") return {SolverKind::Exact};
    if (text == "rk4") return {SolverKind::Rk4};
    if (text == "volterra") return {SolverKind::Volterra};
    if (text.rfind("approx:", 0) == 0)
        return {SolverKind::Approx, parse_regime(text.substr(7))};
    fail(ErrorCode::InvalidScenario, "solver", "unknown solver '" + text + "'");
}

SystemParams Scenario::params() const {
    return params_lambda_units(delta_1, delta_2, big_r, r_1, lambda);
}

InitialState Scenario::initial_state() const {
    return init_from_s_phi ? initial_state_from_s_phi(s, phi)
                           : initial_state_from_amplitudes(c01, c02);
}

std::vector<double> Scenario::grid() const { return uniform_grid(t_max, n_points); }

IntegratorConfig Scenario::integrator(IntegratorMethod method) const {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.method = method;
    cfg.max_time = t_max;
    return cfg;
}

void validate_scenario(const Scenario& scenario) {
    if (scenario.n_points < 2)
        fail(ErrorCode::InvalidScenario, "points", "need at least 2 grid points");
    if (!(scenario.t_max > 0.0))
        fail(ErrorCode::InvalidScenario, "tmax", "tmax must be > 0");
    if (scenario.solvers.empty())
        fail(ErrorCode::InvalidScenario, "solver", "select at least one solver");
    if (scenario.r_1 < 0.0 || scenario.r_1 > 1.0)
        fail(ErrorCode::InvalidScenario, "r1", "r1 must lie in [0, 1]");
    if (scenario.big_r < 0.0)
        fail(ErrorCode::InvalidScenario, "R", "R must be >= 0");
    if (scenario.init_from_s_phi && (scenario.s < -1.0 || scenario.s > 1.0))
        fail(ErrorCode::InvalidScenario, "s", "s must lie in [-1, 1]");
    if (!(scenario.guard > 0.0))
        fail(ErrorCode::InvalidScenario, "guard", "guard must be > 0");
    const SystemParams p = scenario.params(); // validates couplings
    for (const SolverChoice& choice : scenario.solvers)
        if (choice.kind == SolverKind::Closed && !p.has_equal_detunings())
            fail(ErrorCode::InvalidScenario, "solver",
                 "the closed-form solver requires delta1 == delta2");
    if (scenario.solvers.front().kind == SolverKind::Approx)
        fail(ErrorCode::InvalidScenario, "solver",
             "the first solver must produce amplitudes (closed/exact/rk4/volterra)");
}

namespace {

const double kSqrt3Over2 = std::sqrt(3.0) / 2.0;

Scenario make_preset(std::string name, double d1, double d2, double big_r, double r1,
                     double s, double phi, double t_max, std::size_t n_points,
                     std::string provenance) {
    Scenario sc;
    sc.name = std::move(name);
    sc.delta_1 = d1;
    sc.delta_2 = d2;
    sc.big_r = big_r;
    sc.r_1 = r1;
    sc.s = s;
    sc.phi = phi;
    sc.t_max = t_max;
    sc.n_points = n_points;
    sc.provenance = std::move(provenance);
    return sc;
}

} // namespace

const std::vector<Scenario>& presets() {
    static const std::vector<Scenario> list = [] {
        std::vector<Scenario> v;
        v.push_back(make_preset(
            "fig1-resonant", 0.0, 0.0, 0.1, kSqrt3Over2, 0.0, 0.0, 300.0, 3001,
            "bad cavity limit R = 0.1, s = 0, phi = 0, resonant limit (delta = 0, "
            "documented reading of the unlabeled left panel), r1 = sqrt(3)/2"));
        v.push_back(make_preset(
            "fig1-detuned", 0.7, 0.7, 0.1, kSqrt3Over2, 0.0, 0.0, 400.0, 4001,
            "bad cavity limit R = 0.1, s = 0, phi = 0, delta1 = delta2 = 0.7 lambda, "
            "r1 = sqrt(3)/2"));
        v.push_back(make_preset(
            "fig2-dispersive-bad-cavity", 10.0, 10.0, 0.1, kSqrt3Over2, 1.0, 0.0,
            6000.0, 6001,
            "bad cavity limit R = 0.1, s = 1, dispersive regime delta1 = delta2 = "
            "10 lambda, r1 = sqrt(3)/2 (maximal stationary value)"));
        v.push_back(make_preset(
            "fig3-beats", 0.7, 0.7, 10.0, kSqrt3Over2, 1.0, 0.0, 10.0, 4096,
            "good cavity limit R = 10, s = 1, delta1 = delta2 = 0.7 lambda, "
            "r1 = sqrt(3)/2; entanglement beats"));
        v.push_back(make_preset(
            "fig5-small-detuning", 0.7, 0.7, 10.0, M_SQRT1_2, 0.0, 0.0, 10.0, 4096,
            "good cavity limit R = 10, s = 0, phi = 0, delta1 = delta2 = 0.7 lambda, "
            "r1 = 1/sqrt(2)"));
        v.push_back(make_preset(
            "fig5-far-detuning", 50.0, 50.0, 10.0, 1.0, 0.0, 0.0, 75.0, 4096,
            "good cavity limit R = 10, s = 0, phi = 0, delta1 = delta2 = 50 lambda, "
            "one coupled atom r1 = 1"));
        v.push_back(make_preset(
            "fig6-symmetric-detuning", -0.7, 0.7, 0.1, M_SQRT1_2, 0.0, 0.0, 1500.0, 3001,
            "bad cavity limit R = 0.1, s = 0, phi = 0, symmetric detuning "
            "delta1 = -0.7 lambda, delta2 = 0.7 lambda, r1 = 1/sqrt(2)"));
        v.push_back(make_preset(
            "fig6-asymmetric-detuning", -0.5, 0.9, 0.1, M_SQRT1_2, 0.0, 0.0, 1500.0, 3001,
            "bad cavity limit R = 0.1, s = 0, phi = 0, asymmetric detuning "
            "delta1 = -0.5 lambda, delta2 = 0.9 lambda, r1 = 1/sqrt(2)"));
        v.push_back(make_preset(
            "beats-population-lossless", 3.0, 3.0, 10.0, M_SQRT1_2, 1.0, 0.0, 40.0, 4096,
            "good cavity limit R = 10, delta = 0.3 R = 3 lambda, r1 = 1/sqrt(2), "
            "init = (0, 1); lossless population beats at 2R and R +/- delta/2"));
        v.push_back(make_preset(
            "beats-bad-cavity", 0.7, 0.7, 0.1, M_SQRT1_2, 0.0, 0.0, 200.0, 4096,
            "bad cavity limit R = 0.1, delta1 = delta2 = 0.7 lambda, s = 0, phi = 0; "
            "no resolvable beats since 2R < lambda"));
        return v;
    }();
    return list;
}

std::optional<Scenario> find_preset(const std::string& name) {
    for (const Scenario& sc : presets())
        if (sc.name == name) return sc;
    return std::nullopt;
}

std::map<std::string, std::string> read_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string text) {
            const auto begin = text.find_first_not_of(" \t\r");
            if (begin == std::string::npos) return std::string();
            const auto end = text.find_last_not_of(" \t\r");
            return text.substr(begin, end - begin + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidScenario, "config",
                 "line " + std::to_string(line_no) + " is not 'key = value'");
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

namespace {

double parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (...) {
        fail(ErrorCode::InvalidScenario, key, "cannot parse number '" + text + "'");
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        const auto end = item.find_last_not_of(" \t");
        if (begin != std::string::npos) out.push_back(item.substr(begin, end - begin + 1));
    }
    return out;
}

} // namespace

void apply_config(Scenario& scenario, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "name") scenario.name = value;
        else if (key == "delta1") scenario.delta_1 = parse_number(key, value);
        else if (key == "delta2") scenario.delta_2 = parse_number(key, value);
        else if (key == "delta") scenario.delta_1 = scenario.delta_2 = parse_number(key, value);
        else if (key == "R") scenario.big_r = parse_number(key, value);
        else if (key == "r1") scenario.r_1 = parse_number(key, value);
        else if (key == "s") { scenario.s = parse_number(key, value); scenario.init_from_s_phi = true; }
        else if (key == "phi") { scenario.phi = parse_number(key, value); scenario.init_from_s_phi = true; }
        else if (key == "tmax") scenario.t_max = parse_number(key, value);
        else if (key == "points") scenario.n_points = static_cast<std::size_t>(parse_number(key, value));
        else if (key == "dt") scenario.dt = parse_number(key, value);
        else if (key == "guard") scenario.guard = parse_number(key, value);
        else if (key == "solvers") {
            scenario.solvers.clear();
            for (const std::string& item : split_list(value))
                scenario.solvers.push_back(parse_solver(item));
        } else {
            fail(ErrorCode::InvalidScenario, "config", "unknown key '" + key + "'");
        }
    }
}

namespace {

Trajectory solve_amplitudes(const Scenario& scenario, const SolverChoice& choice,
                            const std::vector<double>& times) {
    const SystemParams p = scenario.params();
    const InitialState init = scenario.initial_state();
    switch (choice.kind) {
        case SolverKind::Closed: return evolve_closed(times, init, p);
        case SolverKind::Exact: return evolve_exact(times, init, p);
        case SolverKind::Rk4:
            return evolve_rk4(times, init, p, scenario.integrator(IntegratorMethod::Rk4));
        case SolverKind::Volterra:
            return evolve_volterra(times, init, p,
                                   scenario.integrator(IntegratorMethod::VolterraTrapezoid));
        case SolverKind::Approx: break;
    }
    fail(ErrorCode::InvalidScenario, "solver", "approx solvers produce no amplitudes");
}

} // namespace

SolveResult run_solve(const Scenario& scenario) {
    validate_scenario(scenario);
    const auto times = scenario.grid();

    SolveResult result;
    result.primary = scenario.solvers.front();
    result.trajectory = solve_amplitudes(scenario, result.primary, times);
    concurrence_trajectory(result.trajectory);

    const SystemParams p = scenario.params();
    const InitialState init = scenario.initial_state();
    for (std::size_t i = 1; i < scenario.solvers.size(); ++i) {
        const SolverChoice& choice = scenario.solvers[i];
        if (choice.kind != SolverKind::Approx) continue;
        std::vector<double> series(times.size());
        for (std::size_t k = 0; k < times.size(); ++k)
            series[k] = approx_concurrence(times[k], init, p, choice.regime);
        result.approx_series.emplace_back(choice.regime, std::move(series));
    }
    return result;
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "delta") return SweepAxis::Delta;
    if (name == "r1") return SweepAxis::R1;
    if (name == "s") return SweepAxis::S;
    if (name == "phi") return SweepAxis::Phi;
    if (name == "R") return SweepAxis::BigR;
    fail(ErrorCode::InvalidScenario, "axis", "unknown sweep axis '" + name + "'");
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Delta: return "delta";
        case SweepAxis::R1: return "r1";
        case SweepAxis::S: return "s";
        case SweepAxis::Phi: return "phi";
        case SweepAxis::BigR: return "R";
    }
    return "unknown";
}

namespace {

Scenario at_axis_value(const Scenario& base, SweepAxis axis, double value) {
    Scenario sc = base;
    switch (axis) {
        case SweepAxis::Delta: sc.delta_1 = sc.delta_2 = value; break;
        case SweepAxis::R1: sc.r_1 = value; break;
        case SweepAxis::S: sc.s = value; sc.init_from_s_phi = true; break;
        case SweepAxis::Phi: sc.phi = value; sc.init_from_s_phi = true; break;
        case SweepAxis::BigR: sc.big_r = value; break;
    }
    return sc;
}

} // namespace

SweepResult run_sweep(const Scenario& scenario, SweepAxis axis,
                      const std::vector<double>& values) {
    if (values.empty())
        fail(ErrorCode::InvalidScenario, "values", "sweep needs at least one value");
    for (double v : values) validate_scenario(at_axis_value(scenario, axis, v));

    SweepResult result;
    result.axis = axis;
    result.points.resize(values.size());

    std::exception_ptr error;
    const std::int64_t n = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            const Scenario sc = at_axis_value(scenario, axis, values[i]);
            SweepPoint& point = result.points[i];
            point.value = values[i];
            point.solve = run_solve(sc);
            point.stationary_concurrence =
                stationary_concurrence(sc.initial_state(), sc.params());
            const auto& conc = point.solve.trajectory.concurrence;
            const auto max_it = std::max_element(conc.begin(), conc.end());
            point.max_concurrence = *max_it;
            point.argmax_time =
                point.solve.trajectory.times[std::distance(conc.begin(), max_it)];
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return result;
}

namespace {

struct SolverSeries {
    std::string label;
    bool has_amplitudes = false;
    Trajectory traj;               // amplitude solvers
    std::vector<double> concurrence;
};

} // namespace

CompareResult run_compare(const Scenario& scenario) {
    validate_scenario(scenario);
    if (scenario.solvers.size() < 2)
        fail(ErrorCode::InvalidScenario, "solver", "compare needs at least two solvers");
    const auto times = scenario.grid();
    const SystemParams p = scenario.params();
    const InitialState init = scenario.initial_state();

    std::vector<SolverSeries> series;
    for (const SolverChoice& choice : scenario.solvers) {
        SolverSeries s;
        s.label = choice.label();
        if (choice.kind == SolverKind::Approx) {
            s.concurrence.resize(times.size());
            for (std::size_t k = 0; k < times.size(); ++k)
                s.concurrence[k] = approx_concurrence(times[k], init, p, choice.regime);
        } else {
            s.has_amplitudes = true;
            s.traj = solve_amplitudes(scenario, choice, times);
            concurrence_trajectory(s.traj);
            s.concurrence = s.traj.concurrence;
        }
        series.push_back(std::move(s));
    }

    CompareResult result;
    for (std::size_t a = 0; a < series.size(); ++a) {
        for (std::size_t b = a + 1; b < series.size(); ++b) {
            ComparePair pair;
            pair.solver_a = series[a].label;
            pair.solver_b = series[b].label;
            pair.has_amplitudes = series[a].has_amplitudes && series[b].has_amplitudes;

            double amp_sumsq = 0.0, conc_sumsq = 0.0;
            for (std::size_t k = 0; k < times.size(); ++k) {
                if (pair.has_amplitudes) {
                    const double d1 = std::abs(series[a].traj.c1[k] - series[b].traj.c1[k]);
                    const double d2 = std::abs(series[a].traj.c2[k] - series[b].traj.c2[k]);
                    pair.sup_amplitude = std::max({pair.sup_amplitude, d1, d2});
                    amp_sumsq += d1 * d1 + d2 * d2;
                }
                const double dc = std::abs(series[a].concurrence[k] - series[b].concurrence[k]);
                pair.sup_concurrence = std::max(pair.sup_concurrence, dc);
                conc_sumsq += dc * dc;
            }
            const double denom = static_cast<double>(times.size());
            pair.l2_amplitude = std::sqrt(amp_sumsq / denom);
            pair.l2_concurrence = std::sqrt(conc_sumsq / denom);

            if (pair.has_amplitudes) {
                const bool volterra = pair.solver_a == "volterra" || pair.solver_b == "volterra";
                pair.guarded = true;
                pair.guard_tolerance = volterra ? 10.0 * scenario.guard : scenario.guard;
                pair.tripped = pair.sup_amplitude > pair.guard_tolerance;
                result.guard_tripped = result.guard_tripped || pair.tripped;
            }
            result.pairs.push_back(pair);
        }
    }
    return result;
}

BeatsResult run_beats(const Scenario& scenario) {
    validate_scenario(scenario);
    const SystemParams p = scenario.params();
    const auto times = scenario.grid();
    require_window(times, slowest_expected_component(p));

    BeatsResult result;
    result.bad_cavity_warning = (2.0 * p.rabi <= p.lambda);

    SolveResult solve = run_solve(scenario);
    std::vector<double> population(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        population[i] = std::norm(solve.trajectory.c2[i]);

    auto analyze = [&](std::string name, const std::vector<double>& values) {
        BeatsSeries out;
        out.name = std::move(name);
        const PowerSpectrum spec = power_spectrum(times, values);
        out.bin_width = spec.bin_width;
        out.peaks = find_spectrum_peaks(spec);
        out.no_resolvable_beats = out.peaks.empty();
        result.series.push_back(std::move(out));
    };

    analyze("concurrence", solve.trajectory.concurrence);
    analyze("population", population);
    if (p.has_equal_detunings()) {
        std::vector<double> lossless(times.size());
        for (std::size_t i = 0; i < times.size(); ++i)
            lossless[i] = population_beats(times[i], p);
        analyze("population_lossless", lossless);
    }
    return result;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_trajectory_csv(std::ostream& out, const SolveResult& result,
                          const std::vector<double>& times) {
    out << "lambda_t,re_c1,im_c1,re_c2,im_c2,concurrence";
    for (const auto& [regime, series] : result.approx_series)
        out << ",approx_" << regime_name(regime);
    out << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& traj = result.trajectory;
        out << format_double(times[i]) << ',' << format_double(traj.c1[i].real()) << ','
            << format_double(traj.c1[i].imag()) << ',' << format_double(traj.c2[i].real())
            << ',' << format_double(traj.c2[i].imag()) << ','
            << format_double(traj.concurrence[i]);
        for (const auto& [regime, series] : result.approx_series)
            out << ',' << format_double(series[i]);
        out << "\n";
    }
}

void write_sweep_csv(std::ostream& out, const Scenario& scenario, const SweepResult& result) {
    out << "axis,value,lambda_t,re_c1,im_c1,re_c2,im_c2,concurrence\n";
    const auto times = scenario.grid();
    for (const SweepPoint& point : result.points) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto& traj = point.solve.trajectory;
            out << axis_name(result.axis) << ',' << format_double(point.value) << ','
                << format_double(times[i]) << ',' << format_double(traj.c1[i].real()) << ','
                << format_double(traj.c1[i].imag()) << ',' << format_double(traj.c2[i].real())
                << ',' << format_double(traj.c2[i].imag()) << ','
                << format_double(traj.concurrence[i]) << "\n";
        }
    }
}

void write_sweep_summary_csv(std::ostream& out, const SweepResult& result) {
    out << "axis,value,stationary_concurrence,max_concurrence,argmax_lambda_t\n";
    for (const SweepPoint& point : result.points)
        out << axis_name(result.axis) << ',' << format_double(point.value) << ','
            << format_double(point.stationary_concurrence) << ','
            << format_double(point.max_concurrence) << ','
            << format_double(point.argmax_time) << "\n";
}

void write_compare_csv(std::ostream& out, const CompareResult& result) {
    out << "solver_a,solver_b,sup_amplitude,l2_amplitude,sup_concurrence,l2_concurrence,"
           "guard_tolerance,guard_tripped\n";
    for (const ComparePair& pair : result.pairs) {
        out << pair.solver_a << ',' << pair.solver_b << ',';
        if (pair.has_amplitudes)
            out << format_double(pair.sup_amplitude) << ',' << format_double(pair.l2_amplitude);
        else
            out << ',';
        out << ',' << format_double(pair.sup_concurrence) << ','
            << format_double(pair.l2_concurrence) << ',';
        if (pair.guarded) out << format_double(pair.guard_tolerance);
        out << ',' << (pair.tripped ? "1" : "0") << "\n";
    }
}

void write_beats_csv(std::ostream& out, const BeatsResult& result) {
    out << "series,frequency,amplitude,bin\n";
    for (const BeatsSeries& series : result.series)
        for (const SpectrumPeak& peak : series.peaks)
            out << series.name << ',' << format_double(peak.frequency) << ','
                << format_double(peak.amplitude) << ',' << peak.bin << "\n";
}

std::string manifest_json(const Scenario& scenario,
                          const std::vector<std::string>& outputs,
                          const std::map<std::string, std::string>& extra) {
    const SystemParams p = scenario.params();
    const InitialState init = scenario.initial_state();
    json m;
    m["name"] = scenario.name;
    m["version"] = "0.1.0";
    m["parameters"] = {
        {"lambda", p.lambda},       {"w_weight", p.w_weight},
        {"omega_c", p.omega_c},     {"omega_1", p.omega_1},
        {"omega_2", p.omega_2},     {"alpha_1", p.alpha_1},
        {"alpha_2", p.alpha_2},     {"delta_1", p.delta_1},
        {"delta_2", p.delta_2},     {"delta_21", p.delta_21},
        {"alpha_t", p.alpha_t},     {"r_1", p.r_1},
        {"r_2", p.r_2},             {"rabi", p.rabi},
        {"R", p.rabi / p.lambda},
    };
    m["initial_state"] = {
        {"from_s_phi", scenario.init_from_s_phi},
        {"s", scenario.s},
        {"phi", scenario.phi},
        {"c01", {init.c01.real(), init.c01.imag()}},
        {"c02", {init.c02.real(), init.c02.imag()}},
    };
    m["grid"] = {{"t_max", scenario.t_max}, {"n_points", scenario.n_points}};
    std::vector<std::string> solver_labels;
    for (const SolverChoice& choice : scenario.solvers)
        solver_labels.push_back(choice.label());
    m["solvers"] = solver_labels;
    m["tolerances"] = {{"guard", scenario.guard},
                       {"volterra_guard_factor", 10.0},
                       {"dt_request", scenario.dt}};
    m["provenance"] = scenario.provenance;
    m["deterministic"] = true;
    m["threads"] = worker_count();
    m["outputs"] = outputs;
    for (const auto& [key, value] : extra) m[key] = value;
    return m.dump(2) + "\n";
}

} // namespace cavity
