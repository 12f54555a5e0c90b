#include "cavity/dispersive.hpp"

#include <algorithm>
#include <cmath>

#include "cavity/entanglement.hpp"
#include "cavity/general.hpp"

namespace cavity {

namespace {

double stark_shift(double rabi, double r, double delta) {
    const double num = rabi * rabi * r * r;
    if (num == 0.0) return 0.0;
    return num / delta;
}

// exp(-rate * t) that stays finite for rate = inf at t = 0
double decay_factor(double rate, double t) {
    return (t == 0.0) ? 1.0 : std::exp(-rate * t);
}

double clipped_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

} // namespace

EffectiveHamiltonian effective_hamiltonian(const SystemParams& params,
                                           double regime_threshold) {
    EffectiveHamiltonian h;
    h.stark_1 = stark_shift(params.rabi, params.r_1, params.delta_1);
    h.stark_2 = stark_shift(params.rabi, params.r_2, params.delta_2);
    const double num = params.rabi * params.rabi * params.r_1 * params.r_2;
    h.exchange = (num == 0.0)
                     ? 0.0
                     : 0.5 * num * (1.0 / params.delta_1 + 1.0 / params.delta_2);
    const double min_detuning = std::min(std::abs(params.delta_1), std::abs(params.delta_2));
    h.regime_warning = (min_detuning <= regime_threshold * params.rabi);
    return h;
}

DressedSpectrum dressed_spectrum(const SystemParams& params) {
    const double delta = params.common_detuning();
    const double rabi = params.rabi;
    const double split = std::sqrt(4.0 * rabi * rabi + delta * delta);

    DressedSpectrum d;
    d.omega_plus = 0.5 * (delta + split);
    d.omega_minus = 0.5 * (delta - split);
    d.omega_zero = delta;

    if (rabi == 0.0) {
        // decoupled limit: the block is diagonal
        d.state_plus = (delta >= 0.0) ? std::array<double, 2>{1.0, 0.0}
                                      : std::array<double, 2>{0.0, 1.0};
        d.state_minus = (delta >= 0.0) ? std::array<double, 2>{0.0, 1.0}
                                       : std::array<double, 2>{1.0, 0.0};
        return d;
    }
    const double np = std::hypot(rabi, d.omega_minus);
    const double nm = std::hypot(rabi, d.omega_plus);
    d.state_plus = {-rabi / np, d.omega_minus / np};
    d.state_minus = {-rabi / nm, d.omega_plus / nm};
    return d;
}

double population_beats(double t, const SystemParams& params) {
    const double delta = params.common_detuning();
    const double rabi = params.rabi;
    const double r1sq = params.r_1 * params.r_1;
    const double r2sq = params.r_2 * params.r_2;
    return r1sq * r1sq + 0.5 * r2sq * r2sq * (1.0 + std::cos(2.0 * rabi * t)) +
           2.0 * r1sq * r2sq * std::cos(rabi * t) * std::cos(0.5 * delta * t);
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::DispersiveDecaySingle: return "dispersive-decay-single";
        case Regime::DispersiveDecaySymmetric: return "dispersive-decay-symmetric";
        case Regime::DispersiveFactorized: return "dispersive-factorized";
        case Regime::BeatsSmallDetuning: return "beats-small-detuning";
        case Regime::SmallDetuningSingle: return "small-detuning-single";
        case Regime::FarDetuningSingle: return "far-detuning-single";
    }
    return "unknown";
}

Regime parse_regime(const std::string& name) {
    for (Regime r : {Regime::DispersiveDecaySingle, Regime::DispersiveDecaySymmetric,
                     Regime::DispersiveFactorized, Regime::BeatsSmallDetuning,
                     Regime::SmallDetuningSingle, Regime::FarDetuningSingle})
        if (name == regime_name(r)) return r;
    fail(ErrorCode::UnknownRegime, "regime", "unknown approximation regime '" + name + "'");
}

double approx_concurrence(double t, const InitialState& /*init*/,
                          const SystemParams& params, Regime regime) {
    if (t < 0.0)
        fail(ErrorCode::NegativeTime, "t", "approximations defined for t >= 0");
    const double delta = params.common_detuning();
    const double lambda = params.lambda;
    const double rabi = params.rabi;
    const double dispersive_rate = (rabi * rabi) / (delta * delta) * lambda;

    switch (regime) {
        case Regime::DispersiveDecaySingle:
        case Regime::FarDetuningSingle:
            return decay_factor(dispersive_rate, t);
        case Regime::DispersiveDecaySymmetric:
            return decay_factor(2.0 * dispersive_rate, t);
        case Regime::DispersiveFactorized: {
            const double e2 = decay_factor(2.0 * dispersive_rate, t);
            const double e4 = decay_factor(4.0 * dispersive_rate, t);
            const double osc =
                (e2 == 0.0) ? 0.0 : 2.0 * e2 * std::cos(2.0 * rabi * rabi / delta * t);
            return 0.5 * clipped_sqrt(1.0 + e4 - osc);
        }
        case Regime::BeatsSmallDetuning: {
            const double c = std::cos(rabi * t);
            const double c2 = c * c;
            return 0.5 * clipped_sqrt(1.0 + std::exp(-2.0 * lambda * t) * c2 * c2 -
                                      2.0 * std::exp(-lambda * t) * c2 * std::cos(delta * t));
        }
        case Regime::SmallDetuningSingle: {
            const double c = std::cos(rabi * t);
            const double s = std::sin(rabi * t);
            const double inner = c * c +
                                 (delta * delta + lambda * lambda) / (4.0 * rabi * rabi) * s * s -
                                 lambda / rabi * s * c;
            return std::exp(-0.5 * lambda * t) * clipped_sqrt(inner);
        }
    }
    fail(ErrorCode::UnknownRegime, "regime", "unhandled regime");
}

namespace {

void add_warning(RegimeCheck& check, const std::string& what) {
    check.ok = false;
    if (!check.message.empty()) check.message += "; ";
    check.message += what;
}

void check_single_qubit_coupling(RegimeCheck& check, const SystemParams& p) {
    if (std::min(std::abs(p.r_1), std::abs(p.r_2)) > 0.05)
        add_warning(check, "formula assumes a single coupled qubit (r1 = 0 or 1)");
}

void check_symmetric_coupling(RegimeCheck& check, const SystemParams& p) {
    if (std::abs(p.r_1 - M_SQRT1_2) > 0.05)
        add_warning(check, "formula assumes symmetric coupling r1 = 1/sqrt(2)");
}

void check_initial_entangled(RegimeCheck& check, const InitialState& init) {
    if (concurrence(init.c01, init.c02) < 0.95)
        add_warning(check, "formula assumes a maximally entangled initial state (s = 0)");
}

void check_initial_factorized(RegimeCheck& check, const InitialState& init) {
    if (concurrence(init.c01, init.c02) > 0.05)
        add_warning(check, "formula assumes a factorized initial state (s = 1)");
}

} // namespace

RegimeCheck check_regime(const InitialState& init, const SystemParams& params,
                         Regime regime, double regime_threshold) {
    RegimeCheck check;
    const double delta = std::abs(params.common_detuning());
    const bool dispersive = delta > regime_threshold * params.rabi;
    const bool good_cavity = params.rabi > regime_threshold * params.lambda;
    const bool small_detuning = delta < params.rabi / regime_threshold;

    switch (regime) {
        case Regime::DispersiveDecaySingle:
        case Regime::FarDetuningSingle:
            if (!dispersive) add_warning(check, "detuning is not large against the Rabi frequency");
            check_single_qubit_coupling(check, params);
            check_initial_entangled(check, init);
            break;
        case Regime::DispersiveDecaySymmetric:
            if (!dispersive) add_warning(check, "detuning is not large against the Rabi frequency");
            check_symmetric_coupling(check, params);
            check_initial_entangled(check, init);
            break;
        case Regime::DispersiveFactorized:
            if (!dispersive) add_warning(check, "detuning is not large against the Rabi frequency");
            check_symmetric_coupling(check, params);
            check_initial_factorized(check, init);
            break;
        case Regime::BeatsSmallDetuning:
            if (!good_cavity) add_warning(check, "formula assumes the good cavity limit");
            if (!small_detuning) add_warning(check, "formula assumes detuning small against the Rabi frequency");
            check_symmetric_coupling(check, params);
            check_initial_factorized(check, init);
            break;
        case Regime::SmallDetuningSingle:
            if (!good_cavity) add_warning(check, "formula assumes the good cavity limit");
            if (!small_detuning) add_warning(check, "formula assumes detuning small against the Rabi frequency");
            check_single_qubit_coupling(check, params);
            check_initial_entangled(check, init);
            break;
    }
    return check;
}

ApproxErrorReport approx_error_report(const SystemParams& params,
                                      const InitialState& init, Regime regime,
                                      const std::vector<double>& t_grid) {
    Trajectory exact = evolve_exact(t_grid, init, params);
    concurrence_trajectory(exact);

    ApproxErrorReport report;
    report.regime = check_regime(init, params, regime);

    double sumsq = 0.0;
    double max_exact = -1.0, max_approx = -1.0;
    double argmax_exact = 0.0, argmax_approx = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double approx = approx_concurrence(t_grid[i], init, params, regime);
        const double diff = std::abs(approx - exact.concurrence[i]);
        report.sup_norm = std::max(report.sup_norm, diff);
        sumsq += diff * diff;
        if (exact.concurrence[i] > max_exact) {
            max_exact = exact.concurrence[i];
            argmax_exact = t_grid[i];
        }
        if (approx > max_approx) {
            max_approx = approx;
            argmax_approx = t_grid[i];
        }
    }
    report.l2 = std::sqrt(sumsq / static_cast<double>(t_grid.size()));
    report.argmax_shift = std::abs(argmax_approx - argmax_exact);
    return report;
}

} // namespace cavity
