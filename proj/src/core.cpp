#include "cavity/core.hpp"

#include <algorithm>
#include <cmath>

namespace cavity {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveLinewidth: return "NonPositiveLinewidth";
        case ErrorCode::ZeroCoupling: return "ZeroCoupling";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::OutOfRangeSeparability: return "OutOfRangeSeparability";
        case ErrorCode::UnnormalizedState: return "UnnormalizedState";
        case ErrorCode::NegativeLag: return "NegativeLag";
        case ErrorCode::NegativeTime: return "NegativeTime";
        case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
        case ErrorCode::SupernormalState: return "SupernormalState";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::UnknownRegime: return "UnknownRegime";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
    }
    return "UnknownError";
}

double SystemParams::equal_detuning_tolerance() const {
    return 1e-12 * std::max({lambda, std::abs(delta_1), std::abs(delta_2)});
}

bool SystemParams::has_equal_detunings() const {
    return std::abs(delta_21) < equal_detuning_tolerance();
}

double SystemParams::common_detuning() const {
    if (!has_equal_detunings())
        fail(ErrorCode::ScenarioMismatch, "delta_21",
             "common detuning requires delta_1 == delta_2");
    return delta_1;
}

double SystemParams::generalized_rabi() const {
    const double delta = common_detuning();
    return std::sqrt(4.0 * rabi * rabi + delta * delta);
}

SystemParams SystemParams::normalized() const {
    return params_new(omega_1 / lambda, omega_2 / lambda, omega_c / lambda,
                      1.0, w_weight / lambda, alpha_1, alpha_2);
}

SystemParams params_new(double omega_1, double omega_2, double omega_c,
                        double lambda, double w_weight,
                        double alpha_1, double alpha_2) {
    if (!(lambda > 0.0))
        fail(ErrorCode::NonPositiveLinewidth, "lambda", "lambda must be > 0");
    if (w_weight < 0.0)
        fail(ErrorCode::NegativeWeight, "w_weight", "W must be >= 0");
    const double alpha_t = std::hypot(alpha_1, alpha_2);
    if (alpha_t == 0.0)
        fail(ErrorCode::ZeroCoupling, "alpha", "(alpha_1, alpha_2) must not both be zero");

    SystemParams p;
    p.lambda = lambda;
    p.w_weight = w_weight;
    p.omega_c = omega_c;
    p.omega_1 = omega_1;
    p.omega_2 = omega_2;
    p.alpha_1 = alpha_1;
    p.alpha_2 = alpha_2;
    p.delta_1 = omega_1 - omega_c;
    p.delta_2 = omega_2 - omega_c;
    p.delta_21 = p.delta_2 - p.delta_1;
    p.alpha_t = alpha_t;
    p.r_1 = alpha_1 / alpha_t;
    p.r_2 = alpha_2 / alpha_t;
    p.rabi = w_weight * alpha_t;
    return p;
}

SystemParams params_lambda_units(double delta_1, double delta_2, double big_r,
                                 double r_1, double lambda) {
    if (r_1 < 0.0 || r_1 > 1.0)
        fail(ErrorCode::InvalidScenario, "r1", "r_1 must lie in [0, 1]");
    const double r_2 = std::sqrt(std::max(0.0, 1.0 - r_1 * r_1));
    return params_new(delta_1 * lambda, delta_2 * lambda, 0.0, lambda,
                      big_r * lambda, r_1, r_2);
}

InitialState initial_state_from_s_phi(double s, double phi) {
    if (s < -1.0 || s > 1.0)
        fail(ErrorCode::OutOfRangeSeparability, "s", "separability parameter must lie in [-1, 1]");
    const double c01 = std::sqrt((1.0 - s) / 2.0);
    const double c02 = std::sqrt((1.0 + s) / 2.0);
    return InitialState{Complex(c01, 0.0), std::polar(c02, phi)};
}

InitialState initial_state_from_amplitudes(Complex c01, Complex c02) {
    const double norm = std::norm(c01) + std::norm(c02);
    if (std::abs(norm - 1.0) > 1e-9)
        fail(ErrorCode::UnnormalizedState, "init",
             "|c01|^2 + |c02|^2 must equal 1");
    const double scale = 1.0 / std::sqrt(norm);
    return InitialState{c01 * scale, c02 * scale};
}

std::vector<double> uniform_grid(double t_max, std::size_t n) {
    if (!(t_max > 0.0))
        fail(ErrorCode::InvalidScenario, "tmax", "t_max must be > 0");
    if (n < 2)
        fail(ErrorCode::InvalidScenario, "points", "grid needs at least 2 points");
    std::vector<double> times(n);
    const double dt = t_max / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        times[i] = dt * static_cast<double>(i);
    times.back() = t_max;
    return times;
}

void validate_trajectory(const Trajectory& traj) {
    if (traj.times.empty() || traj.times.front() != 0.0)
        fail(ErrorCode::InvalidScenario, "times", "trajectory must start at t = 0");
    for (std::size_t i = 1; i < traj.times.size(); ++i)
        if (!(traj.times[i] > traj.times[i - 1]))
            fail(ErrorCode::InvalidScenario, "times", "times must be strictly increasing");
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.qubit_norm(i) > 1.0 + 1e-9)
            fail(ErrorCode::SupernormalState, "trajectory",
                 "|c1|^2 + |c2|^2 exceeds 1");
}

double spectral_density(double omega, const SystemParams& params) {
    const double d = omega - params.omega_c;
    const double w2 = params.w_weight * params.w_weight;
    return w2 / M_PI * params.lambda / (d * d + params.lambda * params.lambda);
}

Complex correlation_function(double tau, const SystemParams& params) {
    if (tau < 0.0)
        fail(ErrorCode::NegativeLag, "tau", "correlation lag must be >= 0");
    const double w2 = params.w_weight * params.w_weight;
    return Complex(w2 * std::exp(-params.lambda * tau), 0.0);
}

} // namespace cavity
