#pragma once

#include <complex>
#include <vector>

#include "cavity/errors.hpp"

namespace cavity {

using Complex = std::complex<double>;

/// Physical parameters of two qubits coupled to a common Lorentzian
/// reservoir (lossy cavity), plus the derived constants everything else
/// is written in terms of. Immutable after construction.
///
/// All rates and frequencies share one unit system chosen by the caller;
/// the CLI works in units of the cavity linewidth (lambda = 1) and times
/// in 1/lambda, which is also how every preset is expressed.
struct SystemParams {
    // inputs
    double lambda = 1.0;    // cavity loss rate, Lorentzian half-width
    double w_weight = 0.0;  // Lorentzian weight W
    double omega_c = 0.0;   // cavity fundamental frequency
    double omega_1 = 0.0;   // qubit 1 transition frequency
    double omega_2 = 0.0;   // qubit 2 transition frequency
    double alpha_1 = 0.0;   // dimensionless coupling, qubit 1
    double alpha_2 = 0.0;   // dimensionless coupling, qubit 2

    // derived
    double delta_1 = 0.0;   // omega_1 - omega_c
    double delta_2 = 0.0;   // omega_2 - omega_c
    double delta_21 = 0.0;  // omega_2 - omega_1
    double alpha_t = 0.0;   // sqrt(alpha_1^2 + alpha_2^2)
    double r_1 = 0.0;       // alpha_1 / alpha_t
    double r_2 = 0.0;       // alpha_2 / alpha_t
    double rabi = 0.0;      // vacuum Rabi frequency W * alpha_t

    /// Tolerance under which delta_1 == delta_2 is treated as exact.
    /// Near-equal detunings outside it belong to the general solver.
    double equal_detuning_tolerance() const;
    bool has_equal_detunings() const;

    /// Common detuning delta; only defined for delta_1 == delta_2.
    double common_detuning() const;

    /// Generalized Rabi frequency sqrt(4 rabi^2 + delta^2); requires
    /// delta_1 == delta_2.
    double generalized_rabi() const;

    /// Copy with all rates divided by lambda (lambda-unit view).
    SystemParams normalized() const;
};

/// Validating constructor for SystemParams.
SystemParams params_new(double omega_1, double omega_2, double omega_c,
                        double lambda, double w_weight,
                        double alpha_1, double alpha_2);

/// Convenience constructor in lambda units: detunings delta_j = omega_j -
/// omega_c, coupling ratio R = rabi/lambda, relative strength r_1.
/// Sets alpha_t = 1, so W = R * lambda.
SystemParams params_lambda_units(double delta_1, double delta_2, double big_r,
                                 double r_1, double lambda = 1.0);

/// One-excitation qubit amplitudes at t = 0; |c01|^2 + |c02|^2 = 1.
struct InitialState {
    Complex c01{0.0, 0.0};
    Complex c02{0.0, 0.0};
};

/// Build the initial state from the separability parameter s in [-1, 1]
/// and relative phase phi: c01 = sqrt((1-s)/2), c02 = sqrt((1+s)/2) e^{i phi}.
/// The initial concurrence is sqrt(1 - s^2).
InitialState initial_state_from_s_phi(double s, double phi);

/// Validates normalization (1e-9) and renormalizes exactly.
InitialState initial_state_from_amplitudes(Complex c01, Complex c02);

/// Time grid plus amplitude series produced by the solvers. `b` (collective
/// pseudomode amplitude) and `concurrence` are filled only by paths that
/// compute them; empty means absent.
struct Trajectory {
    std::vector<double> times;
    std::vector<Complex> c1;
    std::vector<Complex> c2;
    std::vector<Complex> b;
    std::vector<double> concurrence;

    std::size_t size() const { return times.size(); }
    double qubit_norm(std::size_t i) const {
        return std::norm(c1[i]) + std::norm(c2[i]);
    }
    /// |c1|^2 + |c2|^2 + |b|^2; requires b to be present.
    double total_norm(std::size_t i) const {
        return qubit_norm(i) + std::norm(b[i]);
    }
};

/// Uniform grid 0..t_max with n points (n >= 2).
std::vector<double> uniform_grid(double t_max, std::size_t n);

/// Checks grid ordering and the amplitude norm bound; throws on violation.
void validate_trajectory(const Trajectory& traj);

/// Lorentzian reservoir spectral density
///   J(omega) = (W^2/pi) * lambda / ((omega - omega_c)^2 + lambda^2).
double spectral_density(double omega, const SystemParams& params);

/// Reservoir correlation function f(tau) = W^2 exp(-lambda tau) for
/// tau >= 0 (Fourier transform of J evaluated in closed form).
Complex correlation_function(double tau, const SystemParams& params);

} // namespace cavity
