#pragma once

#include <array>

#include <Eigen/Dense>

#include "cavity/core.hpp"

namespace cavity {

/// Generator of the exact linear system for the rotated amplitudes
/// v = (c1 e^{-i delta_1 t}, c2 e^{-i delta_2 t}, b), where b is the
/// collective cavity (pseudomode) amplitude:
///
///   dv/dt = m v,  m = [[-i d1,    0,   -i W a1],
///                      [   0,  -i d2,  -i W a2],
///                      [-i W a1, -i W a2,  -lambda]]
///
/// Eliminating b reproduces the memory-kernel equations with
/// f(tau) = W^2 e^{-lambda tau}.
struct PseudomodeGenerator {
    Eigen::Matrix3cd m;
};

PseudomodeGenerator generator_matrix(const SystemParams& params);

/// Spectral decomposition of the generator, computed once and shared
/// read-only across grid evaluations. When the spectrum is close to
/// degenerate the solver ignores it and uses a scaling-and-squaring
/// series exponential instead.
struct GeneratorDecomposition {
    Eigen::Matrix3cd m;
    Eigen::Vector3cd eigenvalues;
    Eigen::Matrix3cd eigenvectors;
    Eigen::Matrix3cd eigenvectors_inverse;
    bool near_degenerate = false;
};

GeneratorDecomposition decompose_generator(const SystemParams& params);

/// Largest real part over the generator spectrum (< 0 means everything
/// decays).
double spectral_abscissa(const GeneratorDecomposition& dec);

/// Exact amplitudes on a grid via the spectral decomposition; includes
/// the pseudomode series b(t). OpenMP across grid points.
Trajectory evolve_exact(const std::vector<double>& times,
                        const InitialState& init, const SystemParams& params);
/// Serial reference with identical per-point arithmetic.
Trajectory evolve_exact_serial(const std::vector<double>& times,
                               const InitialState& init, const SystemParams& params);

/// Coefficients of the monic cubic s^3 + a s^2 + b s + c = 0 satisfied by
/// the Laplace poles of c_j (j = 1 or 2), together with its roots ordered
/// by descending real part (ties by ascending imaginary part):
///   A_{1,2} = lambda + i (delta_{2,1} - 2 delta_{1,2})
///   B_{1,2} = R^2 - delta_{1,2}^2 + delta_1 delta_2 + i (delta_{2,1} - delta_{1,2}) lambda
///   C_{1,2} = i R^2 r_{1,2}^2 (delta_{2,1} - delta_{1,2})
/// The roots equal the generator eigenvalues shifted by +i delta_j.
struct CubicCoefficients {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    std::array<Complex, 3> roots{};
};

CubicCoefficients cubic_coefficients(const SystemParams& params, int qubit_index);

/// Roots of the monic cubic via companion-matrix eigenvalues plus one
/// Newton polish per root; an exactly zero constant term factors out an
/// exact zero root. Ordering as in CubicCoefficients.
std::array<Complex, 3> cubic_roots(Complex a, Complex b, Complex c);

namespace detail {
/// exp(m t) by scaling-and-squaring Taylor series; fallback path for
/// near-degenerate spectra and the reference in decomposition tests.
Eigen::Matrix3cd expm_series(const Eigen::Matrix3cd& m, double t);
} // namespace detail

} // namespace cavity
