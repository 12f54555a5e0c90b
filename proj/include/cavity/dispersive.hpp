#pragma once

#include <array>
#include <string>

#include "cavity/core.hpp"

namespace cavity {

/// Second-order effective Hamiltonian for qubits far detuned from the
/// cavity: Stark shifts R^2 r_j^2 / delta_j plus a cavity-mediated
/// exchange coupling (R^2 r1 r2 / 2)(1/delta_1 + 1/delta_2), which
/// vanishes for symmetric detunings delta_1 = -delta_2.
struct EffectiveHamiltonian {
    double stark_1 = 0.0;
    double stark_2 = 0.0;
    double exchange = 0.0;
    bool regime_warning = false; // min |delta_j| <= threshold * rabi
};

EffectiveHamiltonian effective_hamiltonian(const SystemParams& params,
                                           double regime_threshold = 3.0);

/// Lossless dressed states for equal detunings. state_plus/state_minus are
/// the (real) amplitude pairs over {psi_+ (x) |0>_R, |00> (x) |1>_R}; the
/// third eigenstate is psi_- (x) vacuum with eigenvalue delta.
struct DressedSpectrum {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double omega_zero = 0.0;
    std::array<double, 2> state_plus{};
    std::array<double, 2> state_minus{};
};

DressedSpectrum dressed_spectrum(const SystemParams& params);

/// Lossless excited-state population of qubit 2 for init = (0, 1) and
/// small common detuning:
///   |c2|^2 = r1^4 + r2^4/2 [1 + cos(2 R t)] + 2 r1^2 r2^2 cos(R t) cos(delta t / 2).
double population_beats(double t, const SystemParams& params);

/// Closed-form approximations to the concurrence, each valid in a stated
/// parameter regime.
enum class Regime {
    DispersiveDecaySingle,    // s=0, r1 in {0,1}, |delta| >> R:    e^{-(R/d)^2 l t}
    DispersiveDecaySymmetric, // s=0, r1=1/sqrt2, |delta| >> R:     e^{-2 (R/d)^2 l t}
    DispersiveFactorized,     // s=1, r1=1/sqrt2, |delta| >> R      (damped cosine form)
    BeatsSmallDetuning,       // s=1, r1=1/sqrt2, R >> l, d ~ l     (quantum beats form)
    SmallDetuningSingle,      // s=0, r1 in {0,1}, R >> l, d ~ l
    FarDetuningSingle,        // s=0, r1 in {0,1}, |delta| >> R:    e^{-(R/d)^2 l t}
};

const char* regime_name(Regime regime);
Regime parse_regime(const std::string& name); // UnknownRegime on failure

double approx_concurrence(double t, const InitialState& init,
                          const SystemParams& params, Regime regime);

/// Regime-assumption check; violations are reported, never fatal.
struct RegimeCheck {
    bool ok = true;
    std::string message;
};

RegimeCheck check_regime(const InitialState& init, const SystemParams& params,
                         Regime regime, double regime_threshold = 3.0);

/// Error metrics of an approximate formula against the exact solver on a
/// shared grid.
struct ApproxErrorReport {
    double sup_norm = 0.0;
    double l2 = 0.0;          // RMS over the grid
    double argmax_shift = 0.0;
    RegimeCheck regime;
};

ApproxErrorReport approx_error_report(const SystemParams& params,
                                      const InitialState& init, Regime regime,
                                      const std::vector<double>& t_grid);

} // namespace cavity
