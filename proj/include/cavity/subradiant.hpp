#pragma once

#include <utility>

#include "cavity/core.hpp"

namespace cavity {

/// Overlaps of the initial state with the superradiant/subradiant pair
///   psi_+ = (r1, r2),  psi_- = (r2, -r1).
struct SuperSubDecomposition {
    Complex beta_plus{0.0, 0.0};
    Complex beta_minus{0.0, 0.0};
};

/// Pair of qubit amplitudes (c1, c2) at a single time.
struct AmplitudePair {
    Complex c1{0.0, 0.0};
    Complex c2{0.0, 0.0};
};

/// Survival amplitude of the superradiant state for equal detunings:
///   E(t) = e^{-(lambda - i delta) t / 2}
///          [cosh(Omega t/2) + (lambda - i delta)/Omega sinh(Omega t/2)],
///   Omega = sqrt(lambda^2 - OmegaR^2 - 2 i delta lambda).
/// Evaluated in a factored-exponential form that cannot overflow for
/// large |Omega| t.
Complex survival_amplitude(double t, const SystemParams& params);

/// Closed-form amplitudes for delta_1 == delta_2.
AmplitudePair amplitudes_subradiant(double t, const InitialState& init,
                                    const SystemParams& params);

SuperSubDecomposition decompose_super_sub(const InitialState& init,
                                          const SystemParams& params);

/// t -> infinity limit of the closed form: (r2 beta_-, -r1 beta_-).
/// Requires rabi > 0 so the superradiant part actually decays.
AmplitudePair asymptotic_amplitudes(const InitialState& init,
                                    const SystemParams& params);

/// Closed-form trajectory on a grid; OpenMP across grid points.
Trajectory evolve_closed(const std::vector<double>& times,
                         const InitialState& init, const SystemParams& params);
/// Serial reference for evolve_closed; identical arithmetic per point.
Trajectory evolve_closed_serial(const std::vector<double>& times,
                                const InitialState& init, const SystemParams& params);

namespace detail {
/// E(t) with an explicit square-root branch (+1 / -1); the public
/// survival_amplitude uses the principal branch. Both must agree.
Complex survival_amplitude_branch(double t, const SystemParams& params, int branch);
} // namespace detail

} // namespace cavity
