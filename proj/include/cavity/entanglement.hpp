#pragma once

#include <Eigen/Dense>

#include "cavity/core.hpp"

namespace cavity {

/// Two-qubit reduced density matrix in the basis {|11>, |10>, |01>, |00>};
/// only the one-excitation block and the ground population are nonzero.
Eigen::Matrix4cd density_matrix(Complex c1, Complex c2);

/// Concurrence of the single-excitation state family: C = 2 |c1 c2*|.
double concurrence(Complex c1, Complex c2);

/// Pointwise concurrence along a trajectory, stored in traj.concurrence.
/// OpenMP across grid points; *_serial is the reference implementation.
void concurrence_trajectory(Trajectory& traj);
void concurrence_trajectory_serial(Trajectory& traj);

/// Long-time concurrence: 2 r1 r2 |beta_-|^2 for equal detunings (part of
/// the state is trapped in the subradiant superposition), 0 when the
/// detunings differ. A zero Rabi frequency freezes the dynamics, so the
/// initial concurrence is returned unchanged in that case.
double stationary_concurrence(const InitialState& init, const SystemParams& params);

} // namespace cavity
