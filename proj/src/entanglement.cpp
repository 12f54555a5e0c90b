#include "cavity/entanglement.hpp"

#include <cmath>

#include <omp.h>

#include "cavity/subradiant.hpp"
#include "cavity/threads.hpp"

namespace cavity {

namespace {

void check_norm(Complex c1, Complex c2) {
    if (std::norm(c1) + std::norm(c2) > 1.0 + 1e-9)
        fail(ErrorCode::SupernormalState, "amplitudes",
             "|c1|^2 + |c2|^2 exceeds 1");
}

} // namespace

Eigen::Matrix4cd density_matrix(Complex c1, Complex c2) {
    check_norm(c1, c2);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(1, 1) = std::norm(c1);
    rho(1, 2) = c1 * std::conj(c2);
    rho(2, 1) = std::conj(c1) * c2;
    rho(2, 2) = std::norm(c2);
    rho(3, 3) = 1.0 - std::norm(c1) - std::norm(c2);
    return rho;
}

double concurrence(Complex c1, Complex c2) {
    check_norm(c1, c2);
    return 2.0 * std::abs(c1) * std::abs(c2);
}

void concurrence_trajectory_serial(Trajectory& traj) {
    traj.concurrence.resize(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        traj.concurrence[i] = concurrence(traj.c1[i], traj.c2[i]);
}

void concurrence_trajectory(Trajectory& traj) {
    traj.concurrence.resize(traj.size());
    const std::int64_t n = static_cast<std::int64_t>(traj.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i)
        traj.concurrence[i] = concurrence(traj.c1[i], traj.c2[i]);
}

double stationary_concurrence(const InitialState& init, const SystemParams& params) {
    if (params.rabi == 0.0) return concurrence(init.c01, init.c02);
    if (!params.has_equal_detunings()) return 0.0;
    const Complex beta_minus = decompose_super_sub(init, params).beta_minus;
    return 2.0 * params.r_1 * params.r_2 * std::norm(beta_minus);
}

} // namespace cavity
