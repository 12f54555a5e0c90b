#pragma once

#include "cavity/core.hpp"

namespace cavity {

enum class IntegratorMethod { Rk4, VolterraTrapezoid };

/// Step control for the brute-force integrators. `dt` is a request; the
/// integrators snap it down so an integer number of steps lands exactly on
/// every output grid point. Steps must resolve the fastest scale of the
/// problem by at least 100 substeps (StepTooLarge otherwise).
struct IntegratorConfig {
    double dt = 0.0; // 0 -> default 1e-3 / max(1, R, |delta|) in lambda units
    IntegratorMethod method = IntegratorMethod::Rk4;
    double max_time = 0.0; // informational; grids are passed explicitly

    double resolved_dt(const SystemParams& params) const;
    double max_allowed_dt(const SystemParams& params) const;
};

/// Fixed-step RK4 on the exact three-amplitude pseudomode system,
/// recording (c1, c2, b) at the requested grid times.
Trajectory evolve_rk4(const std::vector<double>& times, const InitialState& init,
                      const SystemParams& params, const IntegratorConfig& config);

/// Trapezoidal discretization of the memory-kernel integro-differential
/// equations for (c1, c2) as written, with a Heun predictor-corrector in
/// time. The history sum uses the multiplicative property of the
/// exponential kernel, which is algebraically identical to the direct
/// O(N^2) sum; the direct sum is kept in detail:: for validation.
Trajectory evolve_volterra(const std::vector<double>& times, const InitialState& init,
                           const SystemParams& params, const IntegratorConfig& config);

/// Dispatch on config.method over a uniform grid of n_out points in
/// [0, max_time].
Trajectory evolve_oracle(const InitialState& init, const SystemParams& params,
                         const IntegratorConfig& config, std::size_t n_out = 2001);

namespace detail {
/// Direct O(N^2) evaluation of the Volterra history sums (no recursion);
/// used by tests to validate the incremental path.
Trajectory evolve_volterra_direct(const std::vector<double>& times,
                                  const InitialState& init, const SystemParams& params,
                                  const IntegratorConfig& config);
} // namespace detail

} // namespace cavity
