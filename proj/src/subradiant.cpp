#include "cavity/subradiant.hpp"

#include <cmath>

#include <omp.h>

#include "cavity/threads.hpp"

namespace cavity {

namespace {

void require_equal_detunings(const SystemParams& params) {
    if (!params.has_equal_detunings())
        fail(ErrorCode::ScenarioMismatch, "delta_21",
             "closed form requires delta_1 == delta_2; use the general solver");
}

// sinh(z)/z, stable at z -> 0.
Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-2) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0));
    }
    return std::sinh(z) / z;
}

} // namespace

namespace detail {

Complex survival_amplitude_branch(double t, const SystemParams& params, int branch) {
    require_equal_detunings(params);
    if (t < 0.0)
        fail(ErrorCode::NegativeTime, "t", "survival amplitude defined for t >= 0");

    const double delta = params.delta_1;
    const Complex mu(params.lambda, -delta); // lambda - i delta
    const Complex omega =
        double(branch) * std::sqrt(mu * mu - 4.0 * params.rabi * params.rabi);

    const Complex z = 0.5 * omega * t;
    if (std::abs(z) < 0.5) {
        // series-safe region, also covers the degenerate Omega -> 0 point
        return std::exp(-0.5 * mu * t) * (std::cosh(z) + 0.5 * mu * t * sinhc(z));
    }
    // factored form: Re(Omega) <= lambda on the principal branch, so both
    // exponentials are non-increasing and cosh/sinh overflow is avoided
    const Complex a = mu / omega;
    return 0.5 * std::exp(0.5 * (omega - mu) * t) *
           ((1.0 + a) + (1.0 - a) * std::exp(-omega * t));
}

} // namespace detail

Complex survival_amplitude(double t, const SystemParams& params) {
    return detail::survival_amplitude_branch(t, params, +1);
}

SuperSubDecomposition decompose_super_sub(const InitialState& init,
                                          const SystemParams& params) {
    require_equal_detunings(params);
    SuperSubDecomposition d;
    d.beta_plus = params.r_1 * init.c01 + params.r_2 * init.c02;
    d.beta_minus = params.r_2 * init.c01 - params.r_1 * init.c02;
    return d;
}

AmplitudePair amplitudes_subradiant(double t, const InitialState& init,
                                    const SystemParams& params) {
    const Complex e = survival_amplitude(t, params);
    const double r1 = params.r_1;
    const double r2 = params.r_2;
    AmplitudePair out;
    out.c1 = (r2 * r2 + r1 * r1 * e) * init.c01 - r1 * r2 * (1.0 - e) * init.c02;
    out.c2 = -r1 * r2 * (1.0 - e) * init.c01 + (r1 * r1 + r2 * r2 * e) * init.c02;
    return out;
}

AmplitudePair asymptotic_amplitudes(const InitialState& init,
                                    const SystemParams& params) {
    require_equal_detunings(params);
    if (params.rabi <= 0.0)
        fail(ErrorCode::ZeroCoupling, "w_weight",
             "asymptotics require a nonzero vacuum Rabi frequency");
    const Complex beta_minus = decompose_super_sub(init, params).beta_minus;
    return AmplitudePair{params.r_2 * beta_minus, -params.r_1 * beta_minus};
}

Trajectory evolve_closed_serial(const std::vector<double>& times,
                                const InitialState& init, const SystemParams& params) {
    require_equal_detunings(params);
    Trajectory traj;
    traj.times = times;
    traj.c1.resize(times.size());
    traj.c2.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const AmplitudePair a = amplitudes_subradiant(times[i], init, params);
        traj.c1[i] = a.c1;
        traj.c2[i] = a.c2;
    }
    return traj;
}

Trajectory evolve_closed(const std::vector<double>& times,
                         const InitialState& init, const SystemParams& params) {
    require_equal_detunings(params);
    Trajectory traj;
    traj.times = times;
    traj.c1.resize(times.size());
    traj.c2.resize(times.size());
    const std::int64_t n = static_cast<std::int64_t>(times.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i) {
        const AmplitudePair a = amplitudes_subradiant(times[i], init, params);
        traj.c1[i] = a.c1;
        traj.c2[i] = a.c2;
    }
    return traj;
}

} // namespace cavity
