#include "cavity/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "cavity/general.hpp"

namespace cavity {

namespace {

constexpr Complex kI{0.0, 1.0};

double fastest_rate(const SystemParams& p) {
    return std::max({p.lambda, std::abs(p.delta_1), std::abs(p.delta_2), p.rabi});
}

void check_grid(const std::vector<double>& times) {
    if (times.size() < 2 || times.front() != 0.0)
        fail(ErrorCode::InvalidScenario, "times", "output grid must start at 0 and hold >= 2 points");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            fail(ErrorCode::InvalidScenario, "times", "output grid must be strictly increasing");
}

} // namespace

double IntegratorConfig::max_allowed_dt(const SystemParams& params) const {
    return 1e-2 / fastest_rate(params);
}

double IntegratorConfig::resolved_dt(const SystemParams& params) const {
    const double step = (dt > 0.0) ? dt : 1e-3 / fastest_rate(params);
    if (step > max_allowed_dt(params))
        fail(ErrorCode::StepTooLarge, "dt",
             "dt must resolve the fastest rate by at least 100 steps");
    return step;
}

Trajectory evolve_rk4(const std::vector<double>& times, const InitialState& init,
                      const SystemParams& params, const IntegratorConfig& config) {
    check_grid(times);
    const double h_req = config.resolved_dt(params);
    const Eigen::Matrix3cd m = generator_matrix(params).m;

    Trajectory traj;
    traj.times = times;
    traj.c1.resize(times.size());
    traj.c2.resize(times.size());
    traj.b.resize(times.size());

    Eigen::Vector3cd v;
    v << init.c01, init.c02, Complex(0.0, 0.0);

    auto record = [&](std::size_t i, double t) {
        traj.c1[i] = v(0) * std::exp(kI * (params.delta_1 * t));
        traj.c2[i] = v(1) * std::exp(kI * (params.delta_2 * t));
        traj.b[i] = v(2);
    };
    record(0, 0.0);

    for (std::size_t i = 1; i < times.size(); ++i) {
        const double span = times[i] - times[i - 1];
        const auto n_sub = static_cast<std::size_t>(std::ceil(span / h_req - 1e-12));
        const double h = span / static_cast<double>(std::max<std::size_t>(n_sub, 1));
        for (std::size_t k = 0; k < std::max<std::size_t>(n_sub, 1); ++k) {
            const Eigen::Vector3cd k1 = m * v;
            const Eigen::Vector3cd k2 = m * (v + 0.5 * h * k1);
            const Eigen::Vector3cd k3 = m * (v + 0.5 * h * k2);
            const Eigen::Vector3cd k4 = m * (v + h * k3);
            v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        record(i, times[i]);
    }
    return traj;
}

namespace {

// Heun time stepping over the memory-kernel equations
//   c1' = -int_0^t K1(t-u) [a1^2 c1(u) + a1 a2 e^{-i d21 u} c2(u)] du
//   c2' = -int_0^t K2(t-u) [a1 a2 e^{+i d21 u} c1(u) + a2^2 c2(u)] du
// with K_j(tau) = W^2 e^{-(lambda - i delta_j) tau}. The trapezoid history
// is carried either as an exponential prefix sum (O(N)) or summed directly
// (O(N^2), validation only).
Trajectory volterra_impl(const std::vector<double>& times, const InitialState& init,
                         const SystemParams& params, const IntegratorConfig& config,
                         bool direct_sum) {
    check_grid(times);
    const double h_req = config.resolved_dt(params);
    const double w2 = params.w_weight * params.w_weight;
    const double a11 = params.alpha_1 * params.alpha_1;
    const double a22 = params.alpha_2 * params.alpha_2;
    const double a12 = params.alpha_1 * params.alpha_2;
    const Complex mu1(params.lambda, -params.delta_1);
    const Complex mu2(params.lambda, -params.delta_2);
    const double d21 = params.delta_21;

    Trajectory traj;
    traj.times = times;
    traj.c1.resize(times.size());
    traj.c2.resize(times.size());

    Complex c1 = init.c01, c2 = init.c02;
    traj.c1[0] = c1;
    traj.c2[0] = c2;

    auto coupling = [&](double t, Complex q1, Complex q2) {
        const Complex rot = std::polar(1.0, -d21 * t);
        return std::pair<Complex, Complex>{a11 * q1 + a12 * rot * q2,
                                           a12 * std::conj(rot) * q1 + a22 * q2};
    };

    // history of integrand samples for the direct path
    std::vector<double> t_hist;
    std::vector<Complex> g1_hist, g2_hist;
    Complex p1(0.0, 0.0), p2(0.0, 0.0); // prefix-sum history
    auto [g1_prev, g2_prev] = coupling(0.0, c1, c2);
    if (direct_sum) {
        t_hist.push_back(0.0);
        g1_hist.push_back(g1_prev);
        g2_hist.push_back(g2_prev);
    }

    auto history_direct = [&](Complex mu, const std::vector<Complex>& g, double t_now,
                              Complex g_now) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k + 1 < t_hist.size(); ++k) {
            const double hk = t_hist[k + 1] - t_hist[k];
            acc += 0.5 * hk * (std::exp(-mu * (t_now - t_hist[k])) * g[k] +
                               std::exp(-mu * (t_now - t_hist[k + 1])) * g[k + 1]);
        }
        const double hk = t_now - t_hist.back();
        acc += 0.5 * hk * (std::exp(-mu * hk) * g.back() + g_now);
        return acc;
    };

    double t = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double span = times[i] - times[i - 1];
        const auto n_sub = static_cast<std::size_t>(
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / h_req - 1e-12))));
        const double h = span / static_cast<double>(n_sub);
        for (std::size_t k = 0; k < n_sub; ++k) {
            const double t_next = t + h;
            const Complex e1 = std::exp(-mu1 * h);
            const Complex e2 = std::exp(-mu2 * h);

            const Complex f1 = -w2 * p1;
            const Complex f2 = -w2 * p2;

            // predictor
            const Complex c1p = c1 + h * f1;
            const Complex c2p = c2 + h * f2;
            auto [g1p, g2p] = coupling(t_next, c1p, c2p);
            Complex p1p, p2p;
            if (direct_sum) {
                p1p = history_direct(mu1, g1_hist, t_next, g1p);
                p2p = history_direct(mu2, g2_hist, t_next, g2p);
            } else {
                p1p = e1 * p1 + 0.5 * h * (e1 * g1_prev + g1p);
                p2p = e2 * p2 + 0.5 * h * (e2 * g2_prev + g2p);
            }
            const Complex f1p = -w2 * p1p;
            const Complex f2p = -w2 * p2p;

            // corrector
            c1 += 0.5 * h * (f1 + f1p);
            c2 += 0.5 * h * (f2 + f2p);
            auto [g1n, g2n] = coupling(t_next, c1, c2);
            if (direct_sum) {
                t_hist.push_back(t_next);
                g1_hist.push_back(g1n);
                g2_hist.push_back(g2n);
                p1 = history_direct(mu1, g1_hist, t_next, g1n);
                p2 = history_direct(mu2, g2_hist, t_next, g2n);
            } else {
                p1 = e1 * p1 + 0.5 * h * (e1 * g1_prev + g1n);
                p2 = e2 * p2 + 0.5 * h * (e2 * g2_prev + g2n);
            }
            g1_prev = g1n;
            g2_prev = g2n;
            t = t_next;
        }
        t = times[i];
        traj.c1[i] = c1;
        traj.c2[i] = c2;
    }
    return traj;
}

} // namespace

Trajectory evolve_volterra(const std::vector<double>& times, const InitialState& init,
                           const SystemParams& params, const IntegratorConfig& config) {
    return volterra_impl(times, init, params, config, false);
}

namespace detail {

Trajectory evolve_volterra_direct(const std::vector<double>& times,
                                  const InitialState& init, const SystemParams& params,
                                  const IntegratorConfig& config) {
    return volterra_impl(times, init, params, config, true);
}

} // namespace detail

Trajectory evolve_oracle(const InitialState& init, const SystemParams& params,
                         const IntegratorConfig& config, std::size_t n_out) {
    if (!(config.max_time > 0.0))
        fail(ErrorCode::InvalidScenario, "max_time", "max_time must be > 0");
    const auto grid = uniform_grid(config.max_time, n_out);
    return (config.method == IntegratorMethod::Rk4)
               ? evolve_rk4(grid, init, params, config)
               : evolve_volterra(grid, init, params, config);
}

} // namespace cavity
