#include "cavity/general.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <omp.h>

#include "cavity/threads.hpp"

namespace cavity {

namespace {

constexpr Complex kI{0.0, 1.0};

void sort_roots(std::array<Complex, 3>& roots) {
    std::sort(roots.begin(), roots.end(), [](Complex lhs, Complex rhs) {
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (std::abs(lhs.real() - rhs.real()) > 1e-12 * scale)
            return lhs.real() > rhs.real();
        return lhs.imag() < rhs.imag();
    });
}

std::array<Complex, 2> quadratic_roots(Complex a, Complex b) {
    // roots of s^2 + a s + b = 0, cancellation-safe
    const Complex disc = std::sqrt(a * a - 4.0 * b);
    const Complex q = (std::real(std::conj(a) * disc) >= 0.0)
                          ? -0.5 * (a + disc)
                          : -0.5 * (a - disc);
    if (q == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    return {q, b / q};
}

Complex polish_root(Complex s, Complex a, Complex b, Complex c) {
    const Complex p = ((s + a) * s + b) * s + c;
    const Complex dp = (3.0 * s + 2.0 * a) * s + b;
    if (std::abs(dp) < 1e-300) return s;
    const Complex step = p / dp;
    const double scale = std::max(1.0, std::abs(s));
    if (std::abs(step) > 0.5 * scale) return s; // reject runaway corrections
    return s - step;
}

} // namespace

PseudomodeGenerator generator_matrix(const SystemParams& params) {
    const Complex g1 = -kI * params.w_weight * params.alpha_1;
    const Complex g2 = -kI * params.w_weight * params.alpha_2;
    PseudomodeGenerator gen;
    gen.m << -kI * params.delta_1, Complex(0), g1,
             Complex(0), -kI * params.delta_2, g2,
             g1, g2, Complex(-params.lambda, 0.0);
    return gen;
}

GeneratorDecomposition decompose_generator(const SystemParams& params) {
    GeneratorDecomposition dec;
    dec.m = generator_matrix(params).m;

    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(dec.m);
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();

    double radius = 0.0;
    for (int i = 0; i < 3; ++i)
        radius = std::max(radius, std::abs(dec.eigenvalues(i)));
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            gap = std::min(gap, std::abs(dec.eigenvalues(i) - dec.eigenvalues(j)));
    // defective pairs come out of the eigensolver split by ~sqrt(eps), and
    // spectral projectors lose ~eps/gap digits; route anything tighter than
    // 1e-5 to the series exponential
    dec.near_degenerate = (gap < 1e-5 * std::max(radius, 1e-300));

    if (!dec.near_degenerate)
        dec.eigenvectors_inverse = dec.eigenvectors.inverse();
    return dec;
}

double spectral_abscissa(const GeneratorDecomposition& dec) {
    double a = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        a = std::max(a, dec.eigenvalues(i).real());
    return a;
}

namespace detail {

Eigen::Matrix3cd expm_series(const Eigen::Matrix3cd& m, double t) {
    Eigen::Matrix3cd a = m * t;
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
        a /= std::pow(2.0, squarings);
    }
    Eigen::Matrix3cd result = Eigen::Matrix3cd::Identity();
    Eigen::Matrix3cd term = Eigen::Matrix3cd::Identity();
    for (int k = 1; k <= 24; ++k) {
        term = term * a / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int k = 0; k < squarings; ++k) result = result * result;
    return result;
}

} // namespace detail

namespace {

struct ExactEvaluator {
    GeneratorDecomposition dec;
    Eigen::Vector3cd weights; // V^{-1} v0 for the spectral path
    Eigen::Vector3cd v0;
    double delta_1, delta_2;

    ExactEvaluator(const InitialState& init, const SystemParams& params)
        : dec(decompose_generator(params)),
          delta_1(params.delta_1), delta_2(params.delta_2) {
        v0 << init.c01, init.c02, Complex(0.0, 0.0);
        if (!dec.near_degenerate) weights = dec.eigenvectors_inverse * v0;
    }

    void operator()(double t, Complex& c1, Complex& c2, Complex& b) const {
        if (t == 0.0) {
            c1 = v0(0);
            c2 = v0(1);
            b = v0(2);
            return;
        }
        Eigen::Vector3cd v;
        if (dec.near_degenerate) {
            v = detail::expm_series(dec.m, t) * v0;
        } else {
            Eigen::Vector3cd phases;
            for (int i = 0; i < 3; ++i)
                phases(i) = std::exp(dec.eigenvalues(i) * t) * weights(i);
            v = dec.eigenvectors * phases;
        }
        // back to the interaction picture: c_j = v_j e^{+i delta_j t}
        c1 = v(0) * std::exp(kI * (delta_1 * t));
        c2 = v(1) * std::exp(kI * (delta_2 * t));
        b = v(2);
    }
};

} // namespace

Trajectory evolve_exact_serial(const std::vector<double>& times,
                               const InitialState& init, const SystemParams& params) {
    const ExactEvaluator eval(init, params);
    Trajectory traj;
    traj.times = times;
    traj.c1.resize(times.size());
    traj.c2.resize(times.size());
    traj.b.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        eval(times[i], traj.c1[i], traj.c2[i], traj.b[i]);
    return traj;
}

Trajectory evolve_exact(const std::vector<double>& times,
                        const InitialState& init, const SystemParams& params) {
    const ExactEvaluator eval(init, params);
    Trajectory traj;
    traj.times = times;
    traj.c1.resize(times.size());
    traj.c2.resize(times.size());
    traj.b.resize(times.size());
    const std::int64_t n = static_cast<std::int64_t>(times.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i)
        eval(times[i], traj.c1[i], traj.c2[i], traj.b[i]);
    return traj;
}

std::array<Complex, 3> cubic_roots(Complex a, Complex b, Complex c) {
    std::array<Complex, 3> roots;
    if (c == Complex(0.0, 0.0)) {
        const auto q = quadratic_roots(a, b);
        roots = {Complex(0.0, 0.0), q[0], q[1]};
    } else {
        Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
        companion(0, 2) = -c;
        companion(1, 0) = Complex(1.0, 0.0);
        companion(1, 2) = -b;
        companion(2, 1) = Complex(1.0, 0.0);
        companion(2, 2) = -a;
        Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, false);
        for (int i = 0; i < 3; ++i) roots[i] = solver.eigenvalues()(i);
    }
    for (auto& s : roots) s = polish_root(s, a, b, c);
    sort_roots(roots);
    return roots;
}

CubicCoefficients cubic_coefficients(const SystemParams& params, int qubit_index) {
    if (qubit_index != 1 && qubit_index != 2)
        fail(ErrorCode::InvalidScenario, "qubit_index", "qubit index must be 1 or 2");

    const double d_own = (qubit_index == 1) ? params.delta_1 : params.delta_2;
    const double d_other = (qubit_index == 1) ? params.delta_2 : params.delta_1;
    const double r_own = (qubit_index == 1) ? params.r_1 : params.r_2;
    const double r2 = params.rabi * params.rabi;

    CubicCoefficients out;
    out.a = Complex(params.lambda, d_other - 2.0 * d_own);
    out.b = Complex(r2 - d_own * d_own + params.delta_1 * params.delta_2,
                    (d_other - d_own) * params.lambda);
    out.c = kI * r2 * r_own * r_own * (d_other - d_own);
    out.roots = cubic_roots(out.a, out.b, out.c);
    return out;
}

} // namespace cavity
