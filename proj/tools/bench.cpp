// Times the OpenMP grid kernels against their serial reference
// implementations and reports the speedup plus the max absolute
// difference (which must be zero: identical arithmetic per point).
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

#include "cavity/entanglement.hpp"
#include "cavity/general.hpp"
#include "cavity/subradiant.hpp"
#include "cavity/threads.hpp"

using namespace cavity;

namespace {

double max_diff(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max({worst, std::abs(a.c1[i] - b.c1[i]), std::abs(a.c2[i] - b.c2[i])});
    return worst;
}

template <typename F>
double time_best_of(F&& run, int repeats = 3) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const double start = omp_get_wtime();
        run();
        best = std::min(best, omp_get_wtime() - start);
    }
    return best;
}

void report(const char* name, double serial, double parallel, double diff) {
    std::printf("%-24s %10.4f s %10.4f s %8.2fx %12.3e\n", name, serial, parallel,
                serial / parallel, diff);
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 2'000'000;
    if (argc > 1) n = std::stoull(argv[1]);

    const SystemParams p = params_lambda_units(0.7, 0.7, 10.0, M_SQRT1_2);
    const SystemParams p_general = params_lambda_units(-0.7, 0.7, 0.1, M_SQRT1_2);
    const InitialState init = initial_state_from_s_phi(0.0, 0.0);
    const auto grid = uniform_grid(50.0, n);

    std::printf("grid points: %zu, threads: %d\n", n, worker_count());
    std::printf("%-24s %12s %12s %9s %12s\n", "kernel", "serial", "openmp", "speedup",
                "max |diff|");

    Trajectory closed_serial, closed_parallel;
    const double t_closed_serial =
        time_best_of([&] { closed_serial = evolve_closed_serial(grid, init, p); });
    const double t_closed_parallel =
        time_best_of([&] { closed_parallel = evolve_closed(grid, init, p); });
    report("closed-form grid", t_closed_serial, t_closed_parallel,
           max_diff(closed_serial, closed_parallel));

    Trajectory exact_serial, exact_parallel;
    const double t_exact_serial =
        time_best_of([&] { exact_serial = evolve_exact_serial(grid, init, p_general); });
    const double t_exact_parallel =
        time_best_of([&] { exact_parallel = evolve_exact(grid, init, p_general); });
    report("exact spectral grid", t_exact_serial, t_exact_parallel,
           max_diff(exact_serial, exact_parallel));

    Trajectory conc_serial = exact_serial;
    Trajectory conc_parallel = exact_parallel;
    const double t_conc_serial =
        time_best_of([&] { concurrence_trajectory_serial(conc_serial); });
    const double t_conc_parallel = time_best_of([&] { concurrence_trajectory(conc_parallel); });
    double conc_diff = 0.0;
    for (std::size_t i = 0; i < conc_serial.size(); ++i)
        conc_diff = std::max(conc_diff,
                             std::abs(conc_serial.concurrence[i] - conc_parallel.concurrence[i]));
    report("concurrence map", t_conc_serial, t_conc_parallel, conc_diff);
    return 0;
}
