// Wall-clock comparison of the OpenMP kernels against their serial references.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "dkp/bound_spectrum.hpp"
#include "dkp/scattering.hpp"

using namespace dkp;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
    double best = INFINITY;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-14s serial %9.4f s   omp %9.4f s   speedup %5.2f\n", name, serial, parallel, serial / parallel);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    const SectorChoice sc = SectorChoice::scalar();

    const PotentialSpec barrier{1.0, 2.0, 0.0, 1.0, 1.0};
    const auto grid = energy_grid(-10.0, 10.0, 400000, barrier);
    std::size_t sink = 0;
    report("scan",
           best_of(3, [&] { sink += coefficients_scan_serial(grid, barrier, sc).size(); }),
           best_of(3, [&] { sink += coefficients_scan(grid, barrier, sc).size(); }));

    const PotentialSpec binding{1.0, 2.0, std::sqrt(2.0), 1.0, 1.0};
    const auto vs = linspace(0.5, 5.0, 200);
    report("sweep-v",
           best_of(3, [&] { sink += sweep_v_serial(vs, binding, sc, 2000).rows.size(); }),
           best_of(3, [&] { sink += sweep_v(vs, binding, sc, 2000).rows.size(); }));

    const auto as = linspace(0.001, 0.2, 200);
    report("sweep-a",
           best_of(3, [&] { sink += sweep_a_serial(as, 50.0, binding, sc, 2000).rows.size(); }),
           best_of(3, [&] { sink += sweep_a(as, 50.0, binding, sc, 2000).rows.size(); }));

    std::printf("(%zu)\n", sink);
    return 0;
}
