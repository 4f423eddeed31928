// benchmark comparing the serial reference kernels against the OpenMP ones

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "hodgecorr/correlator.hpp"
#include "hodgecorr/green.hpp"

using namespace hodgecorr;
using Clock = std::chrono::steady_clock;

namespace {
double time_of(const std::function<void()>& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}
} // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "omp[s]", "speedup");

    {
        Cplx tau(0.3, 1.1), z(0.27, 0.31);
        LatticeCutoff c{512.0};
        double v1 = 0, v2 = 0;
        double ts = time_of([&] { v1 = green_elliptic_serial(tau, z, c).value; });
        double tp = time_of([&] { v2 = green_elliptic(tau, z, c).value; });
        std::printf("%-34s %10.3f %10.3f %7.2fx %s\n", "elliptic Green lattice sum", ts, tp,
                    ts / tp, v1 == v2 ? "(bitwise equal)" : "(MISMATCH)");
    }
    {
        Cplx tau(0, 1), a(0.21, 0.37);
        LatticeCutoff c{1024.0};
        Cplx v1, v2;
        double ts = time_of([&] { v1 = eisenstein_kronecker_serial(tau, a, 1, c).value; });
        double tp = time_of([&] { v2 = eisenstein_kronecker(tau, a, 1, c).value; });
        std::printf("%-34s %10.3f %10.3f %7.2fx %s\n", "Eisenstein-Kronecker sum", ts, tp,
                    ts / tp, v1 == v2 ? "(bitwise equal)" : "(MISMATCH)");
    }
    {
        std::vector<Cplx> w{Cplx(1, 0), Cplx(2, 0), Cplx(0, 0), Cplx(0, 0)};
        QuadratureConfig cfg;
        cfg.scheme = QuadratureConfig::Scheme::MonteCarlo;
        cfg.sample_count = 8000000;
        cfg.seed = 7;
        CorrelatorResult r1, r2;
        cfg.parallel = false;
        double ts = time_of([&] { r1 = correlator_tree(w, cfg); });
        cfg.parallel = true;
        double tp = time_of([&] { r2 = correlator_tree(w, cfg); });
        std::printf("%-34s %10.3f %10.3f %7.2fx %s\n", "4-point Monte Carlo correlator", ts, tp,
                    ts / tp, r1.value == r2.value ? "(bitwise equal)" : "(MISMATCH)");
    }
    {
        std::vector<Cplx> w{Cplx(0, 0), Cplx(1, 0), Cplx(0, 1)};
        QuadratureConfig cfg;
        cfg.tolerance = 1e-5;
        CorrelatorResult r1, r2;
        cfg.parallel = false;
        double ts = time_of([&] { r1 = correlator_tree(w, cfg); });
        cfg.parallel = true;
        double tp = time_of([&] { r2 = correlator_tree(w, cfg); });
        std::printf("%-34s %10.3f %10.3f %7.2fx %s\n", "3-point adaptive correlator", ts, tp,
                    ts / tp, r1.value == r2.value ? "(bitwise equal)" : "(MISMATCH)");
    }
    return 0;
}
