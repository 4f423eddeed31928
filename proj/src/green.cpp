#include "hodgecorr/green.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hodgecorr {

namespace {
constexpr double kCoincidentTol = 1e-14;
}

double green_p1(Cplx z, Cplx w, GreenMode mode) {
    if (std::abs(z - w) < kCoincidentTol)
        throw std::domain_error("green_p1: coincident points");
    switch (mode) {
    case GreenMode::InftyNormalized:
        return std::log(std::abs(z - w));
    case GreenMode::Arakelov:
        return std::log(std::abs(z - w) /
                        std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w))));
    }
    return 0.0;
}

OneFormValue dc_green_p1(Cplx z, Cplx w) {
    if (std::abs(z - w) < kCoincidentTol)
        throw std::domain_error("dc_green_p1: coincident points");
    OneFormValue f;
    // d log|z-w| = dz/(2(z-w)) + conj in z, and the mirror terms in w;
    // d^C = d_hol - d_antihol
    f.dz = 0.5 / (z - w);
    f.dzbar = -0.5 / std::conj(z - w);
    f.dw = 0.5 / (w - z);
    f.dwbar = -0.5 / std::conj(w - z);
    return f;
}

OneFormValue twistor_propagator_p1(Cplx u, Cplx z, Cplx w) {
    if (std::abs(z - w) < kCoincidentTol)
        throw std::domain_error("twistor_propagator_p1: coincident points");
    OneFormValue f;
    // u d - (1-u) dbar + du on log|z-w|
    f.dz = u * 0.5 / (z - w);
    f.dw = u * 0.5 / (w - z);
    f.dzbar = -(1.0 - u) * 0.5 / std::conj(z - w);
    f.dwbar = -(1.0 - u) * 0.5 / std::conj(w - z);
    f.du = std::log(std::abs(z - w));
    return f;
}

namespace {

// quintic smoothstep taper: 1 on [0, R/2], 0 at R, C^2 in between
double taper(double r, double R) {
    double t = 2.0 * r / R - 1.0;
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
}

template <bool Parallel>
double elliptic_sum(Cplx tau, Cplx z, double R) {
    const double imt = tau.imag();
    // row m covers gamma = m + n tau; |gamma| >= |m + n tau| needs
    // n in a bounded window for |gamma| <= R
    const int nmax = static_cast<int>(R / imt) + 2;
    std::vector<double> row_sums(2 * nmax + 1, 0.0);
#pragma omp parallel for schedule(static) if (Parallel)
    for (int idx = 0; idx < 2 * nmax + 1; ++idx) {
        int n = idx - nmax;
        double acc = 0.0;
        // solve |m + n tau| <= R for m
        double center = -n * tau.real();
        double span = std::sqrt(std::max(0.0, R * R - n * n * imt * imt));
        int mlo = static_cast<int>(std::floor(center - span)) - 1;
        int mhi = static_cast<int>(std::ceil(center + span)) + 1;
        for (int m = mlo; m <= mhi; ++m) {
            if (m == 0 && n == 0) continue;
            Cplx gamma = Cplx(m, 0) + Cplx(n, 0) * tau;
            double a2 = std::norm(gamma);
            double r = std::sqrt(a2);
            if (r > R) continue;
            // chi_z(gamma) = exp(2 pi i (z conj(gamma) - conj(z) gamma)/(tau - conj(tau)))
            Cplx num = z * std::conj(gamma) - std::conj(z) * gamma;
            Cplx arg = 2.0 * M_PI * Cplx(0, 1) * num / (tau - std::conj(tau));
            double chi_re = std::exp(arg.real()) * std::cos(arg.imag());
            acc += chi_re / a2 * taper(r, R);
        }
        row_sums[idx] = acc;
    }
    // deterministic reduction order regardless of thread count
    double total = 0.0;
    for (double s : row_sums) total += s;
    return imt / M_PI * total;
}

} // namespace

LatticeSum green_elliptic_serial(Cplx tau, Cplx z, const LatticeCutoff& cutoff) {
    if (tau.imag() <= 0.0) throw std::domain_error("green_elliptic: Im(tau) must be positive");
    if (cutoff.radius < 2.0) throw std::domain_error("green_elliptic: cutoff radius < 2");
    // reject z on the lattice
    {
        double b = z.imag() / tau.imag();
        double a = z.real() - b * tau.real();
        if (std::abs(a - std::round(a)) < 1e-12 && std::abs(b - std::round(b)) < 1e-12)
            throw std::domain_error("green_elliptic: z on the lattice");
    }
    LatticeSum out;
    out.value = elliptic_sum<false>(tau, z, cutoff.radius);
    double half = elliptic_sum<false>(tau, z, cutoff.radius / 2.0);
    out.tail_estimate = std::abs(out.value - half);
    return out;
}

LatticeSum green_elliptic(Cplx tau, Cplx z, const LatticeCutoff& cutoff) {
    if (tau.imag() <= 0.0) throw std::domain_error("green_elliptic: Im(tau) must be positive");
    if (cutoff.radius < 2.0) throw std::domain_error("green_elliptic: cutoff radius < 2");
    {
        double b = z.imag() / tau.imag();
        double a = z.real() - b * tau.real();
        if (std::abs(a - std::round(a)) < 1e-12 && std::abs(b - std::round(b)) < 1e-12)
            throw std::domain_error("green_elliptic: z on the lattice");
    }
    LatticeSum out;
    out.value = elliptic_sum<true>(tau, z, cutoff.radius);
    double half = elliptic_sum<true>(tau, z, cutoff.radius / 2.0);
    out.tail_estimate = std::abs(out.value - half);
    return out;
}

namespace {

template <bool Parallel>
Cplx ek_sum(Cplx tau, Cplx a, int n, double R) {
    const double imt = tau.imag();
    const int nmax = static_cast<int>(R / imt) + 2;
    std::vector<Cplx> row_sums(2 * nmax + 1, Cplx(0, 0));
#pragma omp parallel for schedule(static) if (Parallel)
    for (int idx = 0; idx < 2 * nmax + 1; ++idx) {
        int nn = idx - nmax;
        Cplx acc(0, 0);
        double center = -nn * tau.real();
        double span = std::sqrt(std::max(0.0, R * R - nn * nn * imt * imt));
        int mlo = static_cast<int>(std::floor(center - span)) - 1;
        int mhi = static_cast<int>(std::ceil(center + span)) + 1;
        for (int m = mlo; m <= mhi; ++m) {
            if (m == 0 && nn == 0) continue;
            Cplx gamma = Cplx(m, 0) + Cplx(nn, 0) * tau;
            double a2 = std::norm(gamma);
            if (a2 > R * R) continue;
            Cplx num = a * std::conj(gamma) - std::conj(a) * gamma;
            Cplx arg = 2.0 * M_PI * Cplx(0, 1) * num / (tau - std::conj(tau));
            Cplx chi = std::exp(arg);
            acc += chi / std::pow(a2, n + 1);
        }
        row_sums[idx] = acc;
    }
    Cplx total(0, 0);
    for (const Cplx& s : row_sums) total += s;
    return total;
}

double ek_tail_bound(Cplx tau, int n, double R) {
    // lattice points of norm > R: at most (2 pi r + c)/covol per unit radius;
    // comparison integral with a one-cell safety margin
    const double covol = tau.imag();
    const double margin = 1.0 + std::abs(tau);
    if (R <= 2.0 * margin) return 1e9;
    const double r0 = R - margin;
    // sum_{|gamma|>R} |gamma|^{-2n-2} <= (2 pi / covol) int_{r0}^inf r^{-2n-1} dr
    //   + boundary cells
    return (2.0 * M_PI / covol) * std::pow(r0, -2.0 * n) / (2.0 * n) +
           (2.0 * M_PI * R / covol + 4.0) * std::pow(r0, -2.0 * n - 2.0);
}

} // namespace

EisensteinResult eisenstein_kronecker_serial(Cplx tau, Cplx a, int n,
                                             const LatticeCutoff& cutoff) {
    if (n < 1) throw std::domain_error("eisenstein_kronecker: n >= 1 required");
    if (tau.imag() <= 0.0) throw std::domain_error("eisenstein_kronecker: Im(tau) > 0");
    EisensteinResult out;
    out.value = ek_sum<false>(tau, a, n, cutoff.radius);
    out.tail_bound = ek_tail_bound(tau, n, cutoff.radius);
    return out;
}

EisensteinResult eisenstein_kronecker(Cplx tau, Cplx a, int n, const LatticeCutoff& cutoff) {
    if (n < 1) throw std::domain_error("eisenstein_kronecker: n >= 1 required");
    if (tau.imag() <= 0.0) throw std::domain_error("eisenstein_kronecker: Im(tau) > 0");
    EisensteinResult out;
    out.value = ek_sum<true>(tau, a, n, cutoff.radius);
    out.tail_bound = ek_tail_bound(tau, n, cutoff.radius);
    return out;
}

} // namespace hodgecorr
