#pragma once

#include <complex>

namespace hodgecorr {

using Cplx = std::complex<double>;

// Values of Green functions and their derivative forms are reported as the
// real/complex coefficient of 1/(2 pi i); the power tag is tracked by the
// callers that assemble integrals.

enum class GreenMode { InftyNormalized, Arakelov };

// genus-0 Green function: log|z-w| (infinity-normalized, C = 0) or the
// round-metric Arakelov value
double green_p1(Cplx z, Cplx w, GreenMode mode = GreenMode::InftyNormalized);

// components of a 1-form in two surface variables and the twistor parameter
struct OneFormValue {
    Cplx dz{}, dzbar{};    // first variable
    Cplx dw{}, dwbar{};    // second variable
    Cplx du{};
};

// (d - dbar) of the infinity-normalized Green function in both variables
OneFormValue dc_green_p1(Cplx z, Cplx w);

// u d - (1-u) dbar + du applied to the Green function on the twistor line
OneFormValue twistor_propagator_p1(Cplx u, Cplx z, Cplx w);

struct LatticeCutoff {
    double radius = 64.0;  // >= 2
};

struct LatticeSum {
    double value = 0.0;
    double tail_estimate = 0.0;
};

// Green function of E_tau = C/(Z + tau Z) as the Eisenstein lattice sum
// (tau - taubar)/(2 pi i) sum_gamma chi_z(gamma)/|gamma|^2 over symmetric
// disks with a smooth radial taper on [R/2, R] (the raw partial sums of the
// conditionally convergent series drift at O(1/R))
LatticeSum green_elliptic(Cplx tau, Cplx z, const LatticeCutoff& cutoff);
LatticeSum green_elliptic_serial(Cplx tau, Cplx z, const LatticeCutoff& cutoff);

struct EisensteinResult {
    Cplx value{};
    double tail_bound = 0.0;
};

// G(n+1, chi_a) = sum chi_a(gamma)/|gamma|^{2n+2}, n >= 1 (absolutely
// convergent); the tail bound comes from an integral comparison
EisensteinResult eisenstein_kronecker(Cplx tau, Cplx a, int n, const LatticeCutoff& cutoff);
EisensteinResult eisenstein_kronecker_serial(Cplx tau, Cplx a, int n,
                                             const LatticeCutoff& cutoff);

} // namespace hodgecorr
