#pragma once

#include <complex>

namespace hodgecorr {

// classical polylogarithm Li_n(z), n >= 1, principal branch continued off
// the unit disk; not defined at z = 1 (n = 1) or on the cut ambiguity set
std::complex<double> polylog(int n, std::complex<double> z);

// Zagier's single-valued polylogarithm: real for odd n, purely imaginary
// for even n
std::complex<double> sv_polylog(int n, std::complex<double> z);

// Levin's polylogarithm
std::complex<double> levin_polylog(int n, std::complex<double> z);

} // namespace hodgecorr
