#include "hodgecorr/polylog.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hodgecorr {

namespace {

using Cplx = std::complex<double>;

// zeta(k) for k >= 2 (enough for weights through 10)
double zeta_pos(int k) {
    static const double table[] = {0.0,
                                   0.0,
                                   1.6449340668482264,   // zeta(2)
                                   1.2020569031595943,   // zeta(3)
                                   1.0823232337111382,   // zeta(4)
                                   1.0369277551433699,   // zeta(5)
                                   1.0173430619844491,   // zeta(6)
                                   1.0083492773819228,   // zeta(7)
                                   1.0040773561979443,   // zeta(8)
                                   1.0020083928260822,   // zeta(9)
                                   1.0009945751278181};  // zeta(10)
    if (k < 2 || k > 10) throw std::domain_error("zeta table range");
    return table[k];
}

// Bernoulli numbers (B_1 = -1/2) by the defining recurrence, cached
double bernoulli(int k) {
    static std::vector<double> cache;
    if (cache.empty()) {
        const int N = 80;
        cache.assign(N + 1, 0.0);
        cache[0] = 1.0;
        std::vector<std::vector<double>> C(N + 2, std::vector<double>(N + 2, 0.0));
        for (int i = 0; i <= N + 1; ++i) {
            C[i][0] = 1.0;
            for (int j = 1; j <= i; ++j)
                C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : 0.0);
        }
        for (int m = 1; m <= N; ++m) {
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += C[m + 1][j] * cache[j];
            cache[m] = -s / C[m + 1][m];
        }
    }
    if (k < 0 || k >= static_cast<int>(cache.size()))
        throw std::domain_error("Bernoulli range");
    return cache[k];
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// zeta at integers <= 1 as needed by the log-series: zeta(0) = -1/2,
// zeta(-m) = -B_{m+1}/(m+1); zeta(1) never requested (handled separately)
double zeta_int(int k) {
    if (k >= 2) return zeta_pos(k);
    if (k == 0) return -0.5;
    if (k <= -1) return -bernoulli(-k + 1) / (-k + 1);
    throw std::domain_error("zeta(1) requested");
}

Cplx polylog_series(int n, Cplx z) {
    // plain power series on |z| < ~0.75
    Cplx term = z, sum = z;
    for (int k = 2; k < 200000; ++k) {
        term *= z;
        Cplx add = term / std::pow(static_cast<double>(k), n);
        sum += add;
        if (std::abs(add) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// expansion in w = log z around the unit circle:
// Li_n(e^w) = w^{n-1}/(n-1)! (H_{n-1} - log(-w)) + sum_{k>=0, k != n-1}
//             zeta(n-k) w^k / k!,   |w| < 2 pi
Cplx polylog_logseries(int n, Cplx z) {
    Cplx w = std::log(z);
    Cplx sum = 0.0;
    double hn = 0.0;
    for (int i = 1; i <= n - 1; ++i) hn += 1.0 / i;
    Cplx wp = 1.0;
    for (int k = 0; k <= 60; ++k) {
        if (k == n - 1) {
            sum += wp / factorial(k) * (hn - std::log(-w));
        } else {
            sum += wp / factorial(k) * zeta_int(n - k);
        }
        wp *= w;
    }
    return sum;
}

// Bernoulli polynomial B_n(x)
Cplx bernoulli_poly(int n, Cplx x) {
    Cplx sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        double binom = factorial(n) / (factorial(k) * factorial(n - k));
        sum += binom * bernoulli(k) * std::pow(x, static_cast<double>(n - k));
    }
    return sum;
}

} // namespace

std::complex<double> polylog(int n, std::complex<double> z) {
    if (n < 1) throw std::domain_error("polylog: n >= 1");
    if (std::abs(z) < 1e-300) return 0.0;
    if (n == 1) return -std::log(1.0 - z);
    if (std::abs(z - 1.0) < 1e-14) {
        if (n >= 2) return zeta_pos(n);
        throw std::domain_error("polylog: singular point z = 1");
    }
    double az = std::abs(z);
    if (az <= 0.72) return polylog_series(n, z);
    if (az < 1.39) return polylog_logseries(n, z);
    // inversion: Li_n(z) + (-1)^n Li_n(1/z) =
    //   -(2 pi i)^n / n! * B_n(1/2 + log(-z)/(2 pi i))
    Cplx tpii(0.0, 2.0 * M_PI);
    Cplx x = 0.5 + std::log(-z) / tpii;
    Cplx rhs = -std::pow(tpii, n) / factorial(n) * bernoulli_poly(n, x);
    Cplx inv = polylog(n, 1.0 / z);
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return rhs - sgn * inv;
}

std::complex<double> sv_polylog(int n, std::complex<double> z) {
    if (n < 1) throw std::domain_error("sv_polylog: n >= 1");
    if (std::abs(z) < 1e-300 || std::abs(z - 1.0) < 1e-14)
        throw std::domain_error("sv_polylog: singular point");
    // sum_{k=0}^{n-1} 2^k B_k / k! Li_{n-k}(z) log^k|z|, then the parity
    // projection Re (n odd) / i Im (n even)
    Cplx sum = 0.0;
    double lz = std::log(std::abs(z));
    for (int k = 0; k <= n - 1; ++k) {
        double coeff = std::pow(2.0, k) * bernoulli(k) / factorial(k);
        sum += coeff * polylog(n - k, z) * std::pow(lz, k);
    }
    if (n % 2 == 1) return Cplx(sum.real(), 0.0);
    return Cplx(0.0, sum.imag());
}

std::complex<double> levin_polylog(int n, std::complex<double> z) {
    if (n < 2) throw std::domain_error("levin_polylog: n >= 2");
    Cplx sum = 0.0;
    double lz = std::log(std::abs(z));
    for (int k = 0; k <= n - 2; k += 2) {
        double c = std::pow(2.0, k) * factorial(n - 2) * factorial(2 * n - k - 3) /
                   (factorial(2 * n - 3) * factorial(k + 1) * factorial(n - k - 2));
        sum += c * sv_polylog(n - k, z) * std::pow(lz, k);
    }
    return sum;
}

} // namespace hodgecorr
