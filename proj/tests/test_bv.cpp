#include <doctest.h>

#include <random>

#include "hodgecorr/bv.hpp"

using namespace hodgecorr;

namespace {

BVPolynomial random_poly(int m, int max_deg, std::mt19937& rng, bool even_only = false) {
    BVPolynomial p(m);
    std::uniform_int_distribution<int> coin(0, 2), deg(0, max_deg), num(-4, 4);
    int terms = 3 + static_cast<int>(rng() % 5);
    for (int t = 0; t < terms; ++t) {
        BVPolynomial::Key k;
        k.xdeg.assign(m, 0);
        int total = deg(rng);
        for (int d = 0; d < total; ++d) k.xdeg[rng() % m]++;
        for (int i = 0; i < m; ++i)
            if (coin(rng) == 0) k.ybits |= 1u << i;
        if (even_only && std::popcount(k.ybits) % 2) k.ybits &= k.ybits - 1;
        int c = num(rng);
        if (c == 0) c = 1;
        p.add(k, RatPoly(Rational(c)));
    }
    return p;
}

} // namespace

TEST_CASE("Laplacian of x1 y1") {
    auto f = BVPolynomial::x(1, 1) * BVPolynomial::y(1, 1);
    auto d = bv_laplacian(f);
    REQUIRE(d.terms().size() == 1);
    const auto& [k, c] = *d.terms().begin();
    CHECK(k.ybits == 0);
    CHECK(k.xdeg == std::vector<int>{0});
    CHECK(c == RatPoly(1));
    CHECK(bv_laplacian(BVPolynomial::constant(2, RatPoly(5))).is_zero());
}

TEST_CASE("Delta squared vanishes on random polynomials") {
    std::mt19937 rng(42);
    for (int m = 1; m <= 3; ++m)
        for (int it = 0; it < 70; ++it) {
            auto f = random_poly(m, 4, rng);
            CHECK(bv_laplacian(bv_laplacian(f)).is_zero());
        }
}

TEST_CASE("bracket basics") {
    // {x1, y1} = 1
    auto b = gerstenhaber(BVPolynomial::x(1, 1), BVPolynomial::y(1, 1));
    REQUIRE(b.terms().size() == 1);
    CHECK(b.terms().begin()->second == RatPoly(1));
    CHECK(b.terms().begin()->first.ybits == 0);

    // x-only even inputs bracket to zero
    std::mt19937 rng(1);
    for (int it = 0; it < 10; ++it) {
        BVPolynomial f(2), g(2);
        BVPolynomial::Key k;
        k.xdeg = {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
        f.add(k, RatPoly(2));
        k.xdeg = {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
        g.add(k, RatPoly(3));
        CHECK(gerstenhaber(f, g).is_zero());
    }
}

TEST_CASE("bracket Leibniz rule") {
    // {f, gh} = {f,g} h + (-1)^{(|f|+1)|g|} g {f,h} for homogeneous f, g
    std::mt19937 rng(7);
    for (int it = 0; it < 30; ++it) {
        int m = 1 + it % 3;
        auto f0 = random_poly(m, 3, rng);
        auto g0 = random_poly(m, 3, rng);
        auto h = random_poly(m, 3, rng);
        for (int pf = 0; pf < 2; ++pf)
            for (int pg = 0; pg < 2; ++pg) {
                BVPolynomial f = pf ? f0.odd_part() : f0.even_part();
                BVPolynomial g = pg ? g0.odd_part() : g0.even_part();
                auto lhs = gerstenhaber(f, g * h);
                auto second = g * gerstenhaber(f, h);
                if (((pf + 1) * pg) % 2) second *= Rational(-1);
                auto rhs = gerstenhaber(f, g) * h + second;
                CHECK((lhs - rhs).is_zero());
            }
    }
}

TEST_CASE("graded Jacobi on random triples") {
    // {a,{b,c}} = (-1)^{|a|+1} {{a,b},c} + (-1)^{(|a|+1)(|b|+1)} {b,{a,c}}
    std::mt19937 rng(99);
    int triples = 0;
    for (int it = 0; it < 30; ++it) {
        int m = 1 + it % 3;
        auto fa = random_poly(m, 4, rng);
        auto fb = random_poly(m, 4, rng);
        auto fc = random_poly(m, 4, rng);
        for (int pa = 0; pa < 2; ++pa)
            for (int pb = 0; pb < 2; ++pb) {
                BVPolynomial a = pa ? fa.odd_part() : fa.even_part();
                BVPolynomial b = pb ? fb.odd_part() : fb.even_part();
                const BVPolynomial& c = fc;
                ++triples;
                auto j1 = gerstenhaber(a, gerstenhaber(b, c));
                auto j2 = gerstenhaber(gerstenhaber(a, b), c);
                if ((pa + 1) % 2) j2 *= Rational(-1);
                auto j3 = gerstenhaber(b, gerstenhaber(a, c));
                if (((pa + 1) * (pb + 1)) % 2) j3 *= Rational(-1);
                auto lhs = j1 - j2;
                lhs -= j3;
                CHECK(lhs.is_zero());
            }
    }
    CHECK(triples >= 100);
}

TEST_CASE("antisymmetry pattern of the odd bracket") {
    std::mt19937 rng(123);
    for (int it = 0; it < 20; ++it) {
        int m = 1 + it % 3;
        auto f0 = random_poly(m, 3, rng);
        auto g0 = random_poly(m, 3, rng);
        for (int pf = 0; pf < 2; ++pf)
            for (int pg = 0; pg < 2; ++pg) {
                BVPolynomial f = pf ? f0.odd_part() : f0.even_part();
                BVPolynomial g = pg ? g0.odd_part() : g0.even_part();
                auto rhs = gerstenhaber(g, f);
                if ((pf * pg) % 2) rhs *= Rational(-1);
                CHECK((gerstenhaber(f, g) - rhs).is_zero());
            }
    }
}

TEST_CASE("basis independence of the Laplacian under Darboux changes") {
    std::mt19937 rng(5);
    for (int it = 0; it < 20; ++it) {
        int m = 2 + it % 2;
        // random unit upper triangular A over Q; y transforms by A^{-T},
        // which preserves the odd pairing <x_i, y_j>
        std::vector<std::vector<Rational>> A(m, std::vector<Rational>(m, 0));
        for (int i = 0; i < m; ++i) {
            A[i][i] = 1;
            for (int j = i + 1; j < m; ++j) A[i][j] = Rational(static_cast<int>(rng() % 5) - 2);
        }
        // invert the unit upper triangular matrix by back substitution
        std::vector<std::vector<Rational>> inv(m, std::vector<Rational>(m, 0));
        for (int col = 0; col < m; ++col) {
            inv[col][col] = 1;
            for (int row = col - 1; row >= 0; --row) {
                Rational s = 0;
                for (int k = row + 1; k <= col; ++k) s -= A[row][k] * inv[k][col];
                inv[row][col] = s;
            }
        }
        std::vector<std::vector<Rational>> B(m, std::vector<Rational>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) B[i][j] = inv[j][i];
        // sanity: A B^T = I
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Rational s = 0;
                for (int k = 0; k < m; ++k) s += A[i][k] * B[j][k];
                REQUIRE(s == (i == j ? 1 : 0));
            }
        auto f = random_poly(m, 3, rng);
        auto lhs = bv_laplacian(f.substitute(A, B));
        auto rhs = bv_laplacian(f).substitute(A, B);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("pointwise QME residual") {
    // S = 0
    BVElement zero = {BVPolynomial(2)};
    for (auto& p : qme_residual_pointwise(zero, 2)) CHECK(p.is_zero());

    // constructed witness: {S,S} = 0 and Delta S = 0 for S = x1 x2 (no y's)
    BVElement S = {BVPolynomial::x(2, 1) * BVPolynomial::x(2, 2)};
    for (auto& p : qme_residual_pointwise(S, 2)) CHECK(p.is_zero());

    // odd action rejected
    BVElement oddS = {BVPolynomial::y(2, 1)};
    CHECK_THROWS(qme_residual_pointwise(oddS, 1));
}

TEST_CASE("H = 0 homotopy equation forces constancy in t") {
    // m = 0 has no coordinates: a scalar family S(t); the homotopy equation
    // reduces to dS/dt = 0, so a genuinely t-dependent family has nonzero
    // residual
    BVElement A = {BVPolynomial::constant(1, RatPoly::t())};  // A(t) = t
    // (dimension m=1 stands in for H=0 by using constant polynomials only:
    // the bracket and Laplacian of constants vanish identically)
    BVElement B = {BVPolynomial(1)};
    auto r = qme_residual_homotopy(A, B, 1);
    CHECK(!r.is_zero());
    bool dt_term = !r.eq_b[0].is_zero();
    CHECK(dt_term);

    // a constant family solves it
    BVElement A2 = {BVPolynomial::constant(1, RatPoly(7))};
    CHECK(qme_residual_homotopy(A2, B, 1).is_zero());
}
