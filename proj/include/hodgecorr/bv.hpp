#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hodgecorr/rational.hpp"

namespace hodgecorr {

// univariate polynomial in the homotopy parameter t over the rationals
class RatPoly {
public:
    RatPoly() = default;
    RatPoly(Rational c) { if (c != 0) coef_ = {std::move(c)}; }

    static RatPoly t();  // the variable

    bool is_zero() const { return coef_.empty(); }
    const std::vector<Rational>& coef() const { return coef_; }

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    bool operator==(const RatPoly& o) const { return coef_ == o.coef_; }

    RatPoly derivative() const;
    Rational eval(const Rational& t) const;

private:
    std::vector<Rational> coef_;  // ascending powers, trimmed
    void trim();
};

// Polynomial on an odd symplectic vector space with Darboux coordinates
// x_1..x_m (even) and y_1..y_m (odd, subset-encoded); coefficients may
// depend polynomially on the homotopy parameter t.
class BVPolynomial {
public:
    explicit BVPolynomial(int m = 1) : m_(m) {}

    struct Key {
        std::vector<int> xdeg;
        uint32_t ybits = 0;
        bool operator<(const Key& o) const {
            if (ybits != o.ybits) return ybits < o.ybits;
            return xdeg < o.xdeg;
        }
    };

    int dim() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, RatPoly>& terms() const { return terms_; }

    void add(const Key& k, const RatPoly& c);

    static BVPolynomial x(int m, int i);  // coordinate monomials, 1-based i
    static BVPolynomial y(int m, int i);
    static BVPolynomial constant(int m, const RatPoly& c);

    BVPolynomial& operator+=(const BVPolynomial& o);
    BVPolynomial& operator-=(const BVPolynomial& o);
    BVPolynomial& operator*=(const Rational& c);
    friend BVPolynomial operator+(BVPolynomial a, const BVPolynomial& b) { return a += b; }
    friend BVPolynomial operator-(BVPolynomial a, const BVPolynomial& b) { return a -= b; }
    friend BVPolynomial operator*(const BVPolynomial& a, const BVPolynomial& b);

    // y-parity split
    BVPolynomial even_part() const;
    BVPolynomial odd_part() const;
    bool is_even() const { return odd_part().is_zero(); }

    BVPolynomial dx(int i) const;  // ordinary partial
    BVPolynomial dy(int i) const;  // left odd partial
    BVPolynomial dt() const;       // d/dt on coefficients

    // substitute x_i -> sum_j A[i][j] x_j, y_i -> sum_j B[i][j] y_j
    BVPolynomial substitute(const std::vector<std::vector<Rational>>& A,
                            const std::vector<std::vector<Rational>>& B) const;

    std::string str() const;

private:
    int m_;
    std::map<Key, RatPoly> terms_;
};

// second-order odd Laplacian sum_i d/dx_i d/dy_i
BVPolynomial bv_laplacian(const BVPolynomial& f);

// {f,g} = Delta(fg) - Delta(f) g - (-1)^{|f|} f Delta(g); computed both from
// this definition and from the first-order derivative formula, compared,
// then returned
BVPolynomial gerstenhaber(const BVPolynomial& f, const BVPolynomial& g);

// formal-hbar element: component p holds the hbar^p coefficient
using BVElement = std::vector<BVPolynomial>;

// pointwise residual 1/2 {S,S} + hbar Delta S, truncated at hbar_order
BVElement qme_residual_pointwise(const BVElement& S, int hbar_order);

// homotopy residual for S~ = A(t) + B(t) dt: the two component equations
struct BVHomotopyResidual {
    BVElement eq_a;  // 1/2 {A,A} + hbar Delta A
    BVElement eq_b;  // dA/dt + {B,A} + hbar Delta B
    bool is_zero() const;
};
BVHomotopyResidual qme_residual_homotopy(const BVElement& A, const BVElement& B,
                                         int hbar_order);

} // namespace hodgecorr
