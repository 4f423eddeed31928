#pragma once

#include <string>
#include <vector>

#include "hodgecorr/rational.hpp"

namespace hodgecorr {

// univariate polynomial over Q, ascending coefficients
struct KPoly {
    std::vector<Rational> c;
    KPoly() = default;
    KPoly(Rational a) { if (a != 0) c = {std::move(a)}; }
    static KPoly z();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rational eval(const Rational& z) const;
    void trim();
};
KPoly operator+(const KPoly&, const KPoly&);
KPoly operator-(const KPoly&, const KPoly&);
KPoly operator*(const KPoly&, const KPoly&);

// reduced fraction of integer-coefficient polynomials (kept monic in the
// denominator)
struct KRat {
    KPoly num, den;
    KRat() : num(), den(Rational(1)) {}
    KRat(KPoly n, KPoly d);
    static KRat one_over_linear(const Rational& root);  // 1/(z - root)
    bool is_zero() const { return num.is_zero(); }
    Rational eval(const Rational& z) const;
    std::string str() const;
};
KRat operator+(const KRat&, const KRat&);
KRat operator-(const KRat&, const KRat&);
KRat operator*(const KRat&, const KRat&);
KRat operator*(const Rational&, const KRat&);

// free Lie algebra element through degree 2 in the Lyndon basis
// {X0, X1, [X0,X1]}
struct LieElt {
    Rational x0, x1, x01;
    bool is_zero() const { return x0 == 0 && x1 == 0 && x01 == 0; }
};
LieElt lie_bracket(const LieElt& a, const LieElt& b);  // degree-1 inputs

// a special derivation, recorded by its images of the two free generators
struct SpecialDerivation {
    LieElt on_x0, on_x1;
    bool is_zero() const { return on_x0.is_zero() && on_x1.is_zero(); }
};
SpecialDerivation ad_generator(int which);  // ad X0 or ad X1

// derivation from a length-2 cyclic word in the letters {0, 1, infinity}
// via the cyclic derivative and X_s -> [X_s, dF/dX_s], with X_inf
// eliminated as -X0 - X1; letters: 0, 1, 2 = infinity
SpecialDerivation word_derivation(int a, int b);

// Lie-algebra-valued 1-form in dz and dzbar with exact rational-function
// coefficients; the overall (2 pi i)^{-1} is a formal tag
struct DerivationForm {
    // [dzbar][generator slot][Lyndon coefficient]
    KRat slot[2][2][3];
    bool is_zero() const;
    std::string str() const;
};
DerivationForm operator+(const DerivationForm&, const DerivationForm&);

// the derivation-valued 1-form of the weight-(1,1) Green operator on the
// four-punctured sphere; antiholomorphic = the u = 0 side
DerivationForm g11_derivation_form(bool antiholomorphic = false);

// the formal KZ connection pushed through ad (holomorphic or conjugate)
DerivationForm kz_form(bool antiholomorphic = false);

// residual g11 + (Id (x) ad) omega_KZ; must vanish identically
DerivationForm kz_compare(bool antiholomorphic = false);

} // namespace hodgecorr
