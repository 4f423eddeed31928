#include "hodgecorr/kz.hpp"

#include <sstream>
#include <stdexcept>

namespace hodgecorr {

void KPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

KPoly KPoly::z() {
    KPoly p;
    p.c = {0, 1};
    return p;
}

Rational KPoly::eval(const Rational& z) const {
    Rational v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

KPoly operator+(const KPoly& a, const KPoly& b) {
    KPoly out = a;
    if (out.c.size() < b.c.size()) out.c.resize(b.c.size());
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
    out.trim();
    return out;
}

KPoly operator-(const KPoly& a, const KPoly& b) {
    KPoly out = a;
    if (out.c.size() < b.c.size()) out.c.resize(b.c.size());
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] -= b.c[i];
    out.trim();
    return out;
}

KPoly operator*(const KPoly& a, const KPoly& b) {
    KPoly out;
    if (a.is_zero() || b.is_zero()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
}

namespace {

KPoly poly_mod(KPoly a, const KPoly& b) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational f = a.c.back() / b.c.back();
        int shift = a.degree() - b.degree();
        for (size_t i = 0; i < b.c.size(); ++i) a.c[i + shift] -= f * b.c[i];
        a.trim();
    }
    return a;
}

KPoly poly_gcd(KPoly a, KPoly b) {
    while (!b.is_zero()) {
        KPoly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        Rational lead = a.c.back();
        for (auto& x : a.c) x /= lead;
    }
    return a;
}

KPoly poly_div_exact(KPoly a, const KPoly& b) {
    KPoly q;
    q.c.assign(std::max<int>(0, a.degree() - b.degree() + 1), 0);
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational f = a.c.back() / b.c.back();
        int shift = a.degree() - b.degree();
        q.c[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i) a.c[i + shift] -= f * b.c[i];
        a.trim();
    }
    if (!a.is_zero()) throw std::logic_error("poly_div_exact: nonzero remainder");
    q.trim();
    return q;
}

} // namespace

KRat::KRat(KPoly n, KPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("KRat: zero denominator");
    if (num.is_zero()) {
        den = KPoly(Rational(1));
        return;
    }
    KPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = poly_div_exact(num, g);
        den = poly_div_exact(den, g);
    }
    Rational lead = den.c.back();
    for (auto& x : den.c) x /= lead;
    for (auto& x : num.c) x /= lead;
}

KRat KRat::one_over_linear(const Rational& root) {
    KPoly d;
    d.c = {-root, 1};
    return KRat(KPoly(Rational(1)), d);
}

Rational KRat::eval(const Rational& z) const { return num.eval(z) / den.eval(z); }

std::string KRat::str() const {
    auto poly_str = [](const KPoly& p) {
        if (p.is_zero()) return std::string("0");
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < p.c.size(); ++i) {
            if (p.c[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << p.c[i].str();
            if (i == 1) os << "*z";
            if (i > 1) os << "*z^" << i;
        }
        return os.str();
    };
    if (den.degree() == 0 && !den.is_zero() && den.c[0] == 1) return poly_str(num);
    return "(" + poly_str(num) + ")/(" + poly_str(den) + ")";
}

KRat operator+(const KRat& a, const KRat& b) {
    return KRat(a.num * b.den + b.num * a.den, a.den * b.den);
}
KRat operator-(const KRat& a, const KRat& b) {
    return KRat(a.num * b.den - b.num * a.den, a.den * b.den);
}
KRat operator*(const KRat& a, const KRat& b) { return KRat(a.num * b.num, a.den * b.den); }
KRat operator*(const Rational& c, const KRat& a) { return KRat(KPoly(c) * a.num, a.den); }

LieElt lie_bracket(const LieElt& a, const LieElt& b) {
    if (a.x01 != 0 || b.x01 != 0)
        throw std::logic_error("lie_bracket: degree > 2 not representable");
    LieElt out;
    out.x01 = a.x0 * b.x1 - a.x1 * b.x0;
    return out;
}

SpecialDerivation ad_generator(int which) {
    SpecialDerivation d;
    LieElt w;
    if (which == 0)
        w.x0 = 1;
    else
        w.x1 = 1;
    LieElt e0, e1;
    e0.x0 = 1;
    e1.x1 = 1;
    d.on_x0 = lie_bracket(w, e0);
    d.on_x1 = lie_bracket(w, e1);
    return d;
}

SpecialDerivation word_derivation(int a, int b) {
    // letters 0, 1, 2 = infinity; X_inf = -X0 - X1
    auto letter = [](int s) {
        LieElt e;
        if (s == 0) e.x0 = 1;
        else if (s == 1) e.x1 = 1;
        else {
            e.x0 = -1;
            e.x1 = -1;
        }
        return e;
    };
    // cyclic derivative of C(X_a X_b): dF/dX_s = [s == a] X_b + [s == b] X_a
    auto dF = [&](int s) {
        LieElt out;
        if (s == a) {
            LieElt lb = letter(b);
            out.x0 += lb.x0;
            out.x1 += lb.x1;
        }
        if (s == b) {
            LieElt la = letter(a);
            out.x0 += la.x0;
            out.x1 += la.x1;
        }
        return out;
    };
    // X_s -> [X_s, dF/dX_s] summed over the puncture letters; the images of
    // the free generators X0, X1 determine the derivation
    SpecialDerivation d;
    LieElt e0, e1;
    e0.x0 = 1;
    e1.x1 = 1;
    d.on_x0 = lie_bracket(e0, dF(0));
    d.on_x1 = lie_bracket(e1, dF(1));
    // consistency of the eliminated generator: the direct assignment of
    // X_inf must match -(image of X0) - (image of X1)
    LieElt einf = letter(2);
    LieElt direct = lie_bracket(einf, dF(2));
    LieElt derived;
    derived.x01 = -(d.on_x0.x01 + d.on_x1.x01);
    if (!(direct.x01 == derived.x01))
        throw std::logic_error("word_derivation: not a special derivation");
    return d;
}

bool DerivationForm::is_zero() const {
    for (int b = 0; b < 2; ++b)
        for (int g = 0; g < 2; ++g)
            for (int k = 0; k < 3; ++k)
                if (!slot[b][g][k].is_zero()) return false;
    return true;
}

std::string DerivationForm::str() const {
    static const char* gen[2] = {"X0", "X1"};
    static const char* lyn[3] = {"X0", "X1", "[X0,X1]"};
    std::ostringstream os;
    bool any = false;
    for (int b = 0; b < 2; ++b)
        for (int g = 0; g < 2; ++g)
            for (int k = 0; k < 3; ++k) {
                if (slot[b][g][k].is_zero()) continue;
                any = true;
                os << "  (" << slot[b][g][k].str() << ") " << (b ? "dzbar" : "dz") << " : "
                   << gen[g] << " -> " << lyn[k] << "\n";
            }
    if (!any) return "  0\n";
    return os.str();
}

DerivationForm operator+(const DerivationForm& a, const DerivationForm& b) {
    DerivationForm out;
    for (int i = 0; i < 2; ++i)
        for (int g = 0; g < 2; ++g)
            for (int k = 0; k < 3; ++k) out.slot[i][g][k] = a.slot[i][g][k] + b.slot[i][g][k];
    return out;
}

namespace {

void add_term(DerivationForm& f, bool dzbar, const KRat& coeff, const SpecialDerivation& d) {
    const LieElt* imgs[2] = {&d.on_x0, &d.on_x1};
    for (int g = 0; g < 2; ++g) {
        const LieElt& e = *imgs[g];
        if (e.x0 != 0) f.slot[dzbar][g][0] = f.slot[dzbar][g][0] + e.x0 * coeff;
        if (e.x1 != 0) f.slot[dzbar][g][1] = f.slot[dzbar][g][1] + e.x1 * coeff;
        if (e.x01 != 0) f.slot[dzbar][g][2] = f.slot[dzbar][g][2] + e.x01 * coeff;
    }
}

} // namespace

DerivationForm g11_derivation_form(bool antiholomorphic) {
    // 2 pi i G(s,t) = log|s-t| - log|z-s| - log|z-t| + C(z, v_z) on
    // S* = {0, 1, infinity}; terms at infinity drop after the tangential
    // normalization, and d log|f| contributes f'/f on the holomorphic side
    // (f'bar/fbar on the antiholomorphic side). The identification of the
    // Green operator with a derivation-valued form carries one overall sign
    // from conjugating the (2 pi i)^{-1} unit through the duality.
    struct Pair {
        int a, b;
        std::vector<Rational> poles;  // finite poles contributing -1/(z-p)
    };
    std::vector<Pair> pairs = {{0, 1, {0, 1}}, {0, 2, {0}}, {1, 2, {1}}};
    DerivationForm out;
    for (const auto& pr : pairs) {
        KRat coeff;
        for (const Rational& p : pr.poles) coeff = coeff - KRat::one_over_linear(p);
        SpecialDerivation d = word_derivation(pr.a, pr.b);
        // overall minus from the duality identification
        add_term(out, antiholomorphic, Rational(-1) * coeff, d);
    }
    // the regular part acts by the zero derivation: C multiplies the sum of
    // all three words, whose derivation vanishes after eliminating X_inf
    {
        SpecialDerivation sum;
        for (const auto& pr : pairs) {
            SpecialDerivation d = word_derivation(pr.a, pr.b);
            sum.on_x0.x0 += d.on_x0.x0;
            sum.on_x0.x1 += d.on_x0.x1;
            sum.on_x0.x01 += d.on_x0.x01;
            sum.on_x1.x0 += d.on_x1.x0;
            sum.on_x1.x1 += d.on_x1.x1;
            sum.on_x1.x01 += d.on_x1.x01;
        }
        if (!sum.is_zero()) throw std::logic_error("regular part does not vanish");
    }
    return out;
}

DerivationForm kz_form(bool antiholomorphic) {
    // omega_KZ = (2 pi i)^{-1} (dz/z (x) X0 + dz/(z-1) (x) X1), pushed
    // through ad; the u = 0 side is the formal conjugate
    DerivationForm out;
    add_term(out, antiholomorphic, KRat::one_over_linear(0), ad_generator(0));
    add_term(out, antiholomorphic, KRat::one_over_linear(1), ad_generator(1));
    return out;
}

DerivationForm kz_compare(bool antiholomorphic) {
    return g11_derivation_form(antiholomorphic) + kz_form(antiholomorphic);
}

} // namespace hodgecorr
