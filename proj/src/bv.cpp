#include "hodgecorr/bv.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace hodgecorr {

void RatPoly::trim() {
    while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

RatPoly RatPoly::t() {
    RatPoly p;
    p.coef_ = {0, 1};
    return p;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (coef_.size() < o.coef_.size()) coef_.resize(o.coef_.size());
    for (size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (coef_.size() < o.coef_.size()) coef_.resize(o.coef_.size());
    for (size_t i = 0; i < o.coef_.size(); ++i) coef_[i] -= o.coef_[i];
    trim();
    return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    RatPoly out;
    if (a.coef_.empty() || b.coef_.empty()) return out;
    out.coef_.assign(a.coef_.size() + b.coef_.size() - 1, 0);
    for (size_t i = 0; i < a.coef_.size(); ++i)
        for (size_t j = 0; j < b.coef_.size(); ++j) out.coef_[i + j] += a.coef_[i] * b.coef_[j];
    out.trim();
    return out;
}

RatPoly RatPoly::derivative() const {
    RatPoly out;
    for (size_t i = 1; i < coef_.size(); ++i) out.coef_.push_back(coef_[i] * Rational(i));
    out.trim();
    return out;
}

Rational RatPoly::eval(const Rational& t) const {
    Rational v = 0;
    for (size_t i = coef_.size(); i-- > 0;) v = v * t + coef_[i];
    return v;
}

void BVPolynomial::add(const Key& k, const RatPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BVPolynomial BVPolynomial::x(int m, int i) {
    BVPolynomial p(m);
    Key k;
    k.xdeg.assign(m, 0);
    k.xdeg[i - 1] = 1;
    p.add(k, RatPoly(1));
    return p;
}

BVPolynomial BVPolynomial::y(int m, int i) {
    BVPolynomial p(m);
    Key k;
    k.xdeg.assign(m, 0);
    k.ybits = 1u << (i - 1);
    p.add(k, RatPoly(1));
    return p;
}

BVPolynomial BVPolynomial::constant(int m, const RatPoly& c) {
    BVPolynomial p(m);
    Key k;
    k.xdeg.assign(m, 0);
    p.add(k, c);
    return p;
}

BVPolynomial& BVPolynomial::operator+=(const BVPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

BVPolynomial& BVPolynomial::operator-=(const BVPolynomial& o) {
    for (const auto& [k, c] : o.terms_) {
        RatPoly n;
        n -= c;
        add(k, n);
    }
    return *this;
}

BVPolynomial& BVPolynomial::operator*=(const Rational& c) {
    BVPolynomial out(m_);
    for (const auto& [k, p] : terms_) out.add(k, p * RatPoly(c));
    *this = out;
    return *this;
}

namespace {
// sign of concatenating two increasing odd blocks: (-1)^{#{(s,t): s in S,
// t in T, s > t}}; zero overlap assumed checked
int merge_sign(uint32_t S, uint32_t T) {
    int inv = 0;
    for (uint32_t t = T; t; t &= t - 1) {
        int bit = std::countr_zero(t);
        inv += std::popcount(S >> (bit + 1));
    }
    return (inv & 1) ? -1 : 1;
}
} // namespace

BVPolynomial operator*(const BVPolynomial& a, const BVPolynomial& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("BV dimension mismatch");
    BVPolynomial out(a.dim());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.ybits & kb.ybits) continue;
            BVPolynomial::Key k;
            k.xdeg.resize(ka.xdeg.size());
            for (size_t i = 0; i < k.xdeg.size(); ++i) k.xdeg[i] = ka.xdeg[i] + kb.xdeg[i];
            k.ybits = ka.ybits | kb.ybits;
            int s = merge_sign(ka.ybits, kb.ybits);
            RatPoly c = ca * cb;
            if (s < 0) {
                RatPoly n;
                n -= c;
                c = n;
            }
            out.add(k, c);
        }
    }
    return out;
}

BVPolynomial BVPolynomial::even_part() const {
    BVPolynomial out(m_);
    for (const auto& [k, c] : terms_)
        if (std::popcount(k.ybits) % 2 == 0) out.add(k, c);
    return out;
}

BVPolynomial BVPolynomial::odd_part() const {
    BVPolynomial out(m_);
    for (const auto& [k, c] : terms_)
        if (std::popcount(k.ybits) % 2 == 1) out.add(k, c);
    return out;
}

BVPolynomial BVPolynomial::dx(int i) const {
    BVPolynomial out(m_);
    for (const auto& [k, c] : terms_) {
        if (k.xdeg[i - 1] == 0) continue;
        Key nk = k;
        nk.xdeg[i - 1] -= 1;
        out.add(nk, c * RatPoly(Rational(k.xdeg[i - 1])));
    }
    return out;
}

BVPolynomial BVPolynomial::dy(int i) const {
    BVPolynomial out(m_);
    const uint32_t bit = 1u << (i - 1);
    for (const auto& [k, c] : terms_) {
        if (!(k.ybits & bit)) continue;
        Key nk = k;
        nk.ybits &= ~bit;
        // factors before y_i in the increasing-order product
        int before = std::popcount(k.ybits & (bit - 1));
        RatPoly cc = c;
        if (before & 1) {
            RatPoly n;
            n -= cc;
            cc = n;
        }
        out.add(nk, cc);
    }
    return out;
}

BVPolynomial BVPolynomial::dt() const {
    BVPolynomial out(m_);
    for (const auto& [k, c] : terms_) out.add(k, c.derivative());
    return out;
}

BVPolynomial BVPolynomial::substitute(const std::vector<std::vector<Rational>>& A,
                                      const std::vector<std::vector<Rational>>& B) const {
    BVPolynomial out(m_);
    for (const auto& [k, c] : terms_) {
        BVPolynomial term = BVPolynomial::constant(m_, c);
        for (int i = 0; i < m_; ++i) {
            BVPolynomial xi(m_);
            for (int j = 0; j < m_; ++j) {
                BVPolynomial xj = BVPolynomial::x(m_, j + 1);
                xj *= A[i][j];
                xi += xj;
            }
            for (int d = 0; d < k.xdeg[i]; ++d) term = term * xi;
        }
        for (int i = 0; i < m_; ++i) {
            if (!(k.ybits & (1u << i))) continue;
            BVPolynomial yi(m_);
            for (int j = 0; j < m_; ++j) {
                BVPolynomial yj = BVPolynomial::y(m_, j + 1);
                yj *= B[i][j];
                yi += yj;
            }
            term = term * yi;
        }
        out += term;
    }
    return out;
}

std::string BVPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(";
        for (size_t i = 0; i < c.coef().size(); ++i) {
            if (i) os << "+";
            os << c.coef()[i].str();
            if (i) os << "t^" << i;
        }
        os << ")";
        for (int i = 0; i < m_; ++i)
            for (int d = 0; d < k.xdeg[i]; ++d) os << "*x" << i + 1;
        for (int i = 0; i < m_; ++i)
            if (k.ybits & (1u << i)) os << "*y" << i + 1;
    }
    return os.str();
}

BVPolynomial bv_laplacian(const BVPolynomial& f) {
    BVPolynomial out(f.dim());
    for (int i = 1; i <= f.dim(); ++i) out += f.dy(i).dx(i);
    return out;
}

namespace {

BVPolynomial gerstenhaber_homogeneous(const BVPolynomial& f, const BVPolynomial& g,
                                      int f_parity) {
    // route 1: failure of Delta to be a derivation
    BVPolynomial r1 = bv_laplacian(f * g);
    r1 -= bv_laplacian(f) * g;
    BVPolynomial fg = f * bv_laplacian(g);
    if (f_parity & 1) fg *= Rational(-1);
    r1 -= fg;
    // route 2: the displayed first-order formula
    BVPolynomial r2(f.dim());
    for (int i = 1; i <= f.dim(); ++i) {
        BVPolynomial a = f.dx(i) * g.dy(i);
        if (f_parity & 1) a *= Rational(-1);
        r2 += a;
        r2 += f.dy(i) * g.dx(i);
    }
    if (!(r1 - r2).is_zero())
        throw std::logic_error("Gerstenhaber bracket: the two defining formulas disagree");
    return r1;
}

} // namespace

BVPolynomial gerstenhaber(const BVPolynomial& f, const BVPolynomial& g) {
    BVPolynomial out(f.dim());
    out += gerstenhaber_homogeneous(f.even_part(), g, 0);
    out += gerstenhaber_homogeneous(f.odd_part(), g, 1);
    return out;
}

BVElement qme_residual_pointwise(const BVElement& S, int hbar_order) {
    if (S.empty()) return {};
    const int m = S[0].dim();
    for (const auto& s : S)
        if (!s.is_even()) throw std::invalid_argument("the action must be even");
    BVElement out(hbar_order + 1, BVPolynomial(m));
    for (int p = 0; p <= hbar_order; ++p) {
        for (int a = 0; a <= p && a < static_cast<int>(S.size()); ++a) {
            int b = p - a;
            if (b >= static_cast<int>(S.size())) continue;
            BVPolynomial half = gerstenhaber(S[a], S[b]);
            half *= Rational(1, 2);
            out[p] += half;
        }
        if (p >= 1 && p - 1 < static_cast<int>(S.size())) out[p] += bv_laplacian(S[p - 1]);
    }
    return out;
}

bool BVHomotopyResidual::is_zero() const {
    for (const auto& p : eq_a)
        if (!p.is_zero()) return false;
    for (const auto& p : eq_b)
        if (!p.is_zero()) return false;
    return true;
}

BVHomotopyResidual qme_residual_homotopy(const BVElement& A, const BVElement& B,
                                         int hbar_order) {
    BVHomotopyResidual r;
    r.eq_a = qme_residual_pointwise(A, hbar_order);
    const int m = A.empty() ? (B.empty() ? 1 : B[0].dim()) : A[0].dim();
    r.eq_b.assign(hbar_order + 1, BVPolynomial(m));
    for (int p = 0; p <= hbar_order; ++p) {
        if (p < static_cast<int>(A.size())) r.eq_b[p] += A[p].dt();
        for (int a = 0; a <= p; ++a) {
            int b = p - a;
            if (a < static_cast<int>(B.size()) && b < static_cast<int>(A.size()))
                r.eq_b[p] += gerstenhaber(B[a], A[b]);
        }
        if (p >= 1 && p - 1 < static_cast<int>(B.size())) r.eq_b[p] += bv_laplacian(B[p - 1]);
    }
    return r;
}

} // namespace hodgecorr
