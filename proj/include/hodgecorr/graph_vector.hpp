#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgecorr/canon.hpp"
#include "hodgecorr/rational.hpp"

namespace hodgecorr {

// Wedge monomial: canonically sorted list of connected canonical graphs.
// The orientation of a monomial is the concatenation of the canonical edge
// orders of its parts.
struct Monomial {
    std::vector<CanonPtr> parts;

    int total_edges() const {
        int e = 0;
        for (const auto& p : parts) e += p->n_edges();
        return e;
    }
    int degree() const {
        int d = 0;
        for (const auto& p : parts) d += p->stats.degree;
        return d;
    }
    bool empty() const { return parts.empty(); }
    std::string str() const;
};

int monomial_compare(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_compare(a, b) < 0;
    }
};

// Exact-rational linear combination of wedge monomials. Zero-pattern and
// odd-automorphism graphs are dropped on insertion.
class GraphVector {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    GraphVector() = default;

    static GraphVector unit();  // empty monomial with coefficient 1
    static GraphVector single(const CanonResult& c, const Rational& coeff = 1);

    void add(const Monomial& m, const Rational& coeff);
    GraphVector& operator+=(const GraphVector& o);
    GraphVector& operator-=(const GraphVector& o);
    GraphVector& operator*=(const Rational& c);
    friend GraphVector operator+(GraphVector a, const GraphVector& b) { return a += b; }
    friend GraphVector operator-(GraphVector a, const GraphVector& b) { return a -= b; }
    friend GraphVector operator*(const Rational& c, GraphVector v) { return v *= c; }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // degree of a homogeneous vector; nullopt if mixed or zero
    std::optional<int> homogeneous_degree() const;

    std::string str() const;
    std::string to_json() const;

private:
    TermMap terms_;
};

GraphVector wedge(const GraphVector& a, const GraphVector& b);

// Normalize one concrete oriented (possibly disconnected) graph into a
// signed canonical monomial; accumulates coeff * (that monomial) into out.
// Drops zero patterns and odd-automorphism components.
void accumulate_normalized(GraphVector& out, const OrientedGraph& g, const Rational& coeff);

// Rebuild the concrete disconnected graph a monomial stands for: parts
// concatenated in order, edge order = concatenated canonical orders.
OrientedGraph monomial_realize(const Monomial& m);

} // namespace hodgecorr
