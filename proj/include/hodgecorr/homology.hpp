#pragma once

#include <map>
#include <vector>

#include "hodgecorr/graph_vector.hpp"

namespace hodgecorr {

// <a, b> = +-|Aut(a)| if b is the decoration-dual of a (sign comparing
// orientations through canonicalization), else 0.
Rational inner_product(const CanonPtr& a, const CanonPtr& b);

// super-permanent extension to wedge monomials (used by adjointness tests)
Rational inner_product(const Monomial& a, const Monomial& b);
Rational inner_product(const GraphVector& a, const GraphVector& b);

// IHX reduction contexts, one per (decoration multiset, loops, edge count)
// sector; each holds the echelonized span of all three-term resolutions of
// the defect-one graphs in that sector.
class IhxStore {
public:
    // reduce a vector supported on connected uni-trivalent graphs; sector
    // contexts are built and frozen on first use
    GraphVector reduce(const GraphVector& v);

    // the relators of one sector (exposed for tests)
    std::vector<GraphVector> sector_relators(const std::vector<Label>& decorations, int loops,
                                             int edges);

private:
    struct SectorKey {
        std::vector<Label> decorations;
        int loops;
        int edges;
        bool operator<(const SectorKey& o) const {
            if (loops != o.loops) return loops < o.loops;
            if (edges != o.edges) return edges < o.edges;
            return decorations < o.decorations;
        }
    };
    using Echelon = std::map<Monomial, GraphVector, MonomialLess>;
    std::map<SectorKey, Echelon> cache_;

    const Echelon& context(const SectorKey& key);
};

// normal form modulo IHX with the context identified by the representative
struct IhxClass {
    GraphVector representative;  // reduced
    bool operator==(const IhxClass& o) const {
        return (representative - o.representative).is_zero();
    }
};

IhxClass ihx_reduce(const GraphVector& v, IhxStore& store);

// delta = delta_Cas + delta_S*: glue two special legs into an internal edge
// (weight = symplectic pairing), or two equal-S legs into a new trivalent
// vertex carrying a fresh external S-leg. Result reduced mod IHX when a
// store is supplied.
GraphVector dual_delta(const GraphVector& v, IhxStore* store = nullptr);
GraphVector dual_delta_cas(const GraphVector& v, IhxStore* store = nullptr);
GraphVector dual_delta_s(const GraphVector& v, IhxStore* store = nullptr);

// [a, b] = [a,b]_Cas + [a,b]_S*: the same gluings applied across the two
// arguments; connected results
GraphVector dual_bracket(const GraphVector& a, const GraphVector& b, IhxStore* store = nullptr);
GraphVector dual_bracket_cas(const GraphVector& a, const GraphVector& b,
                             IhxStore* store = nullptr);
GraphVector dual_bracket_s(const GraphVector& a, const GraphVector& b,
                           IhxStore* store = nullptr);

} // namespace hodgecorr
