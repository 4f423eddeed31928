#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hodgecorr/graph.hpp"

namespace hodgecorr {

// Canonical form of a connected decorated graph. Two graphs are isomorphic
// as decorated Feynman graphs iff their certificates are equal. The stored
// half-edge graph is the canonical representative; its edge list in listing
// order is the canonical edge order.
struct CanonicalGraph {
    HalfEdgeGraph graph;
    std::vector<int64_t> certificate;
    size_t hash = 0;
    int64_t aut_count = 0;  // |Aut| of the decorated Feynman graph
    // some automorphism permutes the edge set oddly; the graph then equals
    // its own negative and vanishes as a graph-complex element
    bool odd_auto = false;
    GraphStats stats;
    std::vector<Label> decorations;  // sorted multiset

    int n_edges() const { return graph.n_edges(); }
    int loops() const { return stats.loops; }
    int degree_parity() const { return graph.n_edges() & 1; }
};

using CanonPtr = std::shared_ptr<const CanonicalGraph>;

struct CanonResult {
    CanonPtr graph;
    int sign = 1;
};

// certificate-based total order / equality
int canon_compare(const CanonicalGraph& a, const CanonicalGraph& b);
inline bool canon_equal(const CanonPtr& a, const CanonPtr& b) {
    return a == b || canon_compare(*a, *b) == 0;
}
inline bool canon_less(const CanonPtr& a, const CanonPtr& b) {
    return canon_compare(*a, *b) < 0;
}

// Canonicalize a connected oriented graph. The sign is the parity relating
// the input edge order to the canonical one through the relabeling; it is
// well defined whenever the graph does not vanish by an odd automorphism.
CanonResult canonicalize(const OrientedGraph& g);

// convenience: canonical edge order = identity
CanonResult canonicalize(const HalfEdgeGraph& g);

// |Aut| of a connected decorated graph without building the full canonical
// form twice (exposed for tests; canonicalize() already fills aut_count)
int64_t automorphism_count(const HalfEdgeGraph& g);

// Exhaustive oracle: count bijections of half-edges preserving the matching,
// the vertex partition, and decorations. Exponential; test use only.
int64_t automorphism_count_bruteforce(const HalfEdgeGraph& g);

// label map applied to every external vertex (e.g. Label::dual)
HalfEdgeGraph relabel_dual(const HalfEdgeGraph& g);

// dual canonical graph (dual decoration on every external vertex)
CanonResult canonical_dual(const CanonicalGraph& g);

} // namespace hodgecorr
