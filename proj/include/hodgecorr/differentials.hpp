#pragma once

#include "hodgecorr/graph_vector.hpp"

namespace hodgecorr {

// The three pieces of the graph-complex differential, extended to wedge
// monomials by acting on every edge of the realized disconnected graph
// (this is the Leibniz rule with all Koszul signs carried by the edge-order
// bookkeeping).

// contract internal edges: Or = E ^ Or(G/E)
GraphVector d_delta(const GraphVector& v);

// cut every edge, inserting the Casimir pair hol_k / ahol_k (k = 1..genus);
// cycle and non-cycle cases share the orientation rule
// Or(G) = E ^ X  ->  Or(out) = E1 ^ E2 ^ X
GraphVector d_cas(const GraphVector& v, int genus);

// remove an S-decorated external edge together with its internal endpoint;
// the cut ends become new external vertices carrying the same S-label;
// the two-external-vertex tree component maps to zero
GraphVector d_s(const GraphVector& v);

GraphVector d_total(const GraphVector& v, int genus);

} // namespace hodgecorr
