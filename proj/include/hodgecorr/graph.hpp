#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodgecorr/label.hpp"

namespace hodgecorr {

struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};

// Half-edge representation of a decorated graph: a fixed-point-free perfect
// matching on half-edges plus a partition into internal blocks (valency >= 3)
// and labeled external blocks (valency 1).
struct HalfEdgeGraph {
    struct Vertex {
        bool internal = true;
        Label label;                  // meaningful only for external vertices
        std::vector<int> half_edges;  // sorted
    };

    std::vector<int> mate;       // mate[h] = matched half-edge
    std::vector<int> vertex_of;  // vertex_of[h] = vertex id
    std::vector<Vertex> vertices;

    int n_half() const { return static_cast<int>(mate.size()); }
    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_edges() const { return n_half() / 2; }

    int n_internal() const;
    int n_external() const;

    // Edges as (h, mate[h]) with h < mate[h], listed by increasing h.
    // Edge ids used throughout are indices into this list.
    std::vector<std::pair<int, int>> edge_list() const;

    // endpoints (vertex ids) of edge e, unordered as stored
    std::pair<int, int> edge_ends(int e) const;

    bool edge_is_internal(int e) const;
    // external edge decorated by an S-point: returns the label index or -1
    bool edge_is_s_external(int e) const;

    // throws GraphError naming the offending indices; requires uni-trivalence
    // only when `require_trivalent` is set
    void validate(bool require_trivalent = false) const;

    int n_components() const;
    std::vector<int> component_of_vertex() const;
    bool connected() const;

    int loop_count() const;  // |E| - |V| + #components

    bool has_self_loop() const;
    bool has_multi_edge() const;

    std::vector<Label> decoration_multiset() const;  // sorted

    std::string dot() const;
};

// def = 2|E| - 3|V_int| - |V_ext|, ord = |E| - |V|, loops = ord + 1,
// deg = |E| - 2|V_int|; connected input required.
struct GraphStats {
    int defect = 0;
    int order = 0;
    int loops = 0;
    int degree = 0;
};
GraphStats graph_stats(const HalfEdgeGraph& g);

// The zero relations: (A) self-loop, (B) two-vertex graph with equal labels,
// (C) internal vertex adjacent to two equal-labeled external vertices,
// (D) non-regular (multi-)edge.
bool is_zero_pattern(const HalfEdgeGraph& g);

// Graph with an explicit edge order (an orientation-torsor representative).
struct OrientedGraph {
    HalfEdgeGraph graph;
    std::vector<int> edge_order;  // permutation of edge ids

    void check() const;
};

// Raw half-edge data as found in the JSON schema; validate_graph turns it
// into a checked HalfEdgeGraph.
struct RawGraphData {
    int half_edges = 0;
    std::vector<std::pair<int, int>> matching;
    std::vector<std::vector<int>> internal_blocks;
    std::vector<std::pair<int, Label>> external_blocks;
    std::vector<int> edge_order;  // optional; indices into `matching`
};

HalfEdgeGraph validate_graph(const RawGraphData& raw);
OrientedGraph validate_oriented(const RawGraphData& raw);

std::string graph_to_json(const OrientedGraph& g);
OrientedGraph graph_from_json(const std::string& json_text);

// parity of the permutation taking `seq` to sorted order; seq must be a
// permutation of 0..n-1
int permutation_sign(const std::vector<int>& seq);

} // namespace hodgecorr
