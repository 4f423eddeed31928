#pragma once

// Internal mutable half-edge structure used by the surgery routines.
// Half-edges are stable integers with tombstones so that edges keep their
// identity (as (min,max) half-edge pairs) across a surgery, which is what
// the orientation bookkeeping needs.

#include <algorithm>
#include <map>
#include <vector>

#include "hodgecorr/graph.hpp"

namespace hodgecorr::detail {

struct EditGraph {
    std::vector<int> mate;       // -1 = deleted half-edge
    std::vector<int> vertex_of;  // meaningful for live half-edges
    struct V {
        bool alive = true;
        bool internal = true;
        Label label;
    };
    std::vector<V> vertices;
    std::vector<std::pair<int, int>> order;  // live edges in orientation order

    static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

    static EditGraph from(const OrientedGraph& og) {
        EditGraph e;
        e.mate = og.graph.mate;
        e.vertex_of = og.graph.vertex_of;
        e.vertices.reserve(og.graph.vertices.size());
        for (const auto& v : og.graph.vertices)
            e.vertices.push_back({true, v.internal, v.label});
        auto edges = og.graph.edge_list();
        for (int eid : og.edge_order) e.order.push_back(edges[eid]);
        return e;
    }

    int new_half(int vertex) {
        mate.push_back(-2);  // allocated, unpaired
        vertex_of.push_back(vertex);
        return static_cast<int>(mate.size()) - 1;
    }

    int new_vertex(bool internal, Label lab = {}) {
        vertices.push_back({true, internal, lab});
        return static_cast<int>(vertices.size()) - 1;
    }

    void pair_up(int a, int b) {
        mate[a] = b;
        mate[b] = a;
    }

    void kill_half(int h) { mate[h] = -1; }

    std::vector<int> halves_at(int v) const {
        std::vector<int> hs;
        for (int h = 0; h < static_cast<int>(mate.size()); ++h)
            if (mate[h] >= 0 && vertex_of[h] == v) hs.push_back(h);
        return hs;
    }

    OrientedGraph compact() const {
        OrientedGraph out;
        std::vector<int> hid(mate.size(), -1);
        int next = 0;
        for (int h = 0; h < static_cast<int>(mate.size()); ++h)
            if (mate[h] >= 0) hid[h] = next++;
        out.graph.mate.assign(next, -1);
        out.graph.vertex_of.assign(next, -1);
        std::vector<int> vid(vertices.size(), -1);
        for (int h = 0; h < static_cast<int>(mate.size()); ++h) {
            if (mate[h] < 0) continue;
            int v = vertex_of[h];
            if (vid[v] < 0) {
                vid[v] = static_cast<int>(out.graph.vertices.size());
                HalfEdgeGraph::Vertex nv;
                nv.internal = vertices[v].internal;
                nv.label = vertices[v].label;
                out.graph.vertices.push_back(nv);
            }
        }
        for (int h = 0; h < static_cast<int>(mate.size()); ++h) {
            if (mate[h] < 0) continue;
            out.graph.mate[hid[h]] = hid[mate[h]];
            out.graph.vertex_of[hid[h]] = vid[vertex_of[h]];
            out.graph.vertices[vid[vertex_of[h]]].half_edges.push_back(hid[h]);
        }
        for (auto& v : out.graph.vertices)
            std::sort(v.half_edges.begin(), v.half_edges.end());
        auto edges = out.graph.edge_list();
        std::map<std::pair<int, int>, int> idx;
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) idx[edges[e]] = e;
        for (auto [a, b] : order) {
            int x = hid[a], y = hid[b];
            if (x > y) std::swap(x, y);
            out.edge_order.push_back(idx.at({x, y}));
        }
        return out;
    }
};

} // namespace hodgecorr::detail
