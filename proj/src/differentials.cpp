#include "hodgecorr/differentials.hpp"

#include "edit_graph.hpp"

namespace hodgecorr {

using detail::EditGraph;

GraphVector d_delta(const GraphVector& v) {
    GraphVector out;
    for (const auto& [mono, coeff] : v.terms()) {
        OrientedGraph og = monomial_realize(mono);
        auto edges = og.graph.edge_list();
        for (size_t p = 0; p < og.edge_order.size(); ++p) {
            int eid = og.edge_order[p];
            if (!og.graph.edge_is_internal(eid)) continue;
            auto [a, b] = edges[eid];
            int u = og.graph.vertex_of[a], w = og.graph.vertex_of[b];
            if (u == w) continue;  // self-loops never appear in stored vectors
            EditGraph eg = EditGraph::from(og);
            for (int h = 0; h < static_cast<int>(eg.mate.size()); ++h)
                if (eg.mate[h] >= 0 && eg.vertex_of[h] == w) eg.vertex_of[h] = u;
            eg.vertices[w].alive = false;
            eg.kill_half(a);
            eg.kill_half(b);
            eg.order.erase(eg.order.begin() + p);
            Rational sgn = (p & 1) ? -1 : 1;
            accumulate_normalized(out, eg.compact(), coeff * sgn);
        }
    }
    return out;
}

GraphVector d_cas(const GraphVector& v, int genus) {
    GraphVector out;
    if (genus <= 0) return out;
    for (const auto& [mono, coeff] : v.terms()) {
        OrientedGraph og = monomial_realize(mono);
        auto edges = og.graph.edge_list();
        for (size_t p = 0; p < og.edge_order.size(); ++p) {
            int eid = og.edge_order[p];
            auto [a, b] = edges[eid];  // a < b
            // the Casimir of the symplectic pairing runs over the full basis:
            // id = sum_k (ahol_k (x) hol_k  -  hol_k (x) ahol_k)
            for (int k = 1; k <= genus; ++k) {
                for (int flip = 0; flip < 2; ++flip) {
                    EditGraph eg = EditGraph::from(og);
                    Label la = flip ? hol_label(k) : ahol_label(k);
                    Label lb = flip ? ahol_label(k) : hol_label(k);
                    int vx = eg.new_vertex(false, la);
                    int vy = eg.new_vertex(false, lb);
                    int x = eg.new_half(vx);
                    int y = eg.new_half(vy);
                    eg.pair_up(a, x);
                    eg.pair_up(b, y);
                    eg.order.erase(eg.order.begin() + p);
                    eg.order.insert(eg.order.begin(), EditGraph::key(b, y));
                    eg.order.insert(eg.order.begin(), EditGraph::key(a, x));
                    Rational sgn = (p & 1) ? -1 : 1;
                    if (flip) sgn = -sgn;
                    accumulate_normalized(out, eg.compact(), coeff * sgn);
                }
            }
        }
    }
    return out;
}

GraphVector d_s(const GraphVector& v) {
    GraphVector out;
    for (const auto& [mono, coeff] : v.terms()) {
        OrientedGraph og = monomial_realize(mono);
        auto edges = og.graph.edge_list();
        for (size_t p = 0; p < og.edge_order.size(); ++p) {
            int eid = og.edge_order[p];
            auto [a, b] = edges[eid];
            int va = og.graph.vertex_of[a], vb = og.graph.vertex_of[b];
            bool a_int = og.graph.vertices[va].internal;
            bool b_int = og.graph.vertices[vb].internal;
            if (a_int == b_int) continue;  // internal edge, or bare 2-vertex tree
            int v_int = a_int ? va : vb;
            int v_ext = a_int ? vb : va;
            if (!og.graph.vertices[v_ext].label.is_s()) continue;
            Label s = og.graph.vertices[v_ext].label;
            EditGraph eg = EditGraph::from(og);
            eg.kill_half(a);
            eg.kill_half(b);
            eg.vertices[v_ext].alive = false;
            for (int h : eg.halves_at(v_int)) {
                int nv = eg.new_vertex(false, s);
                eg.vertex_of[h] = nv;
            }
            eg.vertices[v_int].alive = false;
            eg.order.erase(eg.order.begin() + p);
            Rational sgn = (p & 1) ? -1 : 1;
            accumulate_normalized(out, eg.compact(), coeff * sgn);
        }
    }
    return out;
}

GraphVector d_total(const GraphVector& v, int genus) {
    GraphVector out = d_delta(v);
    out += d_cas(v, genus);
    out += d_s(v);
    return out;
}

} // namespace hodgecorr
