#include "hodgecorr/homology.hpp"

#include <algorithm>
#include <functional>

#include "edit_graph.hpp"
#include "hodgecorr/enumerate.hpp"

namespace hodgecorr {

using detail::EditGraph;

Rational inner_product(const CanonPtr& a, const CanonPtr& b) {
    auto d = canonical_dual(*b);
    if (canon_compare(*a, *d.graph) != 0) return 0;
    if (a->odd_auto) return 0;
    return Rational(d.sign) * a->aut_count;
}

Rational inner_product(const Monomial& a, const Monomial& b) {
    if (a.parts.size() != b.parts.size()) return 0;
    const size_t m = a.parts.size();
    std::vector<char> used(m, 0);
    // super-permanent: sum over matchings with Koszul signs from odd factors
    std::function<Rational(size_t, int)> rec = [&](size_t i, int) -> Rational {
        if (i == m) return 1;
        Rational total = 0;
        for (size_t j = 0; j < m; ++j) {
            if (used[j]) continue;
            Rational p = inner_product(a.parts[i], b.parts[j]);
            if (p == 0) continue;
            // moving b_j to position i: count odd-degree factors skipped on
            // both sides
            int skip = 0;
            if (a.parts[i]->n_edges() & 1)
                for (size_t k = 0; k < j; ++k)
                    if (!used[k] && (b.parts[k]->n_edges() & 1)) ++skip;
            used[j] = 1;
            Rational sub = rec(i + 1, 0);
            used[j] = 0;
            total += ((skip & 1) ? -p : p) * sub;
        }
        return total;
    };
    return rec(0, 0);
}

Rational inner_product(const GraphVector& a, const GraphVector& b) {
    Rational total = 0;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) total += ca * cb * inner_product(ma, mb);
    return total;
}

namespace {

struct SpecialLeg {
    int pos;    // position in edge order
    int h_int;  // half-edge at the inner end (may sit on an external vertex
                // for the bare 2-vertex graph)
    int h_ext;  // half-edge at the decorated external vertex
    Label label;
};

// legs of a realized graph whose external end carries `special` (or S) labels
std::vector<SpecialLeg> find_legs(const OrientedGraph& og, bool special) {
    std::vector<SpecialLeg> out;
    auto edges = og.graph.edge_list();
    for (size_t p = 0; p < og.edge_order.size(); ++p) {
        auto [a, b] = edges[og.edge_order[p]];
        int va = og.graph.vertex_of[a], vb = og.graph.vertex_of[b];
        bool a_ext = !og.graph.vertices[va].internal;
        bool b_ext = !og.graph.vertices[vb].internal;
        // for a 2-vertex component both ends qualify as legs
        if (a_ext && og.graph.vertices[va].label.is_special() == special)
            out.push_back({static_cast<int>(p), b, a, og.graph.vertices[va].label});
        if (b_ext && og.graph.vertices[vb].label.is_special() == special)
            out.push_back({static_cast<int>(p), a, b, og.graph.vertices[vb].label});
    }
    return out;
}

// bring positions p1 then p2 to the front: parity of that rearrangement
int front_two_sign(int p1, int p2, int) {
    int moves = p1 + (p2 > p1 ? p2 - 1 : p2);
    return (moves & 1) ? -1 : 1;
}

// glue two special legs into a single edge; orientation
// Or(in) = e1 ^ e2 ^ X  ->  Or(out) = E ^ X
void glue_cas_term(GraphVector& out, const OrientedGraph& og, const SpecialLeg& e1,
                   const SpecialLeg& e2, const Rational& coeff) {
    int w = label_pairing(e1.label, e2.label);
    if (w == 0) return;
    EditGraph eg = EditGraph::from(og);
    int sgn = front_two_sign(e1.pos, e2.pos, static_cast<int>(og.edge_order.size()));
    // delete the two external vertices, join the inner half-edges
    eg.vertices[eg.vertex_of[e1.h_ext]].alive = false;
    eg.vertices[eg.vertex_of[e2.h_ext]].alive = false;
    eg.kill_half(e1.h_ext);
    eg.kill_half(e2.h_ext);
    eg.pair_up(e1.h_int, e2.h_int);
    // rebuild order: E first, rest in relative order
    std::vector<std::pair<int, int>> rest;
    for (size_t p = 0; p < eg.order.size(); ++p)
        if (static_cast<int>(p) != e1.pos && static_cast<int>(p) != e2.pos)
            rest.push_back(eg.order[p]);
    eg.order.clear();
    eg.order.push_back(EditGraph::key(e1.h_int, e2.h_int));
    for (auto& e : rest) eg.order.push_back(e);
    accumulate_normalized(out, eg.compact(), coeff * w * sgn);
}

// glue two equal-S legs at a new trivalent vertex with a fresh external
// S-leg; orientation Or(out) = E_new ^ Or(in), legs keep their positions
void glue_s_term(GraphVector& out, const OrientedGraph& og, const SpecialLeg& e1,
                 const SpecialLeg& e2, const Rational& coeff) {
    if (!(e1.label == e2.label)) return;
    EditGraph eg = EditGraph::from(og);
    int u = eg.new_vertex(true);
    // old external vertices die; their half-edges move to u
    eg.vertices[eg.vertex_of[e1.h_ext]].alive = false;
    eg.vertices[eg.vertex_of[e2.h_ext]].alive = false;
    eg.vertex_of[e1.h_ext] = u;
    eg.vertex_of[e2.h_ext] = u;
    int vext = eg.new_vertex(false, e1.label);
    int w = eg.new_half(u);
    int y = eg.new_half(vext);
    eg.pair_up(w, y);
    eg.order.insert(eg.order.begin(), EditGraph::key(w, y));
    accumulate_normalized(out, eg.compact(), coeff);
}

GraphVector reduce_maybe(GraphVector v, IhxStore* store) {
    if (store) return store->reduce(v);
    return v;
}

} // namespace

GraphVector dual_delta_cas(const GraphVector& v, IhxStore* store) {
    GraphVector out;
    for (const auto& [mono, coeff] : v.terms()) {
        OrientedGraph og = monomial_realize(mono);
        auto legs = find_legs(og, true);
        for (size_t i = 0; i < legs.size(); ++i)
            for (size_t j = i + 1; j < legs.size(); ++j) {
                if (legs[i].pos == legs[j].pos) continue;  // two views of one bare edge
                glue_cas_term(out, og, legs[i], legs[j], coeff);
            }
    }
    return reduce_maybe(std::move(out), store);
}

GraphVector dual_delta_s(const GraphVector& v, IhxStore* store) {
    GraphVector out;
    for (const auto& [mono, coeff] : v.terms()) {
        OrientedGraph og = monomial_realize(mono);
        auto legs = find_legs(og, false);
        for (size_t i = 0; i < legs.size(); ++i)
            for (size_t j = i + 1; j < legs.size(); ++j) {
                if (legs[i].pos == legs[j].pos) continue;  // two views of one bare edge
                glue_s_term(out, og, legs[i], legs[j], coeff);
            }
    }
    return reduce_maybe(std::move(out), store);
}

GraphVector dual_delta(const GraphVector& v, IhxStore* store) {
    GraphVector out = dual_delta_cas(v, nullptr);
    out += dual_delta_s(v, nullptr);
    return reduce_maybe(std::move(out), store);
}

namespace {

GraphVector bracket_impl(const GraphVector& a, const GraphVector& b, bool special,
                         IhxStore* store) {
    GraphVector out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            // realize a ⊔ b with concatenated orders
            Monomial join;
            join.parts = ma.parts;
            for (const auto& p : mb.parts) join.parts.push_back(p);
            OrientedGraph og = monomial_realize(join);
            // legs of the a-side occupy the first edge positions
            int a_edges = ma.total_edges();
            auto legs = find_legs(og, special);
            for (const auto& ea : legs) {
                if (ea.pos >= a_edges) continue;
                for (const auto& eb : legs) {
                    if (eb.pos < a_edges) continue;
                    if (special)
                        glue_cas_term(out, og, ea, eb, ca * cb);
                    else
                        glue_s_term(out, og, ea, eb, ca * cb);
                }
            }
        }
    }
    return reduce_maybe(std::move(out), store);
}

} // namespace

GraphVector dual_bracket_cas(const GraphVector& a, const GraphVector& b, IhxStore* store) {
    return bracket_impl(a, b, true, store);
}

GraphVector dual_bracket_s(const GraphVector& a, const GraphVector& b, IhxStore* store) {
    return bracket_impl(a, b, false, store);
}

GraphVector dual_bracket(const GraphVector& a, const GraphVector& b, IhxStore* store) {
    GraphVector out = dual_bracket_cas(a, b, nullptr);
    out += dual_bracket_s(a, b, nullptr);
    return reduce_maybe(std::move(out), store);
}

std::vector<GraphVector> IhxStore::sector_relators(const std::vector<Label>& decorations,
                                                   int loops, int edges) {
    std::vector<GraphVector> out;
    const int n_ext = static_cast<int>(decorations.size());
    const int e_parent = edges - 1;
    // parent skeleton: t trivalent internal vertices plus one 4-valent
    const int num = 2 * e_parent - 4 - n_ext;
    if (num < 0 || num % 3) return out;
    const int t = num / 3;
    // loops of parent: e_parent - (t + 1 + n_ext) + 1 must equal `loops`
    if (e_parent - (t + 1 + n_ext) + 1 != loops) return out;

    std::vector<int> profile(t, 3);
    profile.push_back(4);
    auto parents = enumerate_connected_profile(profile, decorations, true, false);

    for (auto& parent : parents) {
        // locate the 4-valent vertex in the canonical representative
        OrientedGraph og;
        og.graph = parent->graph;
        og.edge_order.resize(parent->n_edges());
        for (int i = 0; i < parent->n_edges(); ++i) og.edge_order[i] = i;
        int v4 = -1;
        for (int v = 0; v < og.graph.n_vertices(); ++v)
            if (og.graph.vertices[v].internal && og.graph.vertices[v].half_edges.size() == 4)
                v4 = v;
        if (v4 < 0) continue;
        auto hs = og.graph.vertices[v4].half_edges;  // h1<h2<h3<h4
        GraphVector relator;
        const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (auto& pr : pairings) {
            EditGraph eg = EditGraph::from(og);
            int v1 = eg.new_vertex(true);
            int v2 = eg.new_vertex(true);
            eg.vertex_of[hs[pr[0]]] = v1;
            eg.vertex_of[hs[pr[1]]] = v1;
            eg.vertex_of[hs[pr[2]]] = v2;
            eg.vertex_of[hs[pr[3]]] = v2;
            eg.vertices[v4].alive = false;
            int x1 = eg.new_half(v1);
            int x2 = eg.new_half(v2);
            eg.pair_up(x1, x2);
            eg.order.insert(eg.order.begin(), EditGraph::key(x1, x2));
            accumulate_normalized(relator, eg.compact(), 1);
        }
        if (!relator.is_zero()) out.push_back(std::move(relator));
    }
    return out;
}

const IhxStore::Echelon& IhxStore::context(const SectorKey& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Echelon rows;
    auto relators = sector_relators(key.decorations, key.loops, key.edges);
    auto reduce_against = [&](GraphVector v) {
        for (;;) {
            const Monomial* hit = nullptr;
            const GraphVector* row = nullptr;
            for (const auto& [m, c] : v.terms()) {
                auto r = rows.find(m);
                if (r != rows.end()) {
                    hit = &r->first;
                    row = &r->second;
                    break;
                }
            }
            if (!hit) return v;
            Rational c = v.terms().at(*hit);
            GraphVector scaled = *row;
            scaled *= c;
            v -= scaled;
        }
    };
    for (auto& r : relators) {
        GraphVector red = reduce_against(r);
        if (red.is_zero()) continue;
        // normalize on the smallest monomial
        const auto& [lead, c] = *red.terms().begin();
        GraphVector unit = red;
        unit *= Rational(1) / c;
        Monomial pivot = lead;
        // keep existing rows reduced against the new pivot
        for (auto& [m, row] : rows) {
            auto f = row.terms().find(pivot);
            if (f != row.terms().end()) {
                GraphVector scaled = unit;
                scaled *= f->second;
                row -= scaled;
            }
        }
        rows.emplace(pivot, std::move(unit));
    }
    auto [pos, ok] = cache_.emplace(key, std::move(rows));
    return pos->second;
}

GraphVector IhxStore::reduce(const GraphVector& v) {
    // group terms by sector
    GraphVector out;
    std::map<SectorKey, GraphVector> sectors;
    for (const auto& [m, c] : v.terms()) {
        if (m.parts.size() != 1)
            throw GraphError("ihx_reduce: vector not supported on connected graphs");
        const auto& g = m.parts[0];
        if (g->stats.defect != 0)
            throw GraphError("ihx_reduce: vector outside the uni-trivalent basis");
        SectorKey key{g->decorations, g->stats.loops, g->n_edges()};
        sectors[key].add(m, c);
    }
    for (auto& [key, vec] : sectors) {
        const Echelon& rows = context(key);
        GraphVector cur = vec;
        for (;;) {
            const Monomial* hit = nullptr;
            for (const auto& [m, c] : cur.terms())
                if (rows.count(m)) {
                    hit = &m;
                    break;
                }
            if (!hit) break;
            Rational c = cur.terms().at(*hit);
            GraphVector scaled = rows.at(*hit);
            scaled *= c;
            cur -= scaled;
        }
        out += cur;
    }
    return out;
}

IhxClass ihx_reduce(const GraphVector& v, IhxStore& store) { return {store.reduce(v)}; }

} // namespace hodgecorr
