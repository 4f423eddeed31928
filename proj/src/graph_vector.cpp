#include "hodgecorr/graph_vector.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hodgecorr {

std::string Monomial::str() const {
    if (parts.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << " ^ ";
        os << "G[";
        const auto& g = parts[i]->graph;
        os << g.n_internal() << "v";
        for (const auto& v : g.vertices)
            if (!v.internal) os << "," << v.label.str();
        os << ";e" << g.n_edges() << ";l" << parts[i]->stats.loops << ";#" << std::hex
           << (parts[i]->hash & 0xffff) << std::dec << "]";
    }
    return os.str();
}

int monomial_compare(const Monomial& a, const Monomial& b) {
    if (a.parts.size() != b.parts.size())
        return a.parts.size() < b.parts.size() ? -1 : 1;
    for (size_t i = 0; i < a.parts.size(); ++i) {
        int c = canon_compare(*a.parts[i], *b.parts[i]);
        if (c) return c;
    }
    return 0;
}

GraphVector GraphVector::unit() {
    GraphVector v;
    v.terms_[Monomial{}] = 1;
    return v;
}

GraphVector GraphVector::single(const CanonResult& c, const Rational& coeff) {
    GraphVector v;
    if (c.graph->odd_auto || is_zero_pattern(c.graph->graph)) return v;
    Monomial m;
    m.parts = {c.graph};
    v.add(m, coeff * c.sign);
    return v;
}

void GraphVector::add(const Monomial& m, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

GraphVector& GraphVector::operator+=(const GraphVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

GraphVector& GraphVector::operator-=(const GraphVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

GraphVector& GraphVector::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, q] : terms_) q *= c;
    return *this;
}

std::optional<int> GraphVector::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
        int d = m.degree();
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

std::string GraphVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << m.str();
    }
    return os.str();
}

std::string GraphVector::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
        nlohmann::json t;
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& p : m.parts) {
            OrientedGraph og;
            og.graph = p->graph;
            og.edge_order.resize(p->n_edges());
            std::iota(og.edge_order.begin(), og.edge_order.end(), 0);
            parts.push_back(nlohmann::json::parse(graph_to_json(og)));
        }
        t["monomial"] = parts;
        t["coeff"] = to_fraction_string(c);
        arr.push_back(t);
    }
    return arr.dump();
}

namespace {

// sign of the stable partition of `order` positions into component blocks,
// components ranked by first appearance in the order
int unshuffle_sign(const std::vector<int>& comp_of_pos) {
    // parity of permutation sorting positions by (component rank, position)
    std::vector<int> first_seen;
    std::vector<int> rank(comp_of_pos.size(), -1);
    std::vector<int> comp_rank;
    {
        std::map<int, int> r;
        for (int c : comp_of_pos)
            if (!r.count(c)) {
                int k = static_cast<int>(r.size());
                r[c] = k;
            }
        comp_rank.resize(comp_of_pos.size());
        for (size_t i = 0; i < comp_of_pos.size(); ++i) comp_rank[i] = r[comp_of_pos[i]];
    }
    int inv = 0;
    for (size_t i = 0; i < comp_of_pos.size(); ++i)
        for (size_t j = i + 1; j < comp_of_pos.size(); ++j)
            if (comp_rank[i] > comp_rank[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

} // namespace

void accumulate_normalized(GraphVector& out, const OrientedGraph& og, const Rational& coeff) {
    if (coeff == 0) return;
    const HalfEdgeGraph& g = og.graph;
    if (is_zero_pattern(g)) return;

    auto comp_v = g.component_of_vertex();
    int nc = g.n_components();
    auto edges = g.edge_list();

    if (nc == 1) {
        auto res = canonicalize(og);
        if (res.graph->odd_auto) return;
        Monomial m;
        m.parts = {res.graph};
        out.add(m, coeff * res.sign);
        return;
    }

    // component of each edge-order position
    std::vector<int> comp_of_pos(og.edge_order.size());
    for (size_t i = 0; i < og.edge_order.size(); ++i)
        comp_of_pos[i] = comp_v[g.vertex_of[edges[og.edge_order[i]].first]];
    int sign = unshuffle_sign(comp_of_pos);

    // extract each component as its own oriented graph, edges in the induced
    // relative order
    std::vector<int> comp_rank_of(nc, -1);
    std::vector<int> rank_to_comp;
    for (int c : comp_of_pos)
        if (comp_rank_of[c] < 0) {
            comp_rank_of[c] = static_cast<int>(rank_to_comp.size());
            rank_to_comp.push_back(c);
        }
    struct Piece {
        CanonPtr canon;
        int sign;
        int n_edges;
    };
    std::vector<Piece> pieces;
    for (int rk = 0; rk < static_cast<int>(rank_to_comp.size()); ++rk) {
        int c = rank_to_comp[rk];
        // half-edge renumber for this component
        std::vector<int> new_id(g.n_half(), -1);
        OrientedGraph sub;
        int next = 0;
        for (int h = 0; h < g.n_half(); ++h)
            if (comp_v[g.vertex_of[h]] == c) new_id[h] = next++;
        sub.graph.mate.assign(next, -1);
        sub.graph.vertex_of.assign(next, -1);
        std::vector<int> vmap(g.n_vertices(), -1);
        for (int v = 0; v < g.n_vertices(); ++v) {
            if (comp_v[v] != c) continue;
            vmap[v] = static_cast<int>(sub.graph.vertices.size());
            HalfEdgeGraph::Vertex nv;
            nv.internal = g.vertices[v].internal;
            nv.label = g.vertices[v].label;
            for (int h : g.vertices[v].half_edges) nv.half_edges.push_back(new_id[h]);
            std::sort(nv.half_edges.begin(), nv.half_edges.end());
            sub.graph.vertices.push_back(std::move(nv));
        }
        for (int h = 0; h < g.n_half(); ++h) {
            if (new_id[h] < 0) continue;
            sub.graph.mate[new_id[h]] = new_id[g.mate[h]];
            sub.graph.vertex_of[new_id[h]] = vmap[g.vertex_of[h]];
        }
        auto sub_edges = sub.graph.edge_list();
        std::map<std::pair<int, int>, int> idx;
        for (int e = 0; e < static_cast<int>(sub_edges.size()); ++e) idx[sub_edges[e]] = e;
        for (size_t i = 0; i < og.edge_order.size(); ++i) {
            if (comp_of_pos[i] != c) continue;
            auto [a, b] = edges[og.edge_order[i]];
            int x = new_id[a], y = new_id[b];
            if (x > y) std::swap(x, y);
            sub.edge_order.push_back(idx.at({x, y}));
        }
        auto res = canonicalize(sub);
        if (res.graph->odd_auto) return;
        pieces.push_back({res.graph, res.sign, res.graph->n_edges()});
        sign *= res.sign;
    }

    // sort pieces by certificate, tracking Koszul signs (blocks of edge size)
    for (size_t i = 1; i < pieces.size(); ++i)
        for (size_t j = i; j > 0 && canon_compare(*pieces[j].canon, *pieces[j - 1].canon) < 0;
             --j) {
            if ((pieces[j].n_edges & 1) && (pieces[j - 1].n_edges & 1)) sign = -sign;
            std::swap(pieces[j], pieces[j - 1]);
        }
    // a repeated factor of odd edge count squares to zero
    for (size_t i = 1; i < pieces.size(); ++i)
        if ((pieces[i].n_edges & 1) &&
            canon_compare(*pieces[i].canon, *pieces[i - 1].canon) == 0)
            return;

    Monomial m;
    for (auto& p : pieces) m.parts.push_back(p.canon);
    out.add(m, coeff * sign);
}

OrientedGraph monomial_realize(const Monomial& m) {
    OrientedGraph out;
    int hoff = 0, eoff = 0;
    for (const auto& p : m.parts) {
        const HalfEdgeGraph& g = p->graph;
        int voff = out.graph.n_vertices();
        for (int h = 0; h < g.n_half(); ++h) {
            out.graph.mate.push_back(g.mate[h] + hoff);
            out.graph.vertex_of.push_back(g.vertex_of[h] + voff);
        }
        for (const auto& v : g.vertices) {
            HalfEdgeGraph::Vertex nv = v;
            for (auto& h : nv.half_edges) h += hoff;
            out.graph.vertices.push_back(std::move(nv));
        }
        for (int e = 0; e < g.n_edges(); ++e) out.edge_order.push_back(e + eoff);
        hoff += g.n_half();
        eoff += g.n_edges();
    }
    return out;
}

GraphVector wedge(const GraphVector& a, const GraphVector& b) {
    GraphVector out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            // merge the two sorted part lists with Koszul signs
            std::vector<std::pair<CanonPtr, int>> merged;
            merged.reserve(ma.parts.size() + mb.parts.size());
            for (const auto& p : ma.parts) merged.emplace_back(p, p->n_edges() & 1);
            int sign = 1;
            for (const auto& p : mb.parts) merged.emplace_back(p, p->n_edges() & 1);
            // insertion sort counting odd-odd transpositions
            for (size_t i = 1; i < merged.size(); ++i)
                for (size_t j = i;
                     j > 0 && canon_compare(*merged[j].first, *merged[j - 1].first) < 0; --j) {
                    if (merged[j].second && merged[j - 1].second) sign = -sign;
                    std::swap(merged[j], merged[j - 1]);
                }
            bool zero = false;
            for (size_t i = 1; i < merged.size(); ++i)
                if (merged[i].second &&
                    canon_compare(*merged[i].first, *merged[i - 1].first) == 0)
                    zero = true;
            if (zero) continue;
            Monomial m;
            for (auto& [p, parity] : merged) m.parts.push_back(p);
            out.add(m, ca * cb * sign);
        }
    }
    return out;
}

} // namespace hodgecorr
