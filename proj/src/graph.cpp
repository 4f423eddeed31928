#include "hodgecorr/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hodgecorr {

int HalfEdgeGraph::n_internal() const {
    int c = 0;
    for (const auto& v : vertices) c += v.internal ? 1 : 0;
    return c;
}

int HalfEdgeGraph::n_external() const { return n_vertices() - n_internal(); }

std::vector<std::pair<int, int>> HalfEdgeGraph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n_edges());
    for (int h = 0; h < n_half(); ++h)
        if (h < mate[h]) edges.emplace_back(h, mate[h]);
    return edges;
}

std::pair<int, int> HalfEdgeGraph::edge_ends(int e) const {
    auto edges = edge_list();
    return {vertex_of[edges[e].first], vertex_of[edges[e].second]};
}

bool HalfEdgeGraph::edge_is_internal(int e) const {
    auto [u, v] = edge_ends(e);
    return vertices[u].internal && vertices[v].internal;
}

bool HalfEdgeGraph::edge_is_s_external(int e) const {
    auto [u, v] = edge_ends(e);
    if (!vertices[u].internal && vertices[u].label.is_s()) return true;
    if (!vertices[v].internal && vertices[v].label.is_s()) return true;
    return false;
}

void HalfEdgeGraph::validate(bool require_trivalent) const {
    const int h = n_half();
    if (static_cast<int>(vertex_of.size()) != h)
        throw GraphError("vertex_of size mismatch");
    std::vector<int> seen(h, 0);
    for (int i = 0; i < h; ++i) {
        int m = mate[i];
        if (m < 0 || m >= h)
            throw GraphError("matching out of range at half-edge " + std::to_string(i));
        if (m == i)
            throw GraphError("matching fixed point at half-edge " + std::to_string(i));
        if (mate[m] != i)
            throw GraphError("matching not involutive at half-edge " + std::to_string(i));
    }
    for (int v = 0; v < n_vertices(); ++v) {
        const auto& blk = vertices[v];
        if (blk.half_edges.empty())
            throw GraphError("empty vertex block " + std::to_string(v));
        for (int he : blk.half_edges) {
            if (he < 0 || he >= h)
                throw GraphError("half-edge " + std::to_string(he) + " out of range in block " +
                                 std::to_string(v));
            if (seen[he]++)
                throw GraphError("half-edge " + std::to_string(he) + " in two blocks");
            if (vertex_of[he] != v)
                throw GraphError("vertex_of inconsistent at half-edge " + std::to_string(he));
        }
        if (!blk.internal && blk.half_edges.size() != 1)
            throw GraphError("external vertex " + std::to_string(v) + " not univalent");
        if (blk.internal && blk.half_edges.size() < 3)
            throw GraphError("internal vertex " + std::to_string(v) + " has valency < 3");
        if (require_trivalent && blk.internal && blk.half_edges.size() != 3)
            throw GraphError("non-trivalent vertex " + std::to_string(v));
    }
    for (int i = 0; i < h; ++i)
        if (!seen[i]) throw GraphError("half-edge " + std::to_string(i) + " not covered by blocks");
}

std::vector<int> HalfEdgeGraph::component_of_vertex() const {
    std::vector<int> comp(n_vertices(), -1);
    int nc = 0;
    for (int s = 0; s < n_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int he : vertices[v].half_edges) {
                int w = vertex_of[mate[he]];
                if (comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
        }
        ++nc;
    }
    return comp;
}

int HalfEdgeGraph::n_components() const {
    auto comp = component_of_vertex();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

bool HalfEdgeGraph::connected() const { return n_components() <= 1; }

int HalfEdgeGraph::loop_count() const {
    return n_edges() - n_vertices() + n_components();
}

bool HalfEdgeGraph::has_self_loop() const {
    for (int h = 0; h < n_half(); ++h)
        if (h < mate[h] && vertex_of[h] == vertex_of[mate[h]]) return true;
    return false;
}

bool HalfEdgeGraph::has_multi_edge() const {
    std::set<std::pair<int, int>> seen;
    for (int h = 0; h < n_half(); ++h) {
        if (h > mate[h]) continue;
        int u = vertex_of[h], v = vertex_of[mate[h]];
        if (u > v) std::swap(u, v);
        if (!seen.emplace(u, v).second) return true;
    }
    return false;
}

std::vector<Label> HalfEdgeGraph::decoration_multiset() const {
    std::vector<Label> out;
    for (const auto& v : vertices)
        if (!v.internal) out.push_back(v.label);
    std::sort(out.begin(), out.end());
    return out;
}

GraphStats graph_stats(const HalfEdgeGraph& g) {
    if (!g.connected())
        throw GraphError("graph_stats requires a connected graph; request per-component stats");
    GraphStats s;
    const int e = g.n_edges();
    s.defect = 2 * e - 3 * g.n_internal() - g.n_external();
    s.order = e - g.n_vertices();
    s.loops = s.order + 1;
    s.degree = e - 2 * g.n_internal();
    return s;
}

bool is_zero_pattern(const HalfEdgeGraph& g) {
    if (g.has_self_loop()) return true;       // (A)
    if (g.has_multi_edge()) return true;      // (D)
    // (B): the two-vertex graph with equal labels (per component)
    auto comp = g.component_of_vertex();
    int nc = g.n_components();
    std::vector<std::vector<int>> verts(nc);
    for (int v = 0; v < g.n_vertices(); ++v) verts[comp[v]].push_back(v);
    for (const auto& vs : verts) {
        if (vs.size() == 2 && !g.vertices[vs[0]].internal && !g.vertices[vs[1]].internal &&
            g.vertices[vs[0]].label == g.vertices[vs[1]].label)
            return true;
    }
    // (C): internal vertex adjacent to two equal-labeled external vertices
    for (int v = 0; v < g.n_vertices(); ++v) {
        if (!g.vertices[v].internal) continue;
        std::vector<Label> nbr;
        for (int he : g.vertices[v].half_edges) {
            int w = g.vertex_of[g.mate[he]];
            if (!g.vertices[w].internal) nbr.push_back(g.vertices[w].label);
        }
        std::sort(nbr.begin(), nbr.end());
        for (size_t i = 1; i < nbr.size(); ++i)
            if (nbr[i] == nbr[i - 1]) return true;
    }
    return false;
}

void OrientedGraph::check() const {
    graph.validate();
    std::vector<int> sorted = edge_order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
        if (sorted[i] != i) throw GraphError("edge_order is not a permutation of edge ids");
    if (static_cast<int>(edge_order.size()) != graph.n_edges())
        throw GraphError("edge_order size mismatch");
}

HalfEdgeGraph validate_graph(const RawGraphData& raw) {
    HalfEdgeGraph g;
    g.mate.assign(raw.half_edges, -1);
    g.vertex_of.assign(raw.half_edges, -1);
    for (auto [a, b] : raw.matching) {
        if (a < 0 || a >= raw.half_edges || b < 0 || b >= raw.half_edges)
            throw GraphError("matching entry out of range");
        if (a == b) throw GraphError("matching fixed point at half-edge " + std::to_string(a));
        if (g.mate[a] != -1 || g.mate[b] != -1)
            throw GraphError("half-edge matched twice");
        g.mate[a] = b;
        g.mate[b] = a;
    }
    for (int h = 0; h < raw.half_edges; ++h)
        if (g.mate[h] < 0) throw GraphError("half-edge " + std::to_string(h) + " unmatched");
    for (const auto& blk : raw.internal_blocks) {
        HalfEdgeGraph::Vertex v;
        v.internal = true;
        v.half_edges = blk;
        std::sort(v.half_edges.begin(), v.half_edges.end());
        g.vertices.push_back(std::move(v));
    }
    for (const auto& [he, lab] : raw.external_blocks) {
        HalfEdgeGraph::Vertex v;
        v.internal = false;
        v.label = lab;
        v.half_edges = {he};
        g.vertices.push_back(std::move(v));
    }
    for (int v = 0; v < g.n_vertices(); ++v)
        for (int he : g.vertices[v].half_edges) {
            if (he < 0 || he >= raw.half_edges)
                throw GraphError("half-edge " + std::to_string(he) + " out of range");
            if (g.vertex_of[he] != -1)
                throw GraphError("half-edge " + std::to_string(he) + " in two blocks");
            g.vertex_of[he] = v;
        }
    g.validate(true);
    return g;
}

OrientedGraph validate_oriented(const RawGraphData& raw) {
    OrientedGraph og;
    og.graph = validate_graph(raw);
    if (raw.edge_order.empty()) {
        og.edge_order.resize(og.graph.n_edges());
        std::iota(og.edge_order.begin(), og.edge_order.end(), 0);
    } else {
        // raw edge_order indexes raw.matching; translate to listing order
        auto edges = og.graph.edge_list();
        std::map<std::pair<int, int>, int> idx;
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) idx[edges[e]] = e;
        for (int k : raw.edge_order) {
            if (k < 0 || k >= static_cast<int>(raw.matching.size()))
                throw GraphError("edge_order index out of range");
            auto [a, b] = raw.matching[k];
            if (a > b) std::swap(a, b);
            og.edge_order.push_back(idx.at({a, b}));
        }
    }
    og.check();
    return og;
}

std::string HalfEdgeGraph::dot() const {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 0; v < n_vertices(); ++v) {
        if (vertices[v].internal)
            os << "  v" << v << " [shape=point];\n";
        else
            os << "  v" << v << " [label=\"" << vertices[v].label.str() << "\"];\n";
    }
    for (auto [a, b] : edge_list())
        os << "  v" << vertex_of[a] << " -- v" << vertex_of[b] << ";\n";
    os << "}\n";
    return os.str();
}

std::string graph_to_json(const OrientedGraph& g) {
    nlohmann::json j;
    j["half_edges"] = g.graph.n_half();
    auto edges = g.graph.edge_list();
    nlohmann::json m = nlohmann::json::array();
    for (auto [a, b] : edges) m.push_back({a, b});
    j["matching"] = m;
    nlohmann::json internal = nlohmann::json::array();
    nlohmann::json external = nlohmann::json::array();
    for (const auto& v : g.graph.vertices) {
        if (v.internal) {
            internal.push_back(v.half_edges);
        } else {
            const char* kind = v.label.kind == LabelKind::S     ? "s"
                               : v.label.kind == LabelKind::Hol ? "hol"
                                                                : "antihol";
            external.push_back({{"h", v.half_edges[0]},
                                {"label", {{"kind", kind}, {"index", v.label.index}}}});
        }
    }
    j["internal"] = internal;
    j["external"] = external;
    j["edge_order"] = g.edge_order;
    return j.dump();
}

OrientedGraph graph_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    RawGraphData raw;
    raw.half_edges = j.at("half_edges").get<int>();
    for (const auto& p : j.at("matching"))
        raw.matching.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    for (const auto& blk : j.at("internal"))
        raw.internal_blocks.push_back(blk.get<std::vector<int>>());
    for (const auto& x : j.at("external")) {
        std::string kind = x.at("label").at("kind").get<std::string>();
        Label lab;
        lab.index = x.at("label").at("index").get<int>();
        lab.kind = kind == "s" ? LabelKind::S : kind == "hol" ? LabelKind::Hol : LabelKind::AHol;
        raw.external_blocks.emplace_back(x.at("h").get<int>(), lab);
    }
    if (j.contains("edge_order"))
        raw.edge_order = j.at("edge_order").get<std::vector<int>>();
    return validate_oriented(raw);
}

int permutation_sign(const std::vector<int>& seq) {
    // parity by counting inversions; n is small throughout
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

} // namespace hodgecorr
