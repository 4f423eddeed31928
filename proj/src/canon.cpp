#include "hodgecorr/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hodgecorr {

namespace {

struct VertexView {
    int n = 0;
    std::vector<std::vector<int>> adj;  // multiplicity matrix, self-loops on diagonal
    std::vector<int64_t> init_color;    // isomorphism-invariant initial color
};

VertexView make_view(const HalfEdgeGraph& g) {
    VertexView vw;
    vw.n = g.n_vertices();
    vw.adj.assign(vw.n, std::vector<int>(vw.n, 0));
    for (int h = 0; h < g.n_half(); ++h) {
        if (h > g.mate[h]) continue;
        int u = g.vertex_of[h], v = g.vertex_of[g.mate[h]];
        vw.adj[u][v]++;
        if (u != v) vw.adj[v][u]++;
    }
    vw.init_color.resize(vw.n);
    for (int v = 0; v < vw.n; ++v) {
        const auto& blk = g.vertices[v];
        if (blk.internal)
            vw.init_color[v] = static_cast<int64_t>(blk.half_edges.size());
        else
            vw.init_color[v] = 1000 + 10000LL * static_cast<int>(blk.label.kind) +
                               100000000LL * blk.label.index;
    }
    return vw;
}

// iterative color refinement on (color, multiset of neighbor colors)
std::vector<int> refine_colors(const VertexView& vw) {
    std::vector<int> color(vw.n);
    {
        std::vector<int64_t> sorted = vw.init_color;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < vw.n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), vw.init_color[v]) - sorted.begin());
    }
    for (;;) {
        std::vector<std::vector<int64_t>> sig(vw.n);
        for (int v = 0; v < vw.n; ++v) {
            auto& s = sig[v];
            s.push_back(color[v]);
            s.push_back(vw.adj[v][v]);
            std::vector<std::pair<int, int>> nb;
            for (int w = 0; w < vw.n; ++w)
                if (w != v && vw.adj[v][w]) nb.emplace_back(color[w], vw.adj[v][w]);
            std::sort(nb.begin(), nb.end());
            for (auto [c, m] : nb) {
                s.push_back(c);
                s.push_back(m);
            }
        }
        std::vector<std::vector<int64_t>> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> next(vw.n);
        for (int v = 0; v < vw.n; ++v)
            next[v] = static_cast<int>(
                std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        int old_classes = 1 + *std::max_element(color.begin(), color.end());
        int new_classes = static_cast<int>(uniq.size());
        // refinement always respects the previous partition, so re-sorting by
        // (old color, signature id) keeps class order stable
        std::vector<std::pair<int, int>> key(vw.n);
        for (int v = 0; v < vw.n; ++v) key[v] = {color[v], next[v]};
        std::vector<std::pair<int, int>> ks = key;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (int v = 0; v < vw.n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(ks.begin(), ks.end(), key[v]) - ks.begin());
        if (new_classes == old_classes) break;
    }
    return color;
}

struct CanonSearch {
    const VertexView& vw;
    std::vector<int> color;
    std::vector<int> depth_color;  // required color per position
    std::vector<std::vector<int>> by_color;

    std::vector<int64_t> best_cert;  // concatenated rows
    bool have_best = false;
    std::vector<int> best_perm;  // position -> vertex
    std::vector<std::vector<int>> equal_perms;

    std::vector<int> cur;  // position -> vertex
    std::vector<int64_t> cur_cert;
    std::vector<char> used;

    explicit CanonSearch(const VertexView& v) : vw(v) {
        color = refine_colors(vw);
        int nc = 1 + *std::max_element(color.begin(), color.end());
        by_color.assign(nc, {});
        for (int i = 0; i < vw.n; ++i) by_color[color[i]].push_back(i);
        for (int c = 0; c < nc; ++c)
            for (size_t k = 0; k < by_color[c].size(); ++k) depth_color.push_back(c);
        used.assign(vw.n, 0);
    }

    void run() {
        cur.clear();
        cur_cert.clear();
        dfs(0);
    }

    void dfs(int depth) {
        if (depth == vw.n) {
            if (!have_best) {
                have_best = true;
                best_cert = cur_cert;
                best_perm = cur;
                equal_perms = {cur};
            } else {
                equal_perms.push_back(cur);
            }
            return;
        }
        int c = depth_color[depth];
        size_t row_start = cur_cert.size();
        for (int v : by_color[c]) {
            if (used[v]) continue;
            cur_cert.resize(row_start);
            cur_cert.push_back(vw.init_color[v]);
            cur_cert.push_back(vw.adj[v][v]);
            for (int i = 0; i < depth; ++i) cur_cert.push_back(vw.adj[v][cur[i]]);
            if (have_best) {
                // lexicographic compare of this row against best
                int cmpr = 0;
                for (size_t i = row_start; i < cur_cert.size(); ++i) {
                    if (cur_cert[i] != best_cert[i]) {
                        cmpr = cur_cert[i] < best_cert[i] ? -1 : 1;
                        break;
                    }
                }
                if (cmpr > 0) continue;
                if (cmpr < 0) {
                    // strictly better prefix: drop previous best entirely
                    have_best = false;
                    equal_perms.clear();
                }
            }
            used[v] = 1;
            cur.push_back(v);
            dfs(depth + 1);
            cur.pop_back();
            used[v] = 0;
            if (have_best) {
                // restore invariant: cur_cert prefix must match best for pruning
                // (it does by construction)
            }
        }
        cur_cert.resize(row_start);
    }
};

int edge_perm_parity(const std::vector<std::pair<int, int>>& vertex_edges,
                     const std::vector<int>& phi) {
    // simple graphs only: map each edge through phi and locate its index
    std::map<std::pair<int, int>, int> idx;
    for (int e = 0; e < static_cast<int>(vertex_edges.size()); ++e) idx[vertex_edges[e]] = e;
    std::vector<int> perm;
    perm.reserve(vertex_edges.size());
    for (const auto& [u, v] : vertex_edges) {
        int a = phi[u], b = phi[v];
        if (a > b) std::swap(a, b);
        perm.push_back(idx.at({a, b}));
    }
    return permutation_sign(perm);
}

} // namespace

int canon_compare(const CanonicalGraph& a, const CanonicalGraph& b) {
    if (a.certificate < b.certificate) return -1;
    if (b.certificate < a.certificate) return 1;
    return 0;
}

CanonResult canonicalize(const OrientedGraph& og) {
    const HalfEdgeGraph& g = og.graph;
    if (!g.connected()) throw GraphError("canonicalize requires a connected graph");

    VertexView vw = make_view(g);
    CanonSearch search(vw);
    search.run();
    const std::vector<int>& perm = search.best_perm;  // position -> vertex
    std::vector<int> pos(vw.n);                       // vertex -> position
    for (int i = 0; i < vw.n; ++i) pos[perm[i]] = i;

    auto canon = std::make_shared<CanonicalGraph>();

    // vertex-level edges in canonical order: sorted by (min pos, max pos, slot);
    // parallel edges within a bundle keep their input listing order
    auto in_edges = g.edge_list();
    struct EdgeRec {
        int cu, cv, slot, input_id;
    };
    std::vector<EdgeRec> recs;
    std::map<std::pair<int, int>, int> bundle_count;
    for (int e = 0; e < static_cast<int>(in_edges.size()); ++e) {
        int u = g.vertex_of[in_edges[e].first], v = g.vertex_of[in_edges[e].second];
        int cu = pos[u], cv = pos[v];
        if (cu > cv) std::swap(cu, cv);
        int slot = bundle_count[{cu, cv}]++;
        recs.push_back({cu, cv, slot, e});
    }
    std::sort(recs.begin(), recs.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return std::tie(a.cu, a.cv, a.slot) < std::tie(b.cu, b.cv, b.slot);
    });

    // build the canonical half-edge graph: edge k owns half-edges 2k, 2k+1
    HalfEdgeGraph cg;
    const int ne = static_cast<int>(recs.size());
    cg.mate.resize(2 * ne);
    cg.vertex_of.resize(2 * ne);
    cg.vertices.resize(vw.n);
    for (int i = 0; i < vw.n; ++i) {
        const auto& src = g.vertices[perm[i]];
        cg.vertices[i].internal = src.internal;
        cg.vertices[i].label = src.label;
    }
    std::vector<int> edge_map(ne);  // input edge id -> canonical edge id
    for (int k = 0; k < ne; ++k) {
        const auto& r = recs[k];
        cg.mate[2 * k] = 2 * k + 1;
        cg.mate[2 * k + 1] = 2 * k;
        cg.vertex_of[2 * k] = r.cu;
        cg.vertex_of[2 * k + 1] = r.cv;
        cg.vertices[r.cu].half_edges.push_back(2 * k);
        cg.vertices[r.cv].half_edges.push_back(2 * k + 1);
        edge_map[r.input_id] = k;
    }
    for (auto& v : cg.vertices) std::sort(v.half_edges.begin(), v.half_edges.end());

    // certificate: vertex data then canonical edge endpoint pairs
    auto& cert = canon->certificate;
    cert.push_back(vw.n);
    cert.push_back(ne);
    for (int i = 0; i < vw.n; ++i) {
        const auto& v = cg.vertices[i];
        cert.push_back(v.internal ? -1 : static_cast<int>(v.label.kind));
        cert.push_back(v.internal ? static_cast<int>(v.half_edges.size()) : v.label.index);
    }
    for (int k = 0; k < ne; ++k) {
        cert.push_back(cg.vertex_of[2 * k]);
        cert.push_back(cg.vertex_of[2 * k + 1]);
    }
    size_t h = 1469598103934665603ull;
    for (int64_t x : cert) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    canon->hash = h;

    // automorphisms: equal-certificate orderings are exactly Aut-translates
    int64_t aut_v = static_cast<int64_t>(search.equal_perms.size());
    bool odd = false;
    bool multi = g.has_multi_edge() || g.has_self_loop();
    if (multi) {
        // any parallel pair supports an odd edge swap
        std::map<std::pair<int, int>, int> mult;
        for (auto [a, b] : in_edges) {
            int u = g.vertex_of[a], v = g.vertex_of[b];
            if (u > v) std::swap(u, v);
            mult[{u, v}]++;
        }
        for (auto& [k, m] : mult)
            if (m >= 2) odd = true;
    }
    if (!multi) {
        std::vector<std::pair<int, int>> vertex_edges;
        vertex_edges.reserve(in_edges.size());
        for (auto [a, b] : in_edges) {
            int u = g.vertex_of[a], v = g.vertex_of[b];
            if (u > v) std::swap(u, v);
            vertex_edges.emplace_back(u, v);
        }
        for (const auto& p : search.equal_perms) {
            // vertex automorphism phi = p o best^{-1}
            std::vector<int> phi(vw.n);
            for (int i = 0; i < vw.n; ++i) phi[perm[i]] = p[i];
            if (edge_perm_parity(vertex_edges, phi) < 0) {
                odd = true;
                break;
            }
        }
    }
    // half-edge automorphism count: vertex automorphisms times bundle and
    // self-loop symmetries
    int64_t aut_h = aut_v;
    {
        std::map<std::pair<int, int>, int64_t> mult;
        for (auto [a, b] : in_edges) {
            int u = g.vertex_of[a], v = g.vertex_of[b];
            if (u > v) std::swap(u, v);
            mult[{u, v}]++;
        }
        for (auto& [k, m] : mult) {
            for (int64_t i = 2; i <= m; ++i) aut_h *= i;
            if (k.first == k.second)
                for (int64_t i = 0; i < m; ++i) aut_h *= 2;  // per-self-loop flip
        }
    }

    canon->graph = std::move(cg);
    canon->aut_count = aut_h;
    canon->odd_auto = odd;
    canon->stats = graph_stats(canon->graph);
    canon->decorations = canon->graph.decoration_multiset();

    // sign: parity of the input edge order pushed through edge_map
    std::vector<int> seq;
    seq.reserve(og.edge_order.size());
    for (int e : og.edge_order) seq.push_back(edge_map[e]);
    int sign = permutation_sign(seq);

    return {std::move(canon), sign};
}

CanonResult canonicalize(const HalfEdgeGraph& g) {
    OrientedGraph og;
    og.graph = g;
    og.edge_order.resize(g.n_edges());
    std::iota(og.edge_order.begin(), og.edge_order.end(), 0);
    return canonicalize(og);
}

int64_t automorphism_count(const HalfEdgeGraph& g) {
    return canonicalize(g).graph->aut_count;
}

int64_t automorphism_count_bruteforce(const HalfEdgeGraph& g) {
    // backtracking over half-edge images preserving matching, blocks, labels
    const int n = g.n_half();
    std::vector<int> img(n, -1), taken(n, 0);
    // block signature per half-edge for quick compatibility checks
    auto blk_sig = [&](int he) {
        const auto& v = g.vertices[g.vertex_of[he]];
        return std::tuple<int, int, int, size_t>(
            v.internal ? -1 : static_cast<int>(v.label.kind),
            v.internal ? 0 : v.label.index, 0, v.half_edges.size());
    };
    int64_t count = 0;
    // map vertex -> image vertex once first half-edge of the block is mapped
    std::vector<int> vimg(g.n_vertices(), -1), vtaken_count(g.n_vertices(), 0);

    std::function<void(int)> rec = [&](int h) {
        if (h == n) {
            ++count;
            return;
        }
        if (img[h] != -1) {
            rec(h + 1);
            return;
        }
        for (int t = 0; t < n; ++t) {
            if (taken[t]) continue;
            if (blk_sig(h) != blk_sig(t)) continue;
            int vh = g.vertex_of[h], vt = g.vertex_of[t];
            if (vimg[vh] != -1 && vimg[vh] != vt) continue;
            if (vimg[vh] == -1) {
                bool clash = false;
                for (int w = 0; w < g.n_vertices(); ++w)
                    if (vimg[w] == vt) clash = true;
                if (clash) continue;
            }
            // tentatively map h -> t and mate[h] -> mate[t]
            int hm = g.mate[h], tm = g.mate[t];
            if (img[hm] != -1 || taken[tm] || (hm == h)) continue;
            if (hm != h && img[hm] == -1 && blk_sig(hm) != blk_sig(tm)) continue;
            int vhm = g.vertex_of[hm], vtm = g.vertex_of[tm];
            if (vimg[vhm] != -1 && vimg[vhm] != vtm) continue;
            if (vimg[vhm] == -1 && vhm != vh) {
                bool clash = false;
                for (int w = 0; w < g.n_vertices(); ++w)
                    if (vimg[w] == vtm) clash = true;
                if (clash) continue;
            }
            if (vhm == vh && vtm != vt) continue;
            if (vhm != vh && vtm == vt) continue;
            int old_vh = vimg[vh], old_vhm = vimg[vhm];
            img[h] = t;
            img[hm] = tm;
            taken[t] = taken[tm] = 1;
            vimg[vh] = vt;
            vimg[vhm] = vtm;
            rec(h + 1);
            img[h] = img[hm] = -1;
            taken[t] = taken[tm] = 0;
            vimg[vh] = old_vh;
            vimg[vhm] = old_vhm;
        }
    };
    rec(0);
    return count;
}

HalfEdgeGraph relabel_dual(const HalfEdgeGraph& g) {
    HalfEdgeGraph out = g;
    for (auto& v : out.vertices)
        if (!v.internal) v.label = v.label.dual();
    return out;
}

CanonResult canonical_dual(const CanonicalGraph& g) {
    return canonicalize(relabel_dual(g.graph));
}

} // namespace hodgecorr
