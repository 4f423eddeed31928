#include "hodgecorr/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hodgecorr {

namespace {

// Generate matchings on a fixed half-edge skeleton: internal vertex i owns
// slots [off_i, off_i + val_i), external vertex j owns one labeled slot.
// Prunings: slots within a vertex used in increasing order; the partner for
// the lowest free slot is only allowed at the first untouched internal
// vertex of each valency class; no self-loops, no parallel edges.
struct MatchGen {
    std::vector<int> owner;           // slot -> vertex
    std::vector<int> valency;         // per vertex (externals get 1)
    std::vector<Label> ext_label;     // per vertex; internal entries unused
    std::vector<char> internal;       // per vertex
    int n_slots = 0;

    std::vector<int> mate;
    std::vector<char> vertex_touched;
    std::vector<std::vector<char>> vpair;  // adjacency guard

    std::function<void(const std::vector<int>&)> sink;

    void run() {
        mate.assign(n_slots, -1);
        vertex_touched.assign(valency.size(), 0);
        vpair.assign(valency.size(), std::vector<char>(valency.size(), 0));
        rec();
    }

    void rec() {
        int h = -1;
        for (int i = 0; i < n_slots; ++i)
            if (mate[i] < 0) {
                h = i;
                break;
            }
        if (h < 0) {
            sink(mate);
            return;
        }
        int vh = owner[h];
        vertex_touched[vh] = 1;
        // candidate partners: lowest free slot of each admissible vertex;
        // untouched vertices of one symmetry class (same valency, or same
        // external label) are interchangeable, so only the first is tried
        bool fresh_internal_seen_for_valency[64] = {};
        std::vector<Label> fresh_ext_seen;
        for (size_t v = 0; v < valency.size(); ++v) {
            if (static_cast<int>(v) == vh) continue;  // no self-loops
            if (vpair[vh][v]) continue;               // no parallel edges
            int t = -1;
            for (int i = 0; i < n_slots; ++i)
                if (owner[i] == static_cast<int>(v) && mate[i] < 0) {
                    t = i;
                    break;
                }
            if (t < 0) continue;
            if (internal[v] && !vertex_touched[v]) {
                int cls = valency[v];
                if (fresh_internal_seen_for_valency[cls]) continue;
                fresh_internal_seen_for_valency[cls] = 1;
            }
            if (!internal[v] && !vertex_touched[v]) {
                bool seen = false;
                for (const auto& lab : fresh_ext_seen)
                    if (lab == ext_label[v]) seen = true;
                if (seen) continue;
                fresh_ext_seen.push_back(ext_label[v]);
            }
            mate[h] = t;
            mate[t] = h;
            vpair[vh][v] = vpair[v][vh] = 1;
            char was = vertex_touched[v];
            vertex_touched[v] = 1;
            rec();
            vertex_touched[v] = was;
            vpair[vh][v] = vpair[v][vh] = 0;
            mate[h] = mate[t] = -1;
        }
        vertex_touched[vh] = 0;
    }
};

HalfEdgeGraph build_graph(const MatchGen& gen, const std::vector<int>& mate) {
    HalfEdgeGraph g;
    g.mate = mate;
    g.vertex_of = gen.owner;
    g.vertices.resize(gen.valency.size());
    for (size_t v = 0; v < gen.valency.size(); ++v) {
        g.vertices[v].internal = gen.internal[v];
        g.vertices[v].label = gen.ext_label[v];
    }
    for (int h = 0; h < gen.n_slots; ++h) g.vertices[gen.owner[h]].half_edges.push_back(h);
    return g;
}

// generate one valency profile (multiset of internal valencies) + decorations
void enumerate_profile(const std::vector<int>& internal_valencies,
                       const std::vector<Label>& decorations, bool exclude_zero_pattern,
                       bool exclude_odd_auto,
                       std::map<std::vector<int64_t>, CanonPtr>& found) {
    MatchGen gen;
    for (int val : internal_valencies) {
        int v = static_cast<int>(gen.valency.size());
        gen.valency.push_back(val);
        gen.internal.push_back(1);
        gen.ext_label.push_back({});
        for (int k = 0; k < val; ++k) gen.owner.push_back(v);
    }
    for (const Label& lab : decorations) {
        int v = static_cast<int>(gen.valency.size());
        gen.valency.push_back(1);
        gen.internal.push_back(0);
        gen.ext_label.push_back(lab);
        gen.owner.push_back(v);
    }
    gen.n_slots = static_cast<int>(gen.owner.size());
    if (gen.n_slots % 2) return;
    gen.sink = [&](const std::vector<int>& mate) {
        HalfEdgeGraph g = build_graph(gen, mate);
        if (!g.connected()) return;
        if (exclude_zero_pattern && is_zero_pattern(g)) return;
        auto res = canonicalize(g);
        if (exclude_odd_auto && res.graph->odd_auto) return;
        found.emplace(res.graph->certificate, res.graph);
    };
    gen.run();
}

void internal_valency_profiles(int budget, int min_val, std::vector<int>& cur,
                               const std::function<void(const std::vector<int>&)>& cb) {
    if (budget == 0) {
        cb(cur);
        return;
    }
    for (int v = min_val; v <= budget; ++v) {
        if (budget - v != 0 && budget - v < min_val) continue;
        cur.push_back(v);
        internal_valency_profiles(budget - v, v, cur, cb);
        cur.pop_back();
    }
}

} // namespace

std::vector<CanonPtr> enumerate_connected_profile(const std::vector<int>& internal_valencies,
                                                  const std::vector<Label>& decorations,
                                                  bool exclude_zero_pattern,
                                                  bool exclude_odd_auto) {
    std::map<std::vector<int64_t>, CanonPtr> found;
    std::vector<Label> deco = decorations;
    std::sort(deco.begin(), deco.end());
    enumerate_profile(internal_valencies, deco, exclude_zero_pattern, exclude_odd_auto, found);
    std::vector<CanonPtr> out;
    out.reserve(found.size());
    for (auto& [cert, g] : found) out.push_back(g);
    return out;
}

std::vector<CanonPtr> enumerate_graphs(const EnumOptions& opts) {
    std::map<std::vector<int64_t>, CanonPtr> found;
    const int n_ext = static_cast<int>(opts.decorations.size());
    std::vector<Label> deco = opts.decorations;
    std::sort(deco.begin(), deco.end());
    for (int l = 0; l <= opts.loop_bound; ++l) {
        int n_int = n_ext + 2 * l - 2;
        if (n_int < 0) continue;
        if (n_int == 0 && n_ext != 2) continue;
        int n_edges = (3 * n_int + n_ext) / 2;
        if ((3 * n_int + n_ext) % 2) continue;
        if (n_edges > opts.edge_bound || n_edges < 1) continue;
        std::vector<int> profile(n_int, 3);
        enumerate_profile(profile, deco, opts.exclude_zero_pattern, opts.exclude_odd_auto,
                          found);
    }
    std::vector<CanonPtr> out;
    out.reserve(found.size());
    for (auto& [cert, g] : found) out.push_back(g);
    return out;
}

std::vector<std::vector<Label>> decoration_multisets(int n_s, int genus, int size) {
    std::vector<Label> alphabet;
    for (int i = 1; i <= n_s; ++i) alphabet.push_back(s_label(i));
    for (int i = 1; i <= genus; ++i) {
        alphabet.push_back(hol_label(i));
        alphabet.push_back(ahol_label(i));
    }
    std::sort(alphabet.begin(), alphabet.end());
    std::vector<std::vector<Label>> out;
    std::vector<Label> cur;
    std::function<void(int, int)> rec = [&](int start, int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < static_cast<int>(alphabet.size()); ++i) {
            cur.push_back(alphabet[i]);
            rec(i, remaining - 1);
            cur.pop_back();
        }
    };
    rec(0, size);
    return out;
}

std::vector<CanonPtr> enumerate_all_connected(int n_s, int genus, int edge_bound) {
    std::map<std::vector<int64_t>, CanonPtr> found;
    for (int e = 1; e <= edge_bound; ++e) {
        for (int n_ext = 0; n_ext <= 2 * e; ++n_ext) {
            int internal_budget = 2 * e - n_ext;
            auto decos = decoration_multisets(n_s, genus, n_ext);
            std::vector<int> cur;
            internal_valency_profiles(
                internal_budget, 3, cur, [&](const std::vector<int>& profile) {
                    // a connected graph needs a spanning tree on the internal
                    // vertices, which consumes 2(v-1) half-edges
                    int v = static_cast<int>(profile.size());
                    if (v == 0 && n_ext != 2) return;
                    if (v > 0 && n_ext > internal_budget - 2 * (v - 1)) return;
                    for (const auto& d : decos)
                        enumerate_profile(profile, d, true, false, found);
                });
        }
    }
    std::vector<CanonPtr> out;
    out.reserve(found.size());
    for (auto& [cert, g] : found) out.push_back(g);
    return out;
}

} // namespace hodgecorr
