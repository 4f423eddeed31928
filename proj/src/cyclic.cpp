#include "hodgecorr/cyclic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace hodgecorr {

std::string CyclicWord::str() const {
    std::ostringstream os;
    os << "C(";
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ",";
        os << letters[i].str();
    }
    os << ")";
    return os.str();
}

CyclicWord cyclic_normalize(const std::vector<Label>& letters) {
    if (letters.empty()) throw std::invalid_argument("empty cyclic word");
    const size_t n = letters.size();
    std::vector<Label> best = letters;
    int aut = 0;
    for (size_t r = 0; r < n; ++r) {
        std::vector<Label> rot(n);
        for (size_t i = 0; i < n; ++i) rot[i] = letters[(i + r) % n];
        if (rot < best) best = rot;
        if (rot == letters) ++aut;
    }
    CyclicWord w;
    w.letters = std::move(best);
    w.aut_count = aut;
    return w;
}

WordVector shuffle_relator(const Label& v0, const std::vector<Label>& block1,
                           const std::vector<Label>& block2) {
    if (block1.empty() || block2.empty())
        throw std::invalid_argument("shuffle blocks must be nonempty");
    const int p = static_cast<int>(block1.size());
    const int q = static_cast<int>(block2.size());
    WordVector out;
    // choose the p slot-values assigned to block1 (increasing), the rest to
    // block2 (increasing); the word at position i gets v_{sigma(i)}
    std::vector<int> idx(p);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == p) {
            std::vector<int> sigma(p + q);  // slot -> source index (1-based)
            std::vector<char> used(p + q + 1, 0);
            for (int a = 0; a < p; ++a) {
                sigma[a] = idx[a];
                used[idx[a]] = 1;
            }
            int pos = p;
            for (int v = 1; v <= p + q; ++v)
                if (!used[v]) sigma[pos++] = v;
            std::vector<Label> word;
            word.push_back(v0);
            for (int i = 0; i < p + q; ++i) {
                int src = sigma[i];
                word.push_back(src <= p ? block1[src - 1] : block2[src - p - 1]);
            }
            auto w = cyclic_normalize(word);
            auto it = out.find(w);
            if (it == out.end())
                out.emplace(w, 1);
            else
                it->second += 1;
            return;
        }
        for (int v = start; v <= p + q; ++v) {
            idx[k] = v;
            rec(v + 1, k + 1);
        }
    };
    rec(1, 0);
    return out;
}

void WordPairVector::add(const CyclicWord& a, const CyclicWord& b, const Rational& c) {
    if (c == 0) return;
    if (a == b) return;  // wedge square vanishes
    std::pair<CyclicWord, CyclicWord> key(a, b);
    Rational cc = c;
    if (b < a) {
        key = {b, a};
        cc = -c;
    }
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, cc);
    } else {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

WordPairVector& WordPairVector::operator+=(const WordPairVector& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

WordPairVector& WordPairVector::operator-=(const WordPairVector& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
}

WordPairVector cobracket_s(const CyclicWord& w) {
    WordPairVector out;
    const int n1 = static_cast<int>(w.size());  // n+1 letters
    for (int p = 0; p < n1; ++p) {
        if (!w.letters[p].is_s()) continue;
        // rotate so the anchor sits at position 0
        std::vector<Label> rot(n1);
        for (int i = 0; i < n1; ++i) rot[i] = w.letters[(p + i) % n1];
        for (int i = 1; i <= n1 - 1; ++i) {
            std::vector<Label> c1, c2;
            c1.push_back(rot[0]);
            for (int j = i; j <= n1 - 1; ++j) c1.push_back(rot[j]);
            c2.push_back(rot[0]);
            for (int j = 1; j < i; ++j) c2.push_back(rot[j]);
            out.add(cyclic_normalize(c1), cyclic_normalize(c2), 1);
        }
    }
    return out;
}

WordPairVector cobracket_cas(const CyclicWord& w, int genus) {
    WordPairVector out;
    if (genus <= 0) return out;
    const int n1 = static_cast<int>(w.size());
    // cut at two gaps i, j (possibly equal) and insert the Casimir pair
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n1; ++j) {
            // first factor: letters i..j-1 (cyclically), second: j..i-1;
            // i == j cuts off an empty lens carrying the bare Casimir letter
            std::vector<Label> a, b;
            int len_a = (j - i + n1) % n1;
            for (int t = 0; t < len_a; ++t) a.push_back(w.letters[(i + t) % n1]);
            int len_b = n1 - len_a;
            for (int t = 0; t < len_b; ++t) b.push_back(w.letters[(j + t) % n1]);
            for (int k = 1; k <= genus; ++k) {
                std::vector<Label> a1 = a, b1 = b;
                a1.push_back(hol_label(k));
                b1.push_back(ahol_label(k));
                // full symplectic basis: both assignments, opposite signs
                std::vector<Label> a2 = a, b2 = b;
                a2.push_back(ahol_label(k));
                b2.push_back(hol_label(k));
                out.add(cyclic_normalize(a1), cyclic_normalize(b1), 1);
                out.add(cyclic_normalize(a2), cyclic_normalize(b2), -1);
            }
        }
    }
    return out;
}

WordPairVector cobracket(const CyclicWord& w, int genus) {
    WordPairVector out = cobracket_s(w);
    out += cobracket_cas(w, genus);
    return out;
}

namespace {

// recursive planar tree skeletons over a boundary arc
struct Node {
    int leg = -1;  // boundary position for leaves
    int left = -1, right = -1;
};

} // namespace

std::vector<PlanarTree> planar_tree_expansion(const CyclicWord& w) {
    const int n = static_cast<int>(w.size());
    if (n < 2) throw std::invalid_argument("planar trees need at least two letters");
    std::vector<PlanarTree> out;

    if (n == 2) {
        RawGraphData raw;
        raw.half_edges = 2;
        raw.matching = {{0, 1}};
        raw.external_blocks = {{0, w.letters[0]}, {1, w.letters[1]}};
        PlanarTree t;
        t.tree = validate_oriented(raw);
        t.leg_external_vertex = {0, 1};
        out.push_back(std::move(t));
        return out;
    }

    // enumerate shapes: node covering arc [i..j]; leaves are single slots
    std::vector<Node> pool;
    std::function<std::vector<int>(int, int)> build = [&](int i, int j) {
        std::vector<int> roots;
        if (i == j) {
            pool.push_back({i, -1, -1});
            roots.push_back(static_cast<int>(pool.size()) - 1);
            return roots;
        }
        for (int m = i; m < j; ++m) {
            auto lefts = build(i, m);
            for (int l : lefts) {
                auto rights = build(m + 1, j);
                for (int r : rights) {
                    pool.push_back({-1, l, r});
                    roots.push_back(static_cast<int>(pool.size()) - 1);
                }
            }
        }
        return roots;
    };
    auto tops = build(1, n - 1);

    for (int top : tops) {
        // materialize: half-edges created on demand; rotations recorded per
        // internal vertex in counterclockwise order (parent, left, right)
        RawGraphData raw;
        std::vector<std::vector<int>> rotations;  // internal vertex -> ccw edges
        int next_half = 0;
        auto new_half = [&]() { return next_half++; };
        std::vector<std::pair<int, Label>> externals;
        std::vector<std::vector<int>> internal_blocks;
        std::vector<std::pair<int, int>> matching;
        std::vector<int> leg_vertex(n, -1);

        // returns the half-edge at the subtree root awaiting its parent link
        std::function<int(int)> mat = [&](int node) -> int {
            const Node& nd = pool[node];
            if (nd.leg >= 0) {
                int h = new_half();
                externals.emplace_back(h, w.letters[nd.leg]);
                leg_vertex[nd.leg] = static_cast<int>(externals.size()) - 1;
                return h;
            }
            int hp = new_half();  // toward parent
            int hl = new_half();
            int hr = new_half();
            internal_blocks.push_back({hp, hl, hr});
            int hl_child = mat(nd.left);
            int hr_child = mat(nd.right);
            matching.emplace_back(hl, hl_child);
            matching.emplace_back(hr, hr_child);
            return hp;
        };
        int h_root_leg = new_half();
        externals.emplace_back(h_root_leg, w.letters[0]);
        leg_vertex[0] = 0;
        int h_top = mat(top);
        matching.emplace_back(h_root_leg, h_top);

        raw.half_edges = next_half;
        raw.matching = matching;
        raw.internal_blocks = internal_blocks;
        // external vertex ids follow internal ones in validate_graph; build
        // external list in creation order
        raw.external_blocks = externals;

        PlanarTree t;
        t.tree = validate_oriented(raw);
        // leg boundary position -> external vertex id (externals come after
        // the internal blocks in validate_graph's vertex numbering)
        int n_int = static_cast<int>(internal_blocks.size());
        t.leg_external_vertex.resize(n);
        // recover leg -> vertex through leg_vertex (indices into `externals`)
        for (int leg = 0; leg < n; ++leg)
            t.leg_external_vertex[leg] = n_int + leg_vertex[leg];

        // canonical orientation: boundary walk rooted at leg 0
        t.tree.edge_order = boundary_walk_order(t, 0);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<int> boundary_walk_order(const PlanarTree& t, int root_leg) {
    const HalfEdgeGraph& g = t.tree.graph;
    auto edges = g.edge_list();
    std::map<std::pair<int, int>, int> edge_of;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) edge_of[edges[e]] = e;
    auto edge_id = [&](int h) {
        int a = h, b = g.mate[h];
        if (a > b) std::swap(a, b);
        return edge_of.at({a, b});
    };

    // rotation at each internal vertex: the planar embedding created the
    // three half-edges of block k as (parent, left, right) in ccw order;
    // validate_graph sorted them, but creation ids are ascending in that
    // same order, so the sorted list is already the ccw rotation
    std::vector<int> order;
    std::vector<char> seen(g.n_edges(), 0);
    std::function<void(int)> walk = [&](int h_arrive) {
        // h_arrive: half-edge by which we arrive at its vertex
        int v = g.vertex_of[h_arrive];
        if (!g.vertices[v].internal) return;
        const auto& rot = g.vertices[v].half_edges;  // ccw
        int pos = 0;
        for (size_t i = 0; i < rot.size(); ++i)
            if (rot[i] == h_arrive) pos = static_cast<int>(i);
        for (size_t k = 1; k < rot.size(); ++k) {
            int h = rot[(pos + k) % rot.size()];
            int e = edge_id(h);
            if (!seen[e]) {
                seen[e] = 1;
                order.push_back(e);
            }
            walk(g.mate[h]);
        }
    };
    int root_vertex = t.leg_external_vertex[root_leg];
    int h0 = g.vertices[root_vertex].half_edges[0];
    int e0 = edge_id(h0);
    seen[e0] = 1;
    order.push_back(e0);
    walk(g.mate[h0]);
    return order;
}

GraphVector planar_expansion_vector(const CyclicWord& w) {
    GraphVector out;
    for (const auto& t : planar_tree_expansion(w)) accumulate_normalized(out, t.tree, 1);
    return out;
}

} // namespace hodgecorr
