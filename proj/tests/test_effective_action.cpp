#include <doctest.h>

#include "builders.hpp"
#include "oracles.hpp"

#include "hodgecorr/differentials.hpp"
#include "hodgecorr/effective_action.hpp"
#include "hodgecorr/enumerate.hpp"

using namespace hodgecorr;
using namespace hodgecorr::testing;

TEST_CASE("build_action smallest contexts") {
    // k=2, g=0, cutoff 1: just the bare edge, coefficient 1, hbar^0
    auto a = build_action({2, 0}, 1);
    REQUIRE(a.terms.size() == 1);
    CHECK(a.terms[0].coeff == 1);
    CHECK(a.terms[0].hbar == 0);
    CHECK(a.terms[0].first->n_edges() == 1);

    // k=3, g=0, cutoff 6 includes the decorated triangle at hbar^1
    auto b = build_action({3, 0}, 6);
    bool saw_triangle = false;
    for (auto& t : b.terms) {
        CHECK(t.first->graph.n_external() >= 1);
        CHECK(t.first->stats.loops <= 1);
        if (t.first->stats.loops == 1 && t.first->graph.n_external() == 3) {
            saw_triangle = true;
            CHECK(t.hbar == 1);
            CHECK(t.coeff == Rational(1) / t.first->aut_count);
        }
    }
    CHECK(saw_triangle);
}

TEST_CASE("orbit-stabilizer coefficient identity") {
    // |Aut(G).e| / |Aut(G)| = |Aut(G\\e).pair| / |Aut(G\\e)| on enumerated
    // (graph, internal edge) pairs: the cut ends carry one shared fresh
    // marker and the exhaustive bijection counter is the oracle
    int pairs = 0;
    std::vector<std::vector<Label>> decos;
    for (int size = 3; size <= 4; ++size)
        for (auto& d : decoration_multisets(3, 0, size)) decos.push_back(d);
    for (auto& deco : decos) {
        EnumOptions o;
        o.decorations = deco;
        o.loop_bound = 1;
        o.edge_bound = 6;
        for (auto& g : enumerate_graphs(o)) {
            if (g->graph.n_half() > 14) continue;
            auto edges = g->graph.edge_list();
            for (int e = 0; e < g->n_edges(); ++e) {
                if (!g->graph.edge_is_internal(e)) continue;
                ++pairs;
                Rational lhs = Rational(edge_orbit_size(g->graph, e)) /
                               bijection_count(g->graph, g->graph);

                // cut e, both new external vertices sharing a fresh label
                HalfEdgeGraph cut = g->graph;
                auto [a, b] = edges[e];
                Label fresh = s_label(99);
                int va = static_cast<int>(cut.vertices.size());
                cut.vertices.push_back({false, fresh, {static_cast<int>(cut.mate.size())}});
                cut.vertex_of.push_back(va);
                cut.mate.push_back(a);
                cut.mate[a] = static_cast<int>(cut.mate.size()) - 1;
                int vb = static_cast<int>(cut.vertices.size());
                cut.vertices.push_back({false, fresh, {static_cast<int>(cut.mate.size())}});
                cut.vertex_of.push_back(vb);
                cut.mate.push_back(b);
                cut.mate[b] = static_cast<int>(cut.mate.size()) - 1;
                cut.validate();

                auto cut_edges = cut.edge_list();
                int leg_a = -1, leg_b = -1;
                for (int k = 0; k < static_cast<int>(cut_edges.size()); ++k) {
                    auto [x, y] = cut_edges[k];
                    if (cut.vertex_of[x] == va || cut.vertex_of[y] == va) leg_a = k;
                    if (cut.vertex_of[x] == vb || cut.vertex_of[y] == vb) leg_b = k;
                }
                REQUIRE(leg_a >= 0);
                REQUIRE(leg_b >= 0);

                int64_t aut_cut = bijection_count(cut, cut);
                int64_t orb_a = edge_orbit_size(cut, leg_a);
                // the unordered leg pair: halve the orbit when some
                // automorphism exchanges the two legs
                HalfEdgeGraph marked_a = cut, marked_b = cut;
                marked_a.vertices[va].label = s_label(98);
                marked_b.vertices[vb].label = s_label(98);
                bool swappable = isomorphic_bruteforce(marked_a, marked_b);
                int64_t orbit_pair = swappable ? orb_a / 2 : orb_a;
                CHECK(lhs == Rational(orbit_pair) / aut_cut);

                // product identity for disconnecting cuts: with the equal
                // markers, |Aut(cut)| = |Aut(piece1)| |Aut(piece2)| times 2
                // exactly when the marked halves are exchangeable
                if (!cut.connected()) {
                    GraphVector split;
                    OrientedGraph ocut;
                    ocut.graph = cut;
                    ocut.edge_order.resize(cut.n_edges());
                    for (int k = 0; k < cut.n_edges(); ++k) ocut.edge_order[k] = k;
                    accumulate_normalized(split, ocut, 1);
                    if (split.size() == 1) {
                        const auto& mono = split.terms().begin()->first;
                        REQUIRE(mono.parts.size() == 2);
                        int64_t a1 = mono.parts[0]->aut_count;
                        int64_t a2 = mono.parts[1]->aut_count;
                        bool halves_iso = canon_equal(mono.parts[0], mono.parts[1]);
                        CHECK(aut_cut == a1 * a2 * (halves_iso ? 2 : 1));
                    }
                }
            }
        }
    }
    CHECK(pairs >= 8);
}

TEST_CASE("formal quantum master equation at small cutoffs") {
    IhxStore store;
    SUBCASE("k=2 genus 0 cutoff 3") {
        auto a = build_action({2, 0}, 3);
        for (auto& comp : qme_residual(a, store)) {
            if (comp.status == QmeComponent::Status::NonZero) {
                MESSAGE("component ", comp.first.str(), " hbar ", comp.hbar, " residual ",
                        comp.residual.str());
            }
            CHECK(comp.status != QmeComponent::Status::NonZero);
        }
    }
    SUBCASE("k=2 genus 0 cutoff 4") {
        auto a = build_action({2, 0}, 4);
        for (auto& comp : qme_residual(a, store))
            CHECK(comp.status != QmeComponent::Status::NonZero);
    }
    SUBCASE("k=1 genus 1 cutoff 4") {
        auto a = build_action({1, 1}, 4);
        int zero = 0;
        for (auto& comp : qme_residual(a, store)) {
            if (comp.status == QmeComponent::Status::NonZero) {
                MESSAGE("component ", comp.first.str(), " hbar ", comp.hbar, " residual ",
                        comp.residual.str());
            }
            CHECK(comp.status != QmeComponent::Status::NonZero);
            if (comp.status == QmeComponent::Status::Zero) ++zero;
        }
        CHECK(zero > 0);
    }
    SUBCASE("k=3 genus 0 cutoff 4") {
        auto a = build_action({3, 0}, 4);
        int zero = 0;
        for (auto& comp : qme_residual(a, store)) {
            if (comp.status == QmeComponent::Status::NonZero) {
                MESSAGE("component ", comp.first.str(), " hbar ", comp.hbar, " residual ",
                        comp.residual.str());
            }
            CHECK(comp.status != QmeComponent::Status::NonZero);
            if (comp.status == QmeComponent::Status::Zero) ++zero;
        }
        CHECK(zero > 0);
    }
}

TEST_CASE("(d_delta (x) Id) of the action vanishes mod IHX by itself") {
    // needs 4 distinct labels so the 4-valent contraction survives its own
    // automorphisms; genus 1 supplies hol/ahol
    IhxStore store;
    auto a = build_action({2, 1}, 5);
    std::map<Monomial, GraphVector, MonomialLess> acc;
    for (auto& t : a.terms) {
        GraphVector first = GraphVector::single({t.first, 1});
        auto dv = d_delta(first);
        for (const auto& [m, q] : dv.terms()) {
            GraphVector add = t.second;
            add *= t.coeff * q;
            acc[m] += add;
        }
    }
    int nonempty = 0;
    for (auto& [m, vec] : acc) {
        if (!vec.is_zero()) ++nonempty;
        CHECK(store.reduce(vec).is_zero());
    }
    CHECK(nonempty > 0);
}
