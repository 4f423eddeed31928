#include <doctest.h>

#include <random>

#include "builders.hpp"
#include "oracles.hpp"

#include "hodgecorr/canon.hpp"
#include "hodgecorr/enumerate.hpp"

using namespace hodgecorr;
using namespace hodgecorr::testing;

TEST_CASE("validate_graph basics") {
    auto e = bare_edge(s_label(1), s_label(2));
    CHECK(e.graph.n_half() == 2);
    CHECK(e.graph.n_edges() == 1);

    auto st = star3(s_label(1), s_label(2), s_label(3));
    CHECK(st.graph.n_half() == 6);
    CHECK(st.graph.n_edges() == 3);

    RawGraphData bad;
    bad.half_edges = 10;
    bad.matching = {{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
    bad.internal_blocks = {{0, 1, 2, 3}};  // 4-valent
    bad.external_blocks = {{5, s_label(1)}, {6, s_label(2)}, {7, s_label(3)},
                           {8, s_label(1)}, {9, s_label(2)}};
    // half-edge 4 dangling: blocks don't cover it
    CHECK_THROWS_AS(validate_graph(bad), GraphError);
    bad.external_blocks.push_back({4, s_label(3)});
    CHECK_THROWS_WITH_AS(validate_graph(bad), doctest::Contains("non-trivalent"), GraphError);
}

TEST_CASE("matching fixed point rejected") {
    RawGraphData raw;
    raw.half_edges = 2;
    raw.matching = {{0, 0}, {1, 1}};
    raw.external_blocks = {{0, s_label(1)}, {1, s_label(2)}};
    CHECK_THROWS_AS(validate_graph(raw), GraphError);
}

TEST_CASE("graph_stats identities") {
    auto t = tree4(s_label(1), s_label(2), s_label(3), s_label(4));
    auto s = graph_stats(t.graph);
    CHECK(s.defect == 0);
    CHECK(s.order == -1);
    CHECK(s.loops == 0);
    CHECK(s.degree == 1);

    auto tri = triangle3(s_label(1), s_label(2), s_label(3));
    auto s2 = graph_stats(tri.graph);
    CHECK(s2.defect == 0);
    CHECK(s2.order == 0);
    CHECK(s2.loops == 1);
    CHECK(s2.degree == 0);

    // 4-valent star with 4 legs: defect 1, degree 2
    RawGraphData raw;
    raw.half_edges = 8;
    raw.matching = {{0, 4}, {1, 5}, {2, 6}, {3, 7}};
    raw.internal_blocks = {{0, 1, 2, 3}};
    raw.external_blocks = {{4, s_label(1)}, {5, s_label(2)}, {6, s_label(3)}, {7, s_label(4)}};
    HalfEdgeGraph g = [&] {
        HalfEdgeGraph gg;
        gg.mate = {4, 5, 6, 7, 0, 1, 2, 3};
        gg.vertex_of = {0, 0, 0, 0, 1, 2, 3, 4};
        gg.vertices.resize(5);
        gg.vertices[0].internal = true;
        gg.vertices[0].half_edges = {0, 1, 2, 3};
        for (int i = 1; i <= 4; ++i) {
            gg.vertices[i].internal = false;
            gg.vertices[i].label = s_label(i);
            gg.vertices[i].half_edges = {i + 3};
        }
        return gg;
    }();
    auto s3 = graph_stats(g);
    CHECK(s3.defect == 1);
    CHECK(s3.degree == 2);
    CHECK(s3.degree == s3.defect - s3.loops + 1);
}

TEST_CASE("zero patterns") {
    // self-loop (A)
    HalfEdgeGraph g;
    g.mate = {1, 0, 3, 2};
    g.vertex_of = {0, 0, 0, 1};
    g.vertices.resize(2);
    g.vertices[0].internal = true;
    g.vertices[0].half_edges = {0, 1, 2};
    g.vertices[1].internal = false;
    g.vertices[1].label = s_label(1);
    g.vertices[1].half_edges = {3};
    CHECK(is_zero_pattern(g));

    // (C): two equal labels at one vertex
    auto y = star3(s_label(1), s_label(1), s_label(2));
    CHECK(is_zero_pattern(y.graph));
    // distinct labels fine
    auto st = star3(s_label(1), s_label(2), s_label(3));
    CHECK(!is_zero_pattern(st.graph));
    // (B)
    auto ee = bare_edge(s_label(1), s_label(1));
    CHECK(is_zero_pattern(ee.graph));
    CHECK(!is_zero_pattern(bare_edge(s_label(1), s_label(2)).graph));
    // (D)
    auto g3 = aut_example_3();
    CHECK(is_zero_pattern(g3.graph));
}

TEST_CASE("automorphism counts match the worked examples") {
    CHECK(canonicalize(aut_example_1()).graph->aut_count == 2);
    CHECK(canonicalize(aut_example_2()).graph->aut_count == 4);
    CHECK(canonicalize(aut_example_3()).graph->aut_count == 2);
    CHECK(canonicalize(bare_edge(s_label(1), s_label(2))).graph->aut_count == 1);
    CHECK(canonicalize(star3(s_label(1), s_label(2), s_label(3))).graph->aut_count == 1);
}

TEST_CASE("automorphism counts agree with exhaustive bijection search") {
    std::vector<OrientedGraph> samples = {
        bare_edge(s_label(1), s_label(2)),
        bare_edge(s_label(1), s_label(1)),
        star3(s_label(1), s_label(2), s_label(3)),
        star3(s_label(1), s_label(1), s_label(2)),
        tree4(s_label(1), s_label(1), s_label(1), s_label(1)),
        tree4(s_label(1), s_label(2), s_label(1), s_label(2)),
        triangle3(s_label(1), s_label(1), s_label(1)),
        triangle3(s_label(1), s_label(2), s_label(3)),
        aut_example_1(),
        aut_example_2(),
        aut_example_3(),
    };
    for (const auto& og : samples) {
        if (og.graph.n_half() > 12) continue;
        CHECK(canonicalize(og).graph->aut_count == bijection_count(og.graph, og.graph));
    }
}

TEST_CASE("canonicalize: isomorphism completeness and sign composition") {
    std::mt19937 rng(12345);
    std::vector<OrientedGraph> bases = {
        star3(s_label(1), s_label(2), s_label(3)),
        tree4(s_label(1), s_label(2), s_label(3), s_label(4)),
        tree4(s_label(1), s_label(1), s_label(2), s_label(3)),
        triangle3(s_label(1), s_label(2), s_label(3)),
        aut_example_1(),
        aut_example_2(),
    };
    for (int iter = 0; iter < 1000; ++iter) {
        const auto& base = bases[iter % bases.size()];
        auto r1 = canonicalize(base);
        OrientedGraph sh = random_relabel(base, rng);
        auto r2 = canonicalize(sh);
        REQUIRE(canon_equal(r1.graph, r2.graph));
        if (!r1.graph->odd_auto) CHECK(r1.sign == r2.sign);

        // transposing two edges in the order flips the sign
        if (sh.edge_order.size() >= 2) {
            OrientedGraph flipped = sh;
            std::swap(flipped.edge_order[0], flipped.edge_order[1]);
            auto r3 = canonicalize(flipped);
            CHECK(canon_equal(r2.graph, r3.graph));
            if (!r2.graph->odd_auto) CHECK(r3.sign == -r2.sign);
        }
    }
}

TEST_CASE("canonicalize agrees with brute-force relabeling search") {
    // arbitrary relabelings of the first worked example all land on the same
    // canonical object
    std::mt19937 rng(99);
    auto base = aut_example_1();
    auto c0 = canonicalize(base);
    for (int i = 0; i < 50; ++i) {
        auto shuffled = random_relabel(base, rng);
        CHECK(isomorphic_bruteforce(base.graph, shuffled.graph));
        CHECK(canon_equal(c0.graph, canonicalize(shuffled).graph));
    }
}

TEST_CASE("enumerate_graphs counts against brute force") {
    // 4 distinct legs, trees: (2n-5)!! = 3
    {
        EnumOptions o;
        o.decorations = {s_label(1), s_label(2), s_label(3), s_label(4)};
        o.loop_bound = 0;
        auto got = enumerate_graphs(o);
        CHECK(got.size() == 3);
    }
    // 2 distinct legs: one graph
    {
        EnumOptions o;
        o.decorations = {s_label(1), s_label(2)};
        o.loop_bound = 0;
        auto got = enumerate_graphs(o);
        CHECK(got.size() == 1);
    }
    // cross-check all decoration multisets of size <= 5 at loops <= 1 over
    // a small alphabet against the independent generator (the raw generator
    // is exponential, so the largest skeletons are capped at 16 half-edges)
    for (int size = 2; size <= 5; ++size) {
        for (auto& deco : decoration_multisets(2, 0, size)) {
            for (int l = 0; l <= 1; ++l) {
                int n_int = size + 2 * l - 2;
                if (3 * n_int + size > 16) continue;
                EnumOptions o;
                o.decorations = deco;
                o.loop_bound = l;
                auto mine = enumerate_graphs(o);
                size_t mine_l = 0;
                for (auto& g : mine)
                    if (g->stats.loops == l) ++mine_l;
                auto ref = enumerate_bruteforce(deco, l, true);
                CHECK(mine_l == ref.size());
            }
        }
    }
}

TEST_CASE("graph_stats identity on enumerated graphs") {
    EnumOptions o;
    o.decorations = {s_label(1), s_label(2), s_label(3)};
    o.loop_bound = 1;
    for (auto& g : enumerate_graphs(o)) {
        CHECK(g->stats.degree == g->stats.defect - g->stats.loops + 1);
    }
}

TEST_CASE("json round trip") {
    auto t = triangle3(s_label(1), s_label(2), s_label(3));
    auto j = graph_to_json(t);
    auto back = graph_from_json(j);
    CHECK(canon_equal(canonicalize(t).graph, canonicalize(back).graph));
    CHECK(canonicalize(t).sign == canonicalize(back).sign);
}

TEST_CASE("disconnected stats error") {
    HalfEdgeGraph g;
    g.mate = {1, 0, 3, 2};
    g.vertex_of = {0, 1, 2, 3};
    g.vertices.resize(4);
    for (int i = 0; i < 4; ++i) {
        g.vertices[i].internal = false;
        g.vertices[i].label = s_label(i % 2 + 1);
        g.vertices[i].half_edges = {i};
    }
    CHECK_THROWS_AS(graph_stats(g), GraphError);
}
