#include <doctest.h>

#include <cmath>
#include <random>

#include "hodgecorr/correlator.hpp"
#include "hodgecorr/polylog.hpp"

using namespace hodgecorr;
using doctest::Approx;

namespace {
OrientedGraph triangle_graph() {
    RawGraphData raw;
    raw.half_edges = 12;
    raw.matching = {{0, 3}, {4, 6}, {7, 1}, {2, 9}, {5, 10}, {8, 11}};
    raw.internal_blocks = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    raw.external_blocks = {{9, s_label(1)}, {10, s_label(2)}, {11, s_label(3)}};
    return validate_oriented(raw);
}
} // namespace

TEST_CASE("length-2 correlator is the Green function exactly") {
    QuadratureConfig cfg;
    auto r = correlator_tree({Cplx(1, 0), Cplx(3, 1)}, cfg);
    CHECK(r.pi_power == 1);
    CHECK(r.value.real() == Approx(green_p1(Cplx(1, 0), Cplx(3, 1))));
    CHECK(r.value.imag() == 0.0);
    CHECK(r.error_estimate == 0.0);
    // equal points give exact zero
    auto z = correlator_tree({Cplx(1, 0), Cplx(1, 0)}, cfg);
    CHECK(z.value == Cplx(0, 0));
    // the L1 form of the identity
    Cplx zz(0.7, 1.3);
    auto l1 = correlator_tree({Cplx(1, 0), zz}, cfg);
    CHECK(l1.value.real() == Approx((-sv_polylog(1, zz)).real()).epsilon(1e-12));
}

TEST_CASE("dilogarithm identity at a spot point") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-4;
    auto r = correlator_tree({Cplx(0, 0), Cplx(1, 0), Cplx(0, 1)}, cfg);
    CHECK(r.pi_power == 2);
    Cplx want = -sv_polylog(2, Cplx(0, 1));
    CHECK(std::abs(r.value - want) / std::abs(want) < 1e-3);
}

TEST_CASE("cyclic invariance is structural") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-5;
    std::vector<Cplx> w1{Cplx(0, 0), Cplx(1, 0), Cplx(0.4, 1.1)};
    std::vector<Cplx> w2{Cplx(1, 0), Cplx(0.4, 1.1), Cplx(0, 0)};
    auto a = correlator_tree(w1, cfg);
    auto b = correlator_tree(w2, cfg);
    CHECK(std::abs(a.value - b.value) < 5e-5);
}

TEST_CASE("first shuffle relation numerically") {
    QuadratureConfig cfg;
    cfg.tolerance = 3e-5;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int it = 0; it < 3; ++it) {
        Cplx v0(u(rng), u(rng)), v1(u(rng), u(rng)), v2(u(rng), u(rng));
        if (std::abs(v0 - v1) < 0.3 || std::abs(v0 - v2) < 0.3 || std::abs(v1 - v2) < 0.3)
            continue;
        auto a = correlator_tree({v0, v1, v2}, cfg);
        auto b = correlator_tree({v0, v2, v1}, cfg);
        CHECK(std::abs(a.value + b.value) < 1e-3);
    }
}

TEST_CASE("length-4 shuffle relator vanishes within MC noise") {
    // p = 2, q = 1: C(v0 v1 v2 v3) + C(v0 v1 v3 v2) + C(v0 v2 v3 v1)
    QuadratureConfig cfg;
    cfg.scheme = QuadratureConfig::Scheme::MonteCarlo;
    cfg.sample_count = 16'000'000;
    cfg.seed = 21;
    Cplx v0(0, 0), v1(1, 0), v2(0.3, 0.9), v3(-0.8, 0.4);
    Cplx sum = 0;
    double var = 0;
    int k = 0;
    for (auto& w : {std::vector<Cplx>{v0, v1, v2, v3}, std::vector<Cplx>{v0, v1, v3, v2},
                    std::vector<Cplx>{v0, v2, v3, v1}}) {
        cfg.seed = 21 + (k++);
        auto r = correlator_tree(w, cfg);
        sum += r.value;
        var += r.error_estimate * r.error_estimate;
    }
    CHECK(std::abs(sum) < std::max(1e-3, 4 * std::sqrt(var)));
}

TEST_CASE("repeated letters follow the vanishing pattern") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-4;
    // C(z1, z1, z2): both trees have a vertex with two equal marked legs
    auto r = correlator_tree({Cplx(0, 0), Cplx(0, 0), Cplx(1, 0)}, cfg);
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("MC determinism and variance scaling") {
    QuadratureConfig cfg;
    cfg.scheme = QuadratureConfig::Scheme::MonteCarlo;
    cfg.sample_count = 1 << 20;
    cfg.seed = 5;
    std::vector<Cplx> w{Cplx(1, 0), Cplx(2, 0), Cplx(0, 0), Cplx(0, 0)};
    auto a = correlator_tree(w, cfg);
    auto b = correlator_tree(w, cfg);
    CHECK(a.value == b.value);  // bitwise: deterministic reduction
    CHECK(a.error_estimate == b.error_estimate);
    cfg.parallel = false;
    auto c = correlator_tree(w, cfg);
    CHECK(a.value == c.value);  // serial reference agrees exactly

    // quadrupling samples roughly halves the standard error
    cfg.parallel = true;
    cfg.sample_count = 4 * (1 << 20);
    auto d = correlator_tree(w, cfg);
    CHECK(d.error_estimate < 0.75 * a.error_estimate);
    CHECK(d.error_estimate > 0.25 * a.error_estimate);
}

TEST_CASE("one-loop triangle MC") {
    auto tri = triangle_graph();
    QuadratureConfig cfg;
    cfg.scheme = QuadratureConfig::Scheme::MonteCarlo;
    cfg.sample_count = 4'000'000;
    cfg.seed = 3;
    std::vector<Cplx> pos{Cplx(0, 0), Cplx(1, 0), Cplx(0.5, 0.9)};
    auto r = correlator_one_loop(tri, pos, cfg);
    CHECK(std::isfinite(r.value.real()));
    CHECK(r.error_estimate > 0.0);
    CHECK(r.pi_power == 3);
    // doubling stability within 3 standard errors
    cfg.sample_count *= 2;
    cfg.seed = 17;
    auto r2 = correlator_one_loop(tri, pos, cfg);
    double joint = std::sqrt(r.error_estimate * r.error_estimate +
                             r2.error_estimate * r2.error_estimate);
    CHECK(std::abs(r.value - r2.value) < 3 * joint + 1e-12);
    // orientation flip negates exactly
    auto flipped = tri;
    std::swap(flipped.edge_order[0], flipped.edge_order[1]);
    cfg.sample_count /= 2;
    cfg.seed = 3;
    auto r3 = correlator_one_loop(flipped, pos, cfg);
    CHECK(r3.value == -r.value);
    // equal-labeled legs at one vertex give exact zero
    RawGraphData raw;
    raw.half_edges = 12;
    raw.matching = {{0, 3}, {4, 6}, {7, 1}, {2, 9}, {5, 10}, {8, 11}};
    raw.internal_blocks = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    raw.external_blocks = {{9, s_label(1)}, {10, s_label(1)}, {11, s_label(1)}};
    auto degenerate = validate_oriented(raw);
    // note: all three legs share one label but sit at distinct vertices, so
    // pattern (C) does not apply; attach two equal labels at one vertex via
    // a 4-leg 1-loop graph instead is out of unit scope. The zero-pattern
    // path is exercised through is_zero_pattern coverage in graph tests.
    (void)degenerate;
}

TEST_CASE("twistor evaluations") {
    auto tri = triangle_graph();
    QuadratureConfig cfg;
    cfg.scheme = QuadratureConfig::Scheme::MonteCarlo;
    cfg.sample_count = 2'000'000;
    cfg.seed = 9;
    std::vector<Cplx> pos{Cplx(0, 0), Cplx(1, 0), Cplx(2, 0)};
    // u = 1/2 equals the one-loop formula exactly (same integrand)
    auto a = correlator_twistor_loop(tri, pos, Cplx(0.5, 0), cfg);
    auto b = correlator_one_loop(tri, pos, cfg);
    CHECK(a.value == b.value);
    // u = 0, 1: the integrand vanishes pointwise
    CHECK(correlator_twistor_loop(tri, pos, Cplx(1, 0), cfg).value == Cplx(0, 0));
    CHECK(correlator_twistor_loop(tri, pos, Cplx(0, 0), cfg).value == Cplx(0, 0));

    // two-loop inputs return the degree-vanishing flag and exact zero
    RawGraphData raw;  // theta graph with one leg: two vertices joined by 3
                       // edges is non-regular; use the 2-loop dumbbell-free
                       // form: K4 minus nothing... simplest: the 2-loop
                       // uni-trivalent graph with 2 legs
    raw.half_edges = 16;
    // vertices a,b,c,d: cycle a-b-c-d-a plus edge a-c, plus legs at b,d
    raw.matching = {{0, 3}, {4, 6}, {7, 9}, {10, 1}, {2, 8}, {5, 12}, {11, 13}};
    raw.internal_blocks = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}};
    raw.external_blocks = {{12, s_label(1)}, {13, s_label(2)}};
    raw.half_edges = 14;
    auto twoloop = validate_oriented(raw);
    CHECK(graph_stats(twoloop.graph).loops == 2);
    auto t2 = correlator_twistor_loop(twoloop, {Cplx(0, 0), Cplx(1, 0)}, Cplx(0.3, 0), cfg);
    CHECK(t2.degree_vanishing);
    CHECK(t2.value == Cplx(0, 0));

    // tree twistor components at u=1/2: the two-leg du part equals the
    // Green value
    auto tf = correlator_twistor_tree({Cplx(0, 0), Cplx(1.5, 0.5)}, Cplx(0.5, 0), cfg);
    CHECK(tf.du.real() == Approx(green_p1(Cplx(0, 0), Cplx(1.5, 0.5))));
}

TEST_CASE("maurer-cartan spot residuals") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-6;
    double r2 = mc_residual_component(ResidualComponent::TwoLegClosedness, Cplx(0.3, 0),
                                      {Cplx(0.2, 0.1), Cplx(1.3, -0.4)}, cfg);
    CHECK(r2 < 1e-4);
    QuadratureConfig cfg3;
    cfg3.tolerance = 2e-6;
    double r3 = mc_residual_component(ResidualComponent::ThreeStarBoundary, Cplx(0.3, 0),
                                      {Cplx(0, 0), Cplx(1, 0), Cplx(2, 0)}, cfg3);
    CHECK(r3 < 1e-2);
}
