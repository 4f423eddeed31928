#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgecorr/graph.hpp"
#include "hodgecorr/green.hpp"

namespace hodgecorr {

struct QuadratureConfig {
    enum class Scheme { Adaptive2D, MonteCarlo } scheme = Scheme::Adaptive2D;
    long max_cells = 400000;          // adaptive subdivision budget
    long long sample_count = 8000000; // Monte Carlo samples
    uint64_t seed = 1;
    double tolerance = 1e-5;          // adaptive target (absolute per integral)
    bool parallel = true;
};

struct CorrelatorResult {
    Cplx value{};          // coefficient of (2 pi i)^{-pi_power}
    double error_estimate = 0.0;
    int pi_power = 0;
    long long samples = 0;
    bool degree_vanishing = false;  // set when a >= 2-loop input is returned as exact zero
};

// ---- adaptive / Monte Carlo scalar integrators over the plane ----

struct PlaneIntegral {
    Cplx value{};
    double error = 0.0;
    long long evals = 0;
};

// integral of f over the whole plane; singular points are refined
// geometrically, the neighborhood of infinity is handled by inversion
PlaneIntegral integrate_plane(const std::function<Cplx(Cplx)>& f,
                              const std::vector<Cplx>& singular, const QuadratureConfig& cfg);

// Monte Carlo integral over C^m with a Cauchy-mixture proposal centered at
// the given points (per variable); deterministic for fixed seed
PlaneIntegral integrate_mc(const std::function<Cplx(const std::vector<Cplx>&)>& f, int m,
                           const std::vector<std::vector<Cplx>>& centers,
                           const QuadratureConfig& cfg);

// ---- correlator operations (genus 0, distinguished point at infinity) ----

// the per-tree constant: rho = number of d^C factors, p/q = form counts;
// the global scalar sigma is frozen by the dilogarithm calibration
double correlator_c_constant(int rho, int p = 0, int q = 0);
double correlator_calibration_sigma();

// Hodge correlator of a cyclic word of marked points; length 2 is closed
// form, one internal vertex integrates adaptively, more use Monte Carlo
CorrelatorResult correlator_tree(const std::vector<Cplx>& word, const QuadratureConfig& cfg);

// one-loop integral with every edge carrying (1/2) d^C G; `positions` maps
// S-label index i (1-based) to the marked point
CorrelatorResult correlator_one_loop(const OrientedGraph& graph,
                                     const std::vector<Cplx>& positions,
                                     const QuadratureConfig& cfg);

// twistor-line evaluation of a 1-loop graph (scalar in the base)
CorrelatorResult correlator_twistor_loop(const OrientedGraph& graph,
                                         const std::vector<Cplx>& positions, Cplx u,
                                         const QuadratureConfig& cfg);

// twistor-line evaluation of the tree of a word: a 1-form with components
// along du and dz_i / dzbar_i for each word slot
struct TwistorForm {
    Cplx du{};
    std::vector<Cplx> dz;     // per word slot
    std::vector<Cplx> dzbar;  // per word slot
    double error = 0.0;
    int pi_power = 0;
};
TwistorForm correlator_twistor_tree(const std::vector<Cplx>& word, Cplx u,
                                    const QuadratureConfig& cfg);

enum class ResidualComponent { TwoLegClosedness, ThreeStarBoundary };

// numeric Maurer-Cartan spot check: finite-difference exterior derivative of
// Z' in (positions, u) against the boundary terms; returns the max component
// magnitude of the residual 2-form
double mc_residual_component(ResidualComponent comp, Cplx u, const std::vector<Cplx>& positions,
                             const QuadratureConfig& cfg);

} // namespace hodgecorr
