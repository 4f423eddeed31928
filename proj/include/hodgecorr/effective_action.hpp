#pragma once

#include <string>
#include <vector>

#include "hodgecorr/graph_vector.hpp"
#include "hodgecorr/homology.hpp"

namespace hodgecorr {

struct ActionContext {
    int n_s = 0;
    int genus = 0;
};

// one summand  hbar^{l} / |Aut|  (Gamma, W)  (x)  [(Gamma, W^dual)]
struct ActionTerm {
    CanonPtr first;
    GraphVector second;  // unreduced representative of the dual class
    Rational coeff;
    int hbar = 0;
};

struct TruncatedAction {
    ActionContext ctx;
    int cutoff = 0;
    std::vector<ActionTerm> terms;
};

TruncatedAction build_action(const ActionContext& ctx, int cutoff);

struct QmeComponent {
    Monomial first;
    int hbar = 0;
    enum class Status { Zero, NonZero, Skipped } status = Status::Zero;
    GraphVector residual;  // reduced second factor; nonzero only on failure
};

// expands  (d (x) Id) s  -  1/2 [s, s]  -  hbar (Id (x) delta) s  grouped by
// first-factor monomial and hbar power; every closure-safe component must
// reduce to zero mod IHX
std::vector<QmeComponent> qme_residual(const TruncatedAction& a, IhxStore& store);

std::string qme_report_json(const std::vector<QmeComponent>& comps);

} // namespace hodgecorr
