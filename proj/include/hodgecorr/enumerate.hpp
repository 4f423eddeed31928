#pragma once

#include <vector>

#include "hodgecorr/canon.hpp"

namespace hodgecorr {

struct EnumOptions {
    std::vector<Label> decorations;  // external decoration multiset
    int loop_bound = 0;
    int edge_bound = 1 << 20;
    bool exclude_zero_pattern = true;
    bool exclude_odd_auto = false;
};

// One canonical representative per isomorphism class of connected
// uni-trivalent decorated graphs; deterministic (certificate) order.
std::vector<CanonPtr> enumerate_graphs(const EnumOptions& opts);

// All connected decorated graphs with internal valencies >= 3 (any defect),
// at most `edge_bound` edges, decorations drawn from the alphabet
// {s_1..s_{n_s}, hol_1..hol_g, ahol_1..ahol_g}. Zero patterns excluded.
std::vector<CanonPtr> enumerate_all_connected(int n_s, int genus, int edge_bound);

// decoration multisets of a given size over the alphabet
std::vector<std::vector<Label>> decoration_multisets(int n_s, int genus, int size);

// connected graphs over a fixed internal valency profile and decoration
// multiset (profile sorted ascending)
std::vector<CanonPtr> enumerate_connected_profile(const std::vector<int>& internal_valencies,
                                                  const std::vector<Label>& decorations,
                                                  bool exclude_zero_pattern,
                                                  bool exclude_odd_auto);

} // namespace hodgecorr
