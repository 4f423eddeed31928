#pragma once

#include <map>
#include <string>
#include <vector>

#include "hodgecorr/graph_vector.hpp"
#include "hodgecorr/label.hpp"
#include "hodgecorr/rational.hpp"

namespace hodgecorr {

// rotation class of a nonempty letter sequence, stored as the minimal
// rotation; aut_count = number of rotations fixing the word
struct CyclicWord {
    std::vector<Label> letters;
    int aut_count = 1;

    size_t size() const { return letters.size(); }
    bool operator<(const CyclicWord& o) const { return letters < o.letters; }
    bool operator==(const CyclicWord& o) const { return letters == o.letters; }
    std::string str() const;
};

CyclicWord cyclic_normalize(const std::vector<Label>& letters);

using WordVector = std::map<CyclicWord, Rational>;

// sum over (p,q)-shuffles sigma of C(v0 (x) v_{sigma(1)} (x) ... ), where
// sigma runs over permutations increasing on the first p and last q slots
WordVector shuffle_relator(const Label& v0, const std::vector<Label>& block1,
                           const std::vector<Label>& block2);

// wedge pairs of cyclic words, antisymmetrized on insertion
class WordPairVector {
public:
    void add(const CyclicWord& a, const CyclicWord& b, const Rational& c);
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<CyclicWord, CyclicWord>, Rational>& terms() const {
        return terms_;
    }
    WordPairVector& operator+=(const WordPairVector& o);
    WordPairVector& operator-=(const WordPairVector& o);

private:
    std::map<std::pair<CyclicWord, CyclicWord>, Rational> terms_;
};

// delta = delta_S* + delta_Cas on cyclic words; delta_Cas vanishes at genus 0
WordPairVector cobracket(const CyclicWord& w, int genus);
WordPairVector cobracket_s(const CyclicWord& w);
WordPairVector cobracket_cas(const CyclicWord& w, int genus);

// planar trivalent tree with boundary cyclic order w; the edge order of the
// stored graph is the canonical boundary-walk orientation
struct PlanarTree {
    OrientedGraph tree;
    std::vector<int> leg_external_vertex;  // boundary position -> vertex id
};

// all planar trivalent trees with the given boundary word (Catalan many);
// length 2 gives the single bare edge
std::vector<PlanarTree> planar_tree_expansion(const CyclicWord& w);

// recompute the boundary-walk orientation rooted at the given leg; the
// parity relative to the stored order must not depend on the root
std::vector<int> boundary_walk_order(const PlanarTree& t, int root_leg);

// the expansion map F: w -> sum_T (T, W; Or_T) in the graph complex
GraphVector planar_expansion_vector(const CyclicWord& w);

} // namespace hodgecorr
