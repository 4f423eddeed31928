#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace hodgecorr {

enum class LabelKind : int { S = 0, Hol = 1, AHol = 2 };

// External-vertex decoration: an S-point s_i, a holomorphic basis form
// hol_i, or its symplectic dual ahol_i.
struct Label {
    LabelKind kind = LabelKind::S;
    int index = 1; // 1-based

    auto operator<=>(const Label&) const = default;

    // dualization: s_i -> s_i, hol_i <-> ahol_i
    Label dual() const {
        switch (kind) {
        case LabelKind::S: return *this;
        case LabelKind::Hol: return {LabelKind::AHol, index};
        case LabelKind::AHol: return {LabelKind::Hol, index};
        }
        throw std::logic_error("bad label kind");
    }

    bool is_s() const { return kind == LabelKind::S; }
    bool is_special() const { return kind != LabelKind::S; }

    std::string str() const {
        switch (kind) {
        case LabelKind::S: return "s" + std::to_string(index);
        case LabelKind::Hol: return "a" + std::to_string(index);
        case LabelKind::AHol: return "a" + std::to_string(index) + "*";
        }
        return "?";
    }
};

inline Label s_label(int i) { return {LabelKind::S, i}; }
inline Label hol_label(int i) { return {LabelKind::Hol, i}; }
inline Label ahol_label(int i) { return {LabelKind::AHol, i}; }

// Symplectic / inner-product pairing on decorations:
//   <s_i, s_j> = delta_ij, <hol_i, ahol_j> = delta_ij, <ahol_j, hol_i> = -delta_ij,
// all other pairings vanish.
inline int label_pairing(const Label& a, const Label& b) {
    if (a.kind == LabelKind::S && b.kind == LabelKind::S)
        return a.index == b.index ? 1 : 0;
    if (a.kind == LabelKind::Hol && b.kind == LabelKind::AHol)
        return a.index == b.index ? 1 : 0;
    if (a.kind == LabelKind::AHol && b.kind == LabelKind::Hol)
        return a.index == b.index ? -1 : 0;
    return 0;
}

} // namespace hodgecorr
