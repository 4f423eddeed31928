#include "hodgecorr/effective_action.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hodgecorr/differentials.hpp"
#include "hodgecorr/enumerate.hpp"

namespace hodgecorr {

TruncatedAction build_action(const ActionContext& ctx, int cutoff) {
    TruncatedAction action;
    action.ctx = ctx;
    action.cutoff = cutoff;
    for (int n_ext = 1; n_ext <= 2 * cutoff; ++n_ext) {
        for (auto& deco : decoration_multisets(ctx.n_s, ctx.genus, n_ext)) {
            EnumOptions opts;
            opts.decorations = deco;
            opts.loop_bound = 1;
            opts.edge_bound = cutoff;
            opts.exclude_zero_pattern = true;
            opts.exclude_odd_auto = true;
            for (auto& g : enumerate_graphs(opts)) {
                ActionTerm t;
                t.first = g;
                t.second = GraphVector::single(canonical_dual(*g));
                if (t.second.is_zero()) continue;
                t.coeff = Rational(1) / g->aut_count;
                t.hbar = g->stats.loops;
                action.terms.push_back(std::move(t));
            }
        }
    }
    return action;
}

namespace {

struct Key {
    Monomial first;
    int hbar;
    bool operator<(const Key& o) const {
        if (hbar != o.hbar) return hbar < o.hbar;
        return monomial_compare(first, o.first) < 0;
    }
};

bool has_equal_s_pair(const Monomial& m) {
    std::vector<Label> s;
    for (const auto& p : m.parts)
        for (const auto& lab : p->decorations)
            if (lab.is_s()) s.push_back(lab);
    std::sort(s.begin(), s.end());
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) return true;
    return false;
}

bool has_cas_pair(const Monomial& m, int genus) {
    if (genus <= 0) return false;
    std::vector<Label> sp;
    for (const auto& p : m.parts)
        for (const auto& lab : p->decorations)
            if (lab.is_special()) sp.push_back(lab);
    for (size_t i = 0; i < sp.size(); ++i)
        for (size_t j = i + 1; j < sp.size(); ++j)
            if (label_pairing(sp[i], sp[j]) != 0) return true;
    return false;
}

} // namespace

std::vector<QmeComponent> qme_residual(const TruncatedAction& a, IhxStore& store) {
    std::map<Key, GraphVector> acc;
    const int genus = a.ctx.genus;

    // (d (x) Id) s
    for (const auto& t : a.terms) {
        GraphVector first = GraphVector::single({t.first, 1});
        GraphVector dv = d_total(first, genus);
        for (const auto& [m, q] : dv.terms()) {
            GraphVector add = t.second;
            add *= t.coeff * q;
            acc[{m, t.hbar}] += add;
        }
    }
    // - 1/2 [s, s]
    for (const auto& t1 : a.terms) {
        GraphVector f1 = GraphVector::single({t1.first, 1});
        for (const auto& t2 : a.terms) {
            GraphVector f2 = GraphVector::single({t2.first, 1});
            GraphVector w12 = wedge(f1, f2);
            if (w12.is_zero()) continue;
            GraphVector br = dual_bracket(t1.second, t2.second, nullptr);
            if (br.is_zero()) continue;
            br *= t1.coeff * t2.coeff * Rational(1, 2);
            for (const auto& [m, q] : w12.terms()) {
                GraphVector add = br;
                add *= q;
                acc[{m, t1.hbar + t2.hbar}] -= add;
            }
        }
    }
    // - hbar (Id (x) delta) s
    for (const auto& t : a.terms) {
        GraphVector dd = dual_delta(t.second, nullptr);
        if (dd.is_zero()) continue;
        dd *= t.coeff;
        Monomial m;
        m.parts = {t.first};
        acc[{m, t.hbar + 1}] -= dd;
    }

    std::vector<QmeComponent> out;
    for (auto& [key, vec] : acc) {
        QmeComponent comp;
        comp.first = key.first;
        comp.hbar = key.hbar;
        const int edges = key.first.total_edges();
        int defect = 0;
        for (const auto& p : key.first.parts) defect += p->stats.defect;
        bool safe = key.hbar <= 1;
        if (has_cas_pair(key.first, genus) && edges - 1 > a.cutoff) safe = false;
        if (has_equal_s_pair(key.first) && edges + 1 > a.cutoff) safe = false;
        if (defect > 0 && edges + 1 > a.cutoff) safe = false;
        // a connected component also receives (Id (x) delta) terms, which
        // need the component itself inside the truncation
        if (key.first.parts.size() == 1 &&
            (has_cas_pair(key.first, genus) || has_equal_s_pair(key.first)) &&
            edges > a.cutoff)
            safe = false;
        if (!safe) {
            comp.status = QmeComponent::Status::Skipped;
            out.push_back(std::move(comp));
            continue;
        }
        GraphVector reduced = store.reduce(vec);
        if (reduced.is_zero()) {
            comp.status = QmeComponent::Status::Zero;
        } else {
            comp.status = QmeComponent::Status::NonZero;
            comp.residual = std::move(reduced);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::string qme_report_json(const std::vector<QmeComponent>& comps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : comps) {
        nlohmann::json j;
        j["component"] = c.first.str();
        j["hbar"] = c.hbar;
        j["status"] = c.status == QmeComponent::Status::Zero      ? "zero"
                      : c.status == QmeComponent::Status::NonZero ? "nonzero"
                                                                  : "skipped";
        if (c.status == QmeComponent::Status::NonZero)
            j["witness"] = nlohmann::json::parse(c.residual.to_json());
        arr.push_back(j);
    }
    return arr.dump(2);
}

} // namespace hodgecorr
