#include "abext/counting.hpp"

#include <algorithm>
#include <numeric>

namespace abext {

namespace {

CountingFunction make_base(const FiniteAbelianGroup& G, std::string name) {
    CountingFunction C;
    C.group = G;
    C.name = std::move(name);
    C.divs = divisions(G);
    C.tame_weight.assign(C.divs.size(), 0);
    C.weight_by_element.assign(G.order(), 0);
    return C;
}

void fill_element_weights(CountingFunction& C) {
    for (std::size_t d = 0; d < C.divs.size(); ++d) {
        if (C.tame_weight[d] < 1)
            throw std::invalid_argument("tame weights must be positive off the identity");
        for (i64 e : C.divs[d].elements) C.weight_by_element[e] = C.tame_weight[d];
    }
}

} // namespace

i64 CountingFunction::min_weight() const {
    return *std::min_element(tame_weight.begin(), tame_weight.end());
}

std::vector<i64> CountingFunction::min_weight_elements() const {
    i64 m = min_weight();
    std::vector<i64> out;
    for (std::size_t d = 0; d < divs.size(); ++d)
        if (tame_weight[d] == m)
            out.insert(out.end(), divs[d].elements.begin(), divs[d].elements.end());
    std::sort(out.begin(), out.end());
    return out;
}

CountingFunction conductor_counting(const FiniteAbelianGroup& G) {
    CountingFunction C = make_base(G, "conductor");
    std::fill(C.tame_weight.begin(), C.tame_weight.end(), 1);
    fill_element_weights(C);
    FiniteAbelianGroup Gc = G;
    C.wild_weight = [Gc](const LocalSpec& s) -> i64 {
        return local_conductor_exponent(Gc, s.unit_part);
    };
    return C;
}

CountingFunction radical_counting(const FiniteAbelianGroup& G) {
    CountingFunction C = make_base(G, "radical");
    std::fill(C.tame_weight.begin(), C.tame_weight.end(), 1);
    fill_element_weights(C);
    C.wild_weight = [](const LocalSpec& s) -> i64 {
        return s.unit_part.is_trivial() ? 0 : 1;
    };
    return C;
}

CountingFunction discriminant_counting(const FiniteAbelianGroup& G) {
    CountingFunction C = make_base(G, "discriminant");
    for (std::size_t d = 0; d < C.divs.size(); ++d)
        C.tame_weight[d] = G.order() - G.order() / C.divs[d].order;
    fill_element_weights(C);
    auto duals = dual_characters(G);
    FiniteAbelianGroup Gc = G;
    C.wild_weight = [Gc, duals](const LocalSpec& s) -> i64 {
        i64 w = 0;
        for (const auto& psi : duals)
            w += composed_conductor_exponent(Gc, s.unit_part, psi);
        return w;
    };
    return C;
}

CountingFunction artin_counting(const FiniteAbelianGroup& G,
                                const std::vector<DualCharacter>& reps) {
    if (reps.empty()) throw std::invalid_argument("empty representation");
    // faithfulness: the intersection of the kernels must be trivial
    for (i64 enc = 1; enc < G.order(); ++enc) {
        GroupElement g = G.decode(enc);
        bool in_all_kernels = true;
        for (const auto& psi : reps)
            if (!psi.is_trivial_on(G, g)) { in_all_kernels = false; break; }
        if (in_all_kernels)
            throw std::invalid_argument("representation is not faithful; not a counting function");
    }
    CountingFunction C = make_base(G, "artin");
    for (std::size_t d = 0; d < C.divs.size(); ++d) {
        i64 w = 0;
        for (const auto& psi : reps)
            if (!psi.is_trivial_on(G, C.divs[d].rep)) ++w;
        C.tame_weight[d] = w;
    }
    fill_element_weights(C);
    FiniteAbelianGroup Gc = G;
    C.wild_weight = [Gc, reps](const LocalSpec& s) -> i64 {
        i64 w = 0;
        for (const auto& psi : reps)
            w += composed_conductor_exponent(Gc, s.unit_part, psi);
        return w;
    };
    return C;
}

FairnessReport fairness(const CountingFunction& C) {
    FairnessReport rep;
    rep.m = C.min_weight();
    rep.min_set = C.min_weight_elements();
    const auto& G = C.group;
    std::vector<GroupElement> min_elems;
    for (i64 e : rep.min_set) min_elems.push_back(G.decode(e));
    for (i64 r = 1; r <= G.exponent(); ++r) {
        if (G.exponent() % r != 0) continue;
        Subgroup Gr = torsion_subgroup(G, r);
        std::vector<GroupElement> gens;
        for (const auto& g : min_elems)
            if (r % element_order(G, g) == 0) gens.push_back(g);
        if (subgroup_generated(G, gens).order() != Gr.order()) {
            rep.fair = false;
            rep.witness_r = r;
            return rep;
        }
    }
    rep.fair = true;
    return rep;
}

u128 evaluate(const CountingFunction& C, const GlobalCharacter& chi, u128 cap) {
    if (!(chi.group == C.group)) throw std::invalid_argument("group mismatch");
    u128 v = 1;
    for (const auto& comp : chi.components) {
        i64 w;
        if (C.is_wild(comp.p)) {
            w = C.wild_weight(localize(chi, comp.p));
        } else {
            // tame: weight of the division of the generator image
            if (comp.images.size() != 1)
                throw std::logic_error("tame component must have one generator image");
            w = C.weight_by_element[C.group.encode(comp.images[0])];
        }
        u128 f = pow_clamped(comp.p, static_cast<u64>(w), cap);
        if (v > cap / f) return cap;
        v *= f;
        if (v >= cap) return cap;
    }
    return v;
}

int wild_level_cap(const FiniteAbelianGroup& G, u64 p) {
    if (G.order() % static_cast<i64>(p) != 0) return 1;
    int v = 0;
    i64 e = G.exponent();
    while (e % static_cast<i64>(p) == 0) { e /= static_cast<i64>(p); ++v; }
    return p == 2 ? v + 2 : v + 1;
}

std::vector<LocalTerm> tame_terms(const CountingFunction& C, u64 p, const Subgroup* within) {
    const auto& G = C.group;
    std::vector<LocalTerm> terms;
    for (std::size_t d = 0; d < C.divs.size(); ++d) {
        if ((static_cast<i64>(p) - 1) % C.divs[d].order != 0) continue;
        i64 count = 0;
        if (within) {
            for (i64 e : C.divs[d].elements)
                if (within->contains(e)) ++count;
        } else {
            count = static_cast<i64>(C.divs[d].elements.size());
        }
        if (count == 0) continue;
        auto it = std::find_if(terms.begin(), terms.end(),
                               [&](const LocalTerm& t) { return t.weight == C.tame_weight[d]; });
        if (it != terms.end())
            it->count += count;
        else
            terms.push_back({C.tame_weight[d], count});
    }
    std::sort(terms.begin(), terms.end(),
              [](const LocalTerm& a, const LocalTerm& b) { return a.weight < b.weight; });
    return terms;
}

std::vector<WildCharacter> wild_characters(const CountingFunction& C, u64 p,
                                           const Subgroup* within) {
    const auto& G = C.group;
    int cap = wild_level_cap(G, p);
    u64 pk = 1;
    for (int i = 0; i < cap; ++i) pk *= p;
    const auto& U = unit_group(pk);
    const auto& gens = U.blocks()[0].factors; // p^cap is a prime power: one block

    // candidate images per generator: elements killed by the generator order
    std::vector<std::vector<GroupElement>> cands(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        for (i64 enc = 0; enc < G.order(); ++enc) {
            if (within && !within->contains(enc)) continue;
            GroupElement g = G.decode(enc);
            if (static_cast<i64>(gens[j].order) % element_order(G, g) == 0)
                cands[j].push_back(g);
        }
    }

    std::vector<WildCharacter> out;
    std::vector<std::size_t> pick(gens.size(), 0);
    while (true) {
        LocalCharacter chi;
        chi.p = p;
        chi.level = cap;
        for (std::size_t j = 0; j < gens.size(); ++j) chi.images.push_back(cands[j][pick[j]]);
        int ce = local_conductor_exponent(G, chi);
        LocalCharacter normalized = restrict_level(G, chi, ce);
        LocalSpec s;
        s.place = p;
        s.unit_part = normalized;
        s.frob = G.zero();
        out.push_back({normalized, ce, C.wild_weight(s)});
        if (gens.empty()) break;
        std::size_t j = 0;
        while (j < gens.size() && ++pick[j] == cands[j].size()) pick[j++] = 0;
        if (j == gens.size()) break;
    }
    return out;
}

} // namespace abext
