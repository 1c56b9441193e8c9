#include "abext/viability.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace abext {

namespace {

// Pairing value of one obstruction generator (2^{e} on factor i) with a
// local spec, as a numerator over N = exp(G).  At v=2 the generator is a
// pure uniformizer power, so only the Frobenius filler enters; at odd
// finite v it is a unit and only the unit part enters; the real place never
// contributes since the generator is positive.  The stored filler is the
// Dirichlet-normalized one (inverse of the local uniformizer image), which
// flips the sign of the pairing; triviality of the pairing is unaffected.
i64 pairing_num(const FiniteAbelianGroup& G, const ObstructionGenerator& gen,
                const LocalSpec& spec) {
    const i64 N = G.exponent();
    const i64 n_i = G.factors()[gen.factor];
    if (spec.is_real_place()) return 0;
    i64 coord;
    if (spec.place == 2) {
        coord = (n_i - spec.frob.coords[gen.factor]) % n_i; // inverse convention
        coord = (coord * (gen.two_exponent % n_i)) % n_i;
    } else {
        GroupElement img = spec.unit_part.level == 0
                               ? G.zero()
                               : spec.unit_part.eval(G, 2 % spec.unit_part.modulus());
        coord = (img.coords[gen.factor] * (gen.two_exponent % n_i)) % n_i;
    }
    return (coord * (N / n_i)) % N;
}

std::vector<u64> required_places(const FiniteAbelianGroup& G) {
    std::vector<u64> req{2};
    for (auto [p, e] : factorize(static_cast<u64>(G.order()))) {
        (void)e;
        if (p != 2) req.push_back(p);
    }
    req.push_back(PLACE_INFINITY);
    return req;
}

} // namespace

std::vector<u64> s0_places(const FiniteAbelianGroup& G) {
    // over Q: s_K = 2 and none of -1, 2, -2 are squares, so the only
    // question is whether 2^{s_K+1} = 8 divides the exponent
    if (G.exponent() % 8 == 0) return {2};
    return {};
}

ObstructionData obstruction_data(const CountingFunction& C) {
    auto rep = fairness(C);
    if (!rep.fair)
        throw std::invalid_argument("obstruction group is only defined for fair counting functions");
    const auto& G = C.group;
    ObstructionData data;
    data.s_k = 2;
    data.b0 = 2;
    data.s0 = s0_places(G);
    for (std::size_t i = 0; i < G.rank(); ++i)
        if (G.factors()[i] % 8 == 0)
            data.generators.push_back({i, G.factors()[i] / 2, 0});
    return data;
}

std::vector<LocalSpec> all_local_specs(const FiniteAbelianGroup& G, u64 p) {
    if (p == PLACE_INFINITY) {
        std::vector<LocalSpec> out;
        for (i64 enc = 0; enc < G.order(); ++enc) {
            GroupElement g = G.decode(enc);
            if (element_order(G, g) > 2) continue;
            out.push_back({PLACE_INFINITY, LocalCharacter{0, 0, {}}, g});
        }
        return out;
    }
    CountingFunction C = conductor_counting(G); // weights unused, character census only
    std::vector<LocalCharacter> units;
    if (C.is_wild(p)) {
        for (auto& wc : wild_characters(C, p)) units.push_back(std::move(wc.chi));
    } else {
        units.push_back(LocalCharacter{p, 0, {}});
        for (const auto& d : C.divs) {
            if ((static_cast<i64>(p) - 1) % d.order != 0) continue;
            for (i64 enc : d.elements)
                units.push_back(LocalCharacter{p, 1, {G.decode(enc)}});
        }
    }
    std::vector<LocalSpec> out;
    for (const auto& u : units)
        for (i64 enc = 0; enc < G.order(); ++enc)
            out.push_back({p, u, G.decode(enc)});
    return out;
}

bool viability_exact(const FiniteAbelianGroup& G, const CountingFunction& C,
                     const std::vector<LocalSpec>& specs) {
    ObstructionData data = obstruction_data(C);
    if (data.generators.empty()) return true;
    for (u64 req : required_places(G)) {
        bool have = false;
        for (const auto& s : specs) have = have || s.place == req;
        if (!have) throw std::invalid_argument("viability_exact needs a spec at every required place");
    }
    const i64 N = G.exponent();
    for (const auto& gen : data.generators) {
        i64 total = 0;
        for (const auto& s : specs) total = (total + pairing_num(G, gen, s)) % N;
        if (total != 0) return false;
    }
    return true;
}

bool viability_partial(const FiniteAbelianGroup& G, const CountingFunction& C,
                       const std::vector<LocalSpec>& specs) {
    ObstructionData data = obstruction_data(C);
    if (data.generators.empty()) return true;
    const i64 N = G.exponent();
    const std::size_t h = data.generators.size();

    std::vector<i64> fixed(h, 0);
    std::set<u64> have;
    for (const auto& s : specs) {
        if (!have.insert(s.place).second)
            throw std::invalid_argument("duplicate place in specification");
        for (std::size_t t = 0; t < h; ++t)
            fixed[t] = (fixed[t] + pairing_num(G, data.generators[t], s)) % N;
    }

    // quantify over completions at the missing required places
    std::vector<std::vector<std::vector<i64>>> choice_sets;
    for (u64 req : required_places(G)) {
        if (have.count(req)) continue;
        std::set<std::vector<i64>> vecs;
        for (const auto& s : all_local_specs(G, req)) {
            std::vector<i64> v(h);
            for (std::size_t t = 0; t < h; ++t) v[t] = pairing_num(G, data.generators[t], s);
            vecs.insert(std::move(v));
        }
        choice_sets.push_back({vecs.begin(), vecs.end()});
    }

    std::vector<std::size_t> pick(choice_sets.size(), 0);
    while (true) {
        bool all_zero = true;
        for (std::size_t t = 0; t < h && all_zero; ++t) {
            i64 total = fixed[t];
            for (std::size_t c = 0; c < choice_sets.size(); ++c)
                total = (total + choice_sets[c][pick[c]][t]) % N;
            all_zero = total == 0;
        }
        if (all_zero) return true;
        std::size_t j = 0;
        while (j < choice_sets.size() && ++pick[j] == choice_sets[j].size()) pick[j++] = 0;
        if (j == choice_sets.size()) break;
    }
    return false;
}

ViabilityVerdict viability_search(const FiniteAbelianGroup& G,
                                  const std::vector<LocalSpec>& specs, u64 bound) {
    if (G.exponent() % 8 != 0)
        return {ViabilityVerdict::Viable, std::nullopt};
    bool touches_two = false;
    for (const auto& s : specs) touches_two = touches_two || s.place == 2;
    if (!touches_two)
        return {ViabilityVerdict::Viable, std::nullopt};

    CountingFunction C = conductor_counting(G);
    EnumerationQuery q;
    q.group = G;
    q.counting = &C;
    q.bound = bound;
    q.pinned = specs;
    q.surjective_only = true;
    auto found = find_any_character(q);
    if (found) return {ViabilityVerdict::ViableWithWitness, std::move(found->second)};
    return {ViabilityVerdict::NoWitnessBelowBound, std::nullopt};
}

std::vector<SpecVerdict> viable_specs_at_2(const FiniteAbelianGroup& G, u64 search_bound) {
    CountingFunction C = conductor_counting(G);
    auto specs = all_local_specs(G, 2);

    if (G.exponent() % 8 != 0) {
        // no obstruction: everything at 2 is viable, no search needed
        std::vector<SpecVerdict> out;
        for (const auto& s : specs)
            out.push_back({s, true, {ViabilityVerdict::Viable, std::nullopt}});
        return out;
    }

    // one enumeration pass, bucketing witnesses by their localization at 2
    std::map<std::vector<i64>, GlobalCharacter> witness;
    auto key_of = [&](const LocalSpec& s) {
        std::vector<i64> key{s.unit_part.level};
        for (const auto& img : s.unit_part.images) key.push_back(G.encode(img));
        key.push_back(G.encode(s.frob));
        return key;
    };
    EnumerationQuery q;
    q.group = G;
    q.counting = &C;
    q.bound = search_bound;
    for_each_character(q, [&](const GlobalCharacter& chi, u128) {
        auto key = key_of(localize(chi, 2));
        witness.emplace(key, chi); // keeps the first (smallest support DFS order)
    });

    std::vector<SpecVerdict> out;
    for (const auto& s : specs) {
        SpecVerdict v{s, viability_partial(G, C, {s}), {ViabilityVerdict::Viable, std::nullopt}};
        auto it = witness.find(key_of(s));
        if (it != witness.end())
            v.search = {ViabilityVerdict::ViableWithWitness, it->second};
        else
            v.search = {ViabilityVerdict::NoWitnessBelowBound, std::nullopt};
        bool found = v.search.status == ViabilityVerdict::ViableWithWitness;
        if (found != v.viable)
            throw std::logic_error("viability: search and exact criterion disagree at 2 for " +
                                   G.str() + " at bound " + std::to_string(search_bound));
        out.push_back(std::move(v));
    }
    return out;
}

Interval viable_spec_weight_sum_at_2(const CountingFunction& C) {
    const auto& G = C.group;
    if (s0_places(G).empty()) return Interval::exact(1.0);
    const i64 m = C.min_weight();
    Interval sum = Interval::exact(0.0);
    for (const auto& s : all_local_specs(G, 2)) {
        if (!viability_partial(G, C, {s})) continue;
        i64 c = C.wild_weight(s);
        Interval term = int_exp(int_log(Interval::exact(2.0)) *
                                (Interval::exact(-static_cast<double>(c)) /
                                 Interval::exact(static_cast<double>(m))));
        sum = sum + term;
    }
    return sum;
}

} // namespace abext
