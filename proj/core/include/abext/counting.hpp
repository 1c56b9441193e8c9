#pragma once

#include <functional>
#include <string>

#include "abext/character.hpp"

namespace abext {

// Multiplicative invariant C(chi) = prod_p p^{c(chi_p)} built from tame
// weights (constant on divisions, positive off the identity) and wild
// weights at primes dividing |G|.  Wild weight procedures must be pure and
// determined by the unit part of the spec they receive; the enumeration and
// fast-counting engines rely on that.
struct CountingFunction {
    FiniteAbelianGroup group;
    std::string name;
    std::vector<Division> divs;          // divisions(group), fixed order
    std::vector<i64> tame_weight;        // per division
    std::vector<i64> weight_by_element;  // encoded element -> weight (0 at identity)
    std::function<i64(const LocalSpec&)> wild_weight;

    i64 min_weight() const;                  // m
    std::vector<i64> min_weight_elements() const; // the set M (encoded, no identity)
    i64 tame_weight_of(const GroupElement& g) const {
        return weight_by_element[group.encode(g)];
    }
    bool is_wild(u64 p) const { return group.order() % static_cast<i64>(p) == 0; }
};

CountingFunction conductor_counting(const FiniteAbelianGroup& G);
CountingFunction radical_counting(const FiniteAbelianGroup& G);
CountingFunction discriminant_counting(const FiniteAbelianGroup& G);
// Artin conductor for the 1-dimensional representation multiset given by
// dual characters; throws if the representation is not faithful.
CountingFunction artin_counting(const FiniteAbelianGroup& G, const std::vector<DualCharacter>& reps);

struct FairnessReport {
    i64 m = 0;
    std::vector<i64> min_set; // encoded
    bool fair = false;
    i64 witness_r = 0; // an r with <M n G_r> != G_r when unfair
};

FairnessReport fairness(const CountingFunction& C);

// C(chi), clamped at `cap` (values >= cap all return cap); chi primitive
u128 evaluate(const CountingFunction& C, const GlobalCharacter& chi, u128 cap = U128_MAX);

// maximal conductor exponent of a character (Z/p^k)^x -> G over Q:
// 1 at tame p, v_p(exp G)+1 at odd p | |G|, v_2(exp G)+2 at p=2
int wild_level_cap(const FiniteAbelianGroup& G, u64 p);

// census used by the multiplicative engines: at tame p, the number of local
// characters per weight, restricted to images in `within` when given
struct LocalTerm {
    i64 weight;
    i64 count;
};
std::vector<LocalTerm> tame_terms(const CountingFunction& C, u64 p, const Subgroup* within = nullptr);

// every character (Z/p^cap)^x -> G (or -> within) at a wild prime, with its
// conductor exponent and weight; the trivial character is included
struct WildCharacter {
    LocalCharacter chi;
    int cond_exp;
    i64 weight;
};
std::vector<WildCharacter> wild_characters(const CountingFunction& C, u64 p,
                                           const Subgroup* within = nullptr);

} // namespace abext
