#pragma once

#include <optional>
#include <vector>

#include "abext/group.hpp"
#include "abext/units.hpp"

namespace abext {

// Character of (Z/p^level)^x valued in G, stored by the images of the
// canonical unit-group generators (see UnitGroupStructure).
struct LocalCharacter {
    u64 p = 0;
    int level = 0;
    std::vector<GroupElement> images;

    bool is_trivial() const {
        for (const auto& g : images)
            if (!g.is_zero()) return false;
        return true;
    }
    u64 modulus() const;
    // image of the unit x (coprime to p) under the character
    GroupElement eval(const FiniteAbelianGroup& G, u64 x) const;
    bool operator==(const LocalCharacter& o) const {
        return p == o.p && level == o.level && images == o.images;
    }
};

// least k' <= level such that the character factors through (Z/p^k')^x;
// 0 iff trivial
int local_conductor_exponent(const FiniteAbelianGroup& G, const LocalCharacter& c);

// re-express c as a character of (Z/p^new_level)^x; new_level must be at
// least the conductor exponent of c
LocalCharacter restrict_level(const FiniteAbelianGroup& G, const LocalCharacter& c, int new_level);

// A primitive character (Z/f)^x -> G, stored by its local components at the
// supported primes.  Each component's level equals its conductor exponent,
// so f = prod p^level and the representation is unique.
struct GlobalCharacter {
    FiniteAbelianGroup group;
    std::vector<LocalCharacter> components; // sorted by p, all non-trivial

    u64 conductor() const;
    const LocalCharacter* component_at(u64 p) const;
    // chi(x) for gcd(x, f) = 1, via CRT over the components
    GroupElement evaluate(u64 x) const;
    // chi(x) ignoring the component at `skip` (the prime-to-skip part)
    GroupElement evaluate_skipping(u64 x, u64 skip) const;
    bool operator==(const GlobalCharacter& o) const {
        return group == o.group && components == o.components;
    }
};

// Validates component sorting, primitivity (level == conductor exponent)
// and non-trivial components; throws std::invalid_argument otherwise.
void validate_primitive(const GlobalCharacter& chi);

constexpr u64 PLACE_INFINITY = 0; // place 0 denotes the real place

// G-structured local data at one place: the unit-part character (inertia)
// plus the Frobenius filler.  Convention: for finite p, frob is chi
// evaluated at p through the prime-to-p components (Dirichlet normalization
// chi(p mod f) at unramified p); at the real place frob = chi(-1).
struct LocalSpec {
    u64 place = PLACE_INFINITY;
    LocalCharacter unit_part; // empty images at the real place
    GroupElement frob;

    bool is_real_place() const { return place == PLACE_INFINITY; }
    bool ramified() const { return !unit_part.is_trivial(); }
    bool operator==(const LocalSpec& o) const {
        return place == o.place && unit_part == o.unit_part && frob == o.frob;
    }
};

LocalSpec localize(const GlobalCharacter& chi, u64 place);

struct SplittingType {
    i64 e = 1;          // ramification index |I|
    i64 f = 1;          // residue degree [D:I]
    i64 num_primes = 1; // [G:D]
    bool operator==(const SplittingType& o) const {
        return e == o.e && f == o.f && num_primes == o.num_primes;
    }
};

SplittingType splitting_type(const FiniteAbelianGroup& G, const LocalSpec& s);

bool is_surjective(const GlobalCharacter& chi);

// conductor exponent at p of the composite psi(chi_p)
int composed_conductor_exponent(const FiniteAbelianGroup& G, const LocalCharacter& c,
                                const DualCharacter& psi);

// conductor exponent of a character of (Z/p^level)^x from the orders of its
// values on the canonical generators (shared by the G-valued and the
// complex-valued character code)
int conductor_exponent_from_value_orders(u64 p, int level, const std::vector<i64>& orders);

// |disc| of the extension cut out by chi, as the product over the dual
// group of the conductors of psi composed with chi
std::vector<std::pair<u64, i64>> discriminant_exponents(const GlobalCharacter& chi);
u128 discriminant(const GlobalCharacter& chi); // throws on 128-bit overflow

} // namespace abext
