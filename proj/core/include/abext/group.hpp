#pragma once

#include <vector>

#include "abext/arith.hpp"

namespace abext {

struct GroupElement {
    std::vector<i64> coords;

    bool is_zero() const {
        for (i64 c : coords)
            if (c != 0) return false;
        return true;
    }
    bool operator==(const GroupElement& o) const { return coords == o.coords; }
    bool operator<(const GroupElement& o) const { return coords < o.coords; }
};

// G = Z/n1 x ... x Z/nk for a chosen factor list.  Two groups are equal only
// if their factor lists agree; no normalization to invariant factors is done.
// An empty factor list is the trivial group.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() : order_(1), exponent_(1) {}
    explicit FiniteAbelianGroup(std::vector<i64> factors);

    const std::vector<i64>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    i64 order() const { return order_; }
    i64 exponent() const { return exponent_; }

    GroupElement zero() const { return GroupElement{std::vector<i64>(rank(), 0)}; }
    GroupElement make(std::vector<i64> coords) const; // reduces mod n_i
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement smul(i64 e, const GroupElement& a) const;

    // mixed-radix index in [0, order)
    i64 encode(const GroupElement& a) const;
    GroupElement decode(i64 idx) const;

    bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }
    std::string str() const; // "2,4"

private:
    std::vector<i64> factors_;
    i64 order_;
    i64 exponent_;
};

i64 element_order(const FiniteAbelianGroup& G, const GroupElement& g);

struct Subgroup {
    std::vector<i64> elements; // sorted encoded indices, always contains 0
    std::vector<GroupElement> generators;

    i64 order() const { return static_cast<i64>(elements.size()); }
    bool contains(i64 enc) const;
    bool contains_all(const Subgroup& other) const;
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

Subgroup subgroup_generated(const FiniteAbelianGroup& G, const std::vector<GroupElement>& gens);
Subgroup torsion_subgroup(const FiniteAbelianGroup& G, i64 r);

// Every subgroup, by closure of generator extensions; |G| <= 4096 enforced.
std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& G);

// Subgroup lattice with the Moebius function mu(H, G) computed top-down.
class SubgroupLattice {
public:
    explicit SubgroupLattice(const FiniteAbelianGroup& G);

    const std::vector<Subgroup>& subgroups() const { return subs_; }
    i64 moebius_to_top(std::size_t idx) const { return mu_[idx]; }
    std::size_t index_of(const Subgroup& H) const; // throws if not a subgroup
    bool leq(std::size_t a, std::size_t b) const;  // subs_[a] <= subs_[b]

private:
    std::vector<Subgroup> subs_;
    std::vector<std::vector<u64>> masks_;
    std::vector<i64> mu_;
};

i64 moebius(const FiniteAbelianGroup& G, const Subgroup& H);

// A division is the set of invertible multiples {e*x : gcd(e, ord x) = 1}
// of a non-identity element; divisions partition G \ {0} and all members of
// a division share one order.
struct Division {
    GroupElement rep;           // smallest encoded member
    std::vector<i64> elements;  // sorted encoded
    i64 order;
};

std::vector<Division> divisions(const FiniteAbelianGroup& G);

// |Hom_0(H, G)|, the injective homomorphisms from the abstract group H.
i64 count_injective_homs(const FiniteAbelianGroup& H, const FiniteAbelianGroup& G);

// Character of G valued in Q/Z, stored by its exponent vector:
// psi(g) = sum_i a_i g_i / n_i.  eval_num returns the numerator over
// exponent(G), i.e. the value is eval_num/exponent in Q/Z.
struct DualCharacter {
    std::vector<i64> coeffs;

    i64 eval_num(const FiniteAbelianGroup& G, const GroupElement& g) const;
    bool is_trivial_on(const FiniteAbelianGroup& G, const GroupElement& g) const {
        return eval_num(G, g) == 0;
    }
    // order of psi(g) in Q/Z
    i64 value_order(const FiniteAbelianGroup& G, const GroupElement& g) const;
};

std::vector<DualCharacter> dual_characters(const FiniteAbelianGroup& G);

// All abelian groups of order 2..max_order, one factor list per isomorphism
// class (primary decomposition, prime-power factors in increasing order).
std::vector<FiniteAbelianGroup> abelian_groups_up_to(i64 max_order);

} // namespace abext
