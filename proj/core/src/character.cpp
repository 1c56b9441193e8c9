#include "abext/character.hpp"

#include <algorithm>
#include <numeric>

namespace abext {

namespace {

u64 ipow64(u64 b, int e) {
    u64 r = 1;
    while (e--) {
        if (r > ~u64{0} / b) throw std::overflow_error("prime power overflow");
        r *= b;
    }
    return r;
}

int v_adic(u64 p, i64 t) {
    int v = 0;
    while (t % static_cast<i64>(p) == 0) { t /= static_cast<i64>(p); ++v; }
    return v;
}

} // namespace

int conductor_exponent_from_value_orders(u64 p, int level, const std::vector<i64>& orders) {
    if (level == 0 || orders.empty()) return 0;
    if (p != 2) {
        i64 t = orders[0];
        if (t == 1) return 0;
        return v_adic(p, t) + 1;
    }
    if (level == 1) return 0;
    if (level == 2) return orders[0] > 1 ? 2 : 0;
    i64 t5 = orders[1];
    if (t5 > 1) return v_adic(2, t5) + 2;
    return orders[0] > 1 ? 2 : 0;
}

u64 LocalCharacter::modulus() const { return ipow64(p, level); }

GroupElement LocalCharacter::eval(const FiniteAbelianGroup& G, u64 x) const {
    if (level == 0) return G.zero();
    const auto& dlogs = discrete_log_cached(modulus(), x);
    if (dlogs.size() != images.size())
        throw std::logic_error("image count does not match unit generator count");
    GroupElement r = G.zero();
    for (std::size_t j = 0; j < images.size(); ++j)
        r = G.add(r, G.smul(static_cast<i64>(dlogs[j]), images[j]));
    return r;
}

int local_conductor_exponent(const FiniteAbelianGroup& G, const LocalCharacter& c) {
    std::vector<i64> orders;
    orders.reserve(c.images.size());
    for (const auto& img : c.images) orders.push_back(element_order(G, img));
    return conductor_exponent_from_value_orders(c.p, c.level, orders);
}

LocalCharacter restrict_level(const FiniteAbelianGroup& G, const LocalCharacter& c, int new_level) {
    if (new_level > c.level) throw std::invalid_argument("cannot raise a character's level");
    if (new_level < local_conductor_exponent(G, c))
        throw std::invalid_argument("level below the conductor exponent");
    LocalCharacter r;
    r.p = c.p;
    r.level = new_level;
    if (new_level == 0) return r;
    // the value on a generator of the smaller quotient is the value on any
    // integer lift, because c factors through (Z/p^new_level)^x
    u64 small = 1;
    for (int i = 0; i < new_level; ++i) small *= c.p;
    for (const auto& f : unit_group(small).factors())
        r.images.push_back(c.eval(G, f.generator));
    return r;
}

int composed_conductor_exponent(const FiniteAbelianGroup& G, const LocalCharacter& c,
                                const DualCharacter& psi) {
    std::vector<i64> orders;
    orders.reserve(c.images.size());
    for (const auto& img : c.images) orders.push_back(psi.value_order(G, img));
    return conductor_exponent_from_value_orders(c.p, c.level, orders);
}

u64 GlobalCharacter::conductor() const {
    u64 f = 1;
    for (const auto& c : components) {
        u64 m = c.modulus();
        if (f > static_cast<u64>(-1) / m) throw std::overflow_error("conductor overflow");
        f *= m;
    }
    return f;
}

const LocalCharacter* GlobalCharacter::component_at(u64 p) const {
    for (const auto& c : components)
        if (c.p == p) return &c;
    return nullptr;
}

GroupElement GlobalCharacter::evaluate(u64 x) const {
    return evaluate_skipping(x, PLACE_INFINITY);
}

GroupElement GlobalCharacter::evaluate_skipping(u64 x, u64 skip) const {
    GroupElement r = group.zero();
    for (const auto& c : components) {
        if (c.p == skip) continue;
        r = group.add(r, c.eval(group, x % c.modulus()));
    }
    return r;
}

void validate_primitive(const GlobalCharacter& chi) {
    u64 prev = 0;
    for (const auto& c : chi.components) {
        if (c.p <= prev) throw std::invalid_argument("components not sorted by prime");
        prev = c.p;
        if (c.level < 1 || c.is_trivial())
            throw std::invalid_argument("trivial component stored");
        if (local_conductor_exponent(chi.group, c) != c.level)
            throw std::invalid_argument("component level exceeds its conductor exponent");
        for (const auto& img : c.images)
            if (img.coords.size() != chi.group.rank())
                throw std::invalid_argument("image rank mismatch");
    }
}

LocalSpec localize(const GlobalCharacter& chi, u64 place) {
    LocalSpec s;
    s.place = place;
    if (place == PLACE_INFINITY) {
        s.unit_part = LocalCharacter{0, 0, {}};
        s.frob = chi.conductor() > 1 ? chi.evaluate(chi.conductor() - 1)
                                     : chi.group.zero();
        return s;
    }
    const LocalCharacter* c = chi.component_at(place);
    s.unit_part = c ? *c : LocalCharacter{place, 0, {}};
    s.frob = chi.evaluate_skipping(place, place);
    return s;
}

SplittingType splitting_type(const FiniteAbelianGroup& G, const LocalSpec& s) {
    Subgroup inertia = subgroup_generated(G, s.unit_part.images);
    auto gens = s.unit_part.images;
    gens.push_back(s.frob);
    Subgroup decomp = subgroup_generated(G, gens);
    SplittingType st;
    st.e = inertia.order();
    st.f = decomp.order() / inertia.order();
    st.num_primes = G.order() / decomp.order();
    return st;
}

bool is_surjective(const GlobalCharacter& chi) {
    std::vector<GroupElement> gens;
    for (const auto& c : chi.components)
        for (const auto& img : c.images) gens.push_back(img);
    return subgroup_generated(chi.group, gens).order() == chi.group.order();
}

std::vector<std::pair<u64, i64>> discriminant_exponents(const GlobalCharacter& chi) {
    auto duals = dual_characters(chi.group);
    std::vector<std::pair<u64, i64>> out;
    for (const auto& c : chi.components) {
        i64 e = 0;
        for (const auto& psi : duals)
            e += composed_conductor_exponent(chi.group, c, psi);
        out.emplace_back(c.p, e);
    }
    return out;
}

u128 discriminant(const GlobalCharacter& chi) {
    u128 d = 1;
    for (auto [p, e] : discriminant_exponents(chi)) {
        for (i64 i = 0; i < e; ++i) {
            if (d > U128_MAX / p) throw std::overflow_error("discriminant exceeds 128 bits");
            d *= p;
        }
    }
    return d;
}

} // namespace abext
