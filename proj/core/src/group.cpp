#include "abext/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace abext {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<i64> factors)
    : factors_(std::move(factors)) {
    order_ = 1;
    exponent_ = 1;
    for (i64 n : factors_) {
        if (n < 2) throw std::invalid_argument("cyclic factor orders must be >= 2");
        if (order_ > (static_cast<i64>(1) << 40) / n)
            throw std::invalid_argument("group order too large");
        order_ *= n;
        exponent_ = std::lcm(exponent_, n);
    }
}

GroupElement FiniteAbelianGroup::make(std::vector<i64> coords) const {
    if (coords.size() != rank()) throw std::invalid_argument("coordinate count mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i] %= factors_[i];
        if (coords[i] < 0) coords[i] += factors_[i];
    }
    return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < rank(); ++i) {
        r.coords[i] += b.coords[i];
        if (r.coords[i] >= factors_[i]) r.coords[i] -= factors_[i];
    }
    return r;
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < rank(); ++i)
        if (r.coords[i] != 0) r.coords[i] = factors_[i] - r.coords[i];
    return r;
}

GroupElement FiniteAbelianGroup::smul(i64 e, const GroupElement& a) const {
    GroupElement r = zero();
    for (std::size_t i = 0; i < rank(); ++i) {
        i64 m = e % factors_[i];
        if (m < 0) m += factors_[i];
        r.coords[i] = (a.coords[i] * m) % factors_[i];
    }
    return r;
}

i64 FiniteAbelianGroup::encode(const GroupElement& a) const {
    i64 idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + a.coords[i];
    return idx;
}

GroupElement FiniteAbelianGroup::decode(i64 idx) const {
    GroupElement r = zero();
    for (std::size_t i = rank(); i-- > 0;) {
        r.coords[i] = idx % factors_[i];
        idx /= factors_[i];
    }
    return r;
}

std::string FiniteAbelianGroup::str() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(factors_[i]);
    }
    return s;
}

i64 element_order(const FiniteAbelianGroup& G, const GroupElement& g) {
    i64 r = 1;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        i64 n = G.factors()[i];
        i64 ci = g.coords[i] % n;
        i64 oi = n / std::gcd(n, ci);
        r = std::lcm(r, oi);
    }
    return r;
}

bool Subgroup::contains(i64 enc) const {
    return std::binary_search(elements.begin(), elements.end(), enc);
}

bool Subgroup::contains_all(const Subgroup& other) const {
    return std::includes(elements.begin(), elements.end(),
                         other.elements.begin(), other.elements.end());
}

Subgroup subgroup_generated(const FiniteAbelianGroup& G, const std::vector<GroupElement>& gens) {
    std::set<i64> elems;
    elems.insert(0);
    // close under addition of each generator in turn
    for (const auto& g : gens) {
        if (static_cast<i64>(g.coords.size()) != static_cast<i64>(G.rank()))
            throw std::invalid_argument("generator has wrong rank");
        i64 r = element_order(G, g);
        std::set<i64> next;
        for (i64 e : elems) {
            GroupElement base = G.decode(e);
            GroupElement cur = base;
            for (i64 k = 0; k < r; ++k) {
                next.insert(G.encode(cur));
                cur = G.add(cur, g);
            }
        }
        elems.swap(next);
    }
    Subgroup H;
    H.elements.assign(elems.begin(), elems.end());
    H.generators = gens;
    return H;
}

Subgroup torsion_subgroup(const FiniteAbelianGroup& G, i64 r) {
    if (r < 1) throw std::invalid_argument("torsion level must be >= 1");
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        i64 n = G.factors()[i];
        i64 step = n / std::gcd(n, r);
        if (step != n) {
            GroupElement g = G.zero();
            g.coords[i] = step;
            gens.push_back(g);
        }
    }
    return subgroup_generated(G, gens);
}

std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& G) {
    if (G.order() > 4096)
        throw std::invalid_argument("subgroup lattice enumeration capped at |G| <= 4096");

    std::set<std::vector<i64>> seen;
    std::vector<Subgroup> out;
    Subgroup triv;
    triv.elements = {0};
    seen.insert(triv.elements);
    out.push_back(triv);

    // breadth-first: extend each known subgroup by one new element and close
    for (std::size_t head = 0; head < out.size(); ++head) {
        Subgroup H = out[head]; // copy: out reallocates
        for (i64 enc = 1; enc < G.order(); ++enc) {
            if (H.contains(enc)) continue;
            GroupElement g = G.decode(enc);
            // closure of <H, g>: union of cosets H + k*g
            i64 r = element_order(G, g);
            std::set<i64> elems(H.elements.begin(), H.elements.end());
            GroupElement mult = G.zero();
            for (i64 k = 1; k < r; ++k) {
                mult = G.add(mult, g);
                for (i64 h : H.elements) elems.insert(G.encode(G.add(G.decode(h), mult)));
            }
            std::vector<i64> key(elems.begin(), elems.end());
            if (seen.insert(key).second) {
                Subgroup H2;
                H2.elements = key;
                H2.generators = H.generators;
                H2.generators.push_back(g);
                out.push_back(std::move(H2));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    return out;
}

SubgroupLattice::SubgroupLattice(const FiniteAbelianGroup& G) : subs_(all_subgroups(G)) {
    const std::size_t n = subs_.size();
    // element bitmasks make the n^2 inclusion tests cheap
    const std::size_t words = (static_cast<std::size_t>(G.order()) + 63) / 64;
    masks_.assign(n, std::vector<u64>(words, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (i64 e : subs_[i].elements)
            masks_[i][static_cast<std::size_t>(e) / 64] |= (u64{1} << (e % 64));

    mu_.assign(n, 0);
    // subs_ is sorted by size, so the full group is last; recurse downward:
    // mu(G,G) = 1 and sum over H <= H' <= G of mu(H',G) = 0 for proper H.
    mu_[n - 1] = 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        i64 s = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (leq(i, j)) s += mu_[j];
        mu_[i] = -s;
    }
}

bool SubgroupLattice::leq(std::size_t a, std::size_t b) const {
    for (std::size_t w = 0; w < masks_[a].size(); ++w)
        if ((masks_[a][w] & ~masks_[b][w]) != 0) return false;
    return true;
}

std::size_t SubgroupLattice::index_of(const Subgroup& H) const {
    for (std::size_t i = 0; i < subs_.size(); ++i)
        if (subs_[i].elements == H.elements) return i;
    throw std::invalid_argument("not a subgroup of G");
}

i64 moebius(const FiniteAbelianGroup& G, const Subgroup& H) {
    SubgroupLattice lat(G);
    return lat.moebius_to_top(lat.index_of(H));
}

std::vector<Division> divisions(const FiniteAbelianGroup& G) {
    std::vector<char> done(G.order(), 0);
    std::vector<Division> out;
    for (i64 enc = 1; enc < G.order(); ++enc) {
        if (done[enc]) continue;
        GroupElement g = G.decode(enc);
        i64 r = element_order(G, g);
        Division d;
        d.order = r;
        std::set<i64> elems;
        for (i64 e = 1; e < r + 1; ++e) {
            if (std::gcd(e, r) != 1) continue;
            elems.insert(G.encode(G.smul(e, g)));
        }
        d.elements.assign(elems.begin(), elems.end());
        d.rep = G.decode(d.elements.front());
        for (i64 x : d.elements) done[x] = 1;
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

// DFS over generator images with injectivity pruning on partial subgroups.
i64 count_injective_rec(const FiniteAbelianGroup& H, const FiniteAbelianGroup& G,
                        std::size_t idx, std::map<i64, i64>& partial) {
    if (idx == H.rank()) return 1;
    i64 n = H.factors()[idx];
    i64 total = 0;
    // candidate images: elements killed by n
    for (i64 enc = 0; enc < G.order(); ++enc) {
        GroupElement img = G.decode(enc);
        if (n % element_order(G, img) != 0) continue;
        // extend the partial map from <e_0..e_{idx-1}> to <e_0..e_idx>
        std::map<i64, i64> ext = partial;
        bool ok = true;
        GroupElement step = G.zero();
        GroupElement hstep = H.zero();
        for (i64 k = 1; k < n && ok; ++k) {
            step = G.add(step, img);
            hstep.coords[idx] = k;
            for (const auto& [hsrc, gdst] : partial) {
                GroupElement hsome = H.add(H.decode(hsrc), hstep);
                i64 hk = H.encode(hsome);
                i64 gk = G.encode(G.add(G.decode(gdst), step));
                auto it = ext.find(hk);
                if (it != ext.end()) {
                    // only possible when k wraps: consistency check
                    if (it->second != gk) { ok = false; break; }
                } else {
                    ext.emplace(hk, gk);
                }
            }
        }
        if (!ok) continue;
        // injectivity of the extended map
        std::set<i64> image;
        for (const auto& [hsrc, gdst] : ext) image.insert(gdst);
        if (image.size() != ext.size()) continue;
        total += count_injective_rec(H, G, idx + 1, ext);
    }
    return total;
}

} // namespace

i64 count_injective_homs(const FiniteAbelianGroup& H, const FiniteAbelianGroup& G) {
    std::map<i64, i64> base;
    base.emplace(0, 0);
    return count_injective_rec(H, G, 0, base);
}

i64 DualCharacter::eval_num(const FiniteAbelianGroup& G, const GroupElement& g) const {
    i64 N = G.exponent();
    i64 acc = 0;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        i64 n = G.factors()[i];
        acc = (acc + (coeffs[i] * g.coords[i]) % n * (N / n)) % N;
    }
    return acc;
}

i64 DualCharacter::value_order(const FiniteAbelianGroup& G, const GroupElement& g) const {
    i64 N = G.exponent();
    i64 v = eval_num(G, g);
    return N / std::gcd(N, v);
}

std::vector<DualCharacter> dual_characters(const FiniteAbelianGroup& G) {
    std::vector<DualCharacter> out;
    out.reserve(G.order());
    for (i64 enc = 0; enc < G.order(); ++enc)
        out.push_back(DualCharacter{G.decode(enc).coords});
    return out;
}

namespace {

void partitions_of(int a, int maxpart, std::vector<std::vector<int>>& out,
                   std::vector<int>& cur) {
    if (a == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(a, maxpart); k >= 1; --k) {
        cur.push_back(k);
        partitions_of(a - k, k, out, cur);
        cur.pop_back();
    }
}

} // namespace

std::vector<FiniteAbelianGroup> abelian_groups_up_to(i64 max_order) {
    std::vector<FiniteAbelianGroup> out;
    for (i64 n = 2; n <= max_order; ++n) {
        auto fac = factorize(static_cast<u64>(n));
        // one choice of partition per prime power
        std::vector<std::vector<std::vector<int>>> parts(fac.size());
        for (std::size_t i = 0; i < fac.size(); ++i) {
            std::vector<int> cur;
            partitions_of(fac[i].second, fac[i].second, parts[i], cur);
        }
        std::vector<std::size_t> pick(fac.size(), 0);
        while (true) {
            std::vector<i64> factors;
            for (std::size_t i = 0; i < fac.size(); ++i)
                for (int e : parts[i][pick[i]]) {
                    i64 pe = 1;
                    for (int t = 0; t < e; ++t) pe *= static_cast<i64>(fac[i].first);
                    factors.push_back(pe);
                }
            std::sort(factors.begin(), factors.end());
            out.emplace_back(factors);
            std::size_t j = 0;
            while (j < fac.size() && ++pick[j] == parts[j].size()) pick[j++] = 0;
            if (j == fac.size()) break;
        }
    }
    return out;
}

} // namespace abext
