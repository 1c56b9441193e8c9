#include "abext/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace abext {

namespace {

struct LocalChoice {
    LocalCharacter chi;
    u128 factor;
};

struct PrimeSite {
    u64 p;
    std::vector<LocalChoice> choices;
    u128 floor_factor;      // lower bound for every factor at this and later sites
    int pinned_choice = -1; // when >= 0, the site must take exactly this choice
};

// largest integer whose m-th power stays below X (1 when there is none)
u64 tame_prime_limit(i64 m, u128 X) {
    if (X <= 2) return 1;
    u64 hi = 2;
    while (pow_clamped(hi, static_cast<u64>(m), X) < X) {
        if (hi > (u64{1} << 33))
            throw std::invalid_argument("enumeration budget too large for the dense prime scan");
        hi *= 2;
    }
    u64 lo = hi / 2;
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        if (pow_clamped(mid, static_cast<u64>(m), X) < X) lo = mid; else hi = mid - 1;
    }
    return lo;
}

// subgroup order generated by images, with a bitmask fast path
i64 generated_order(const FiniteAbelianGroup& G, const std::vector<GroupElement>& gens) {
    if (G.order() <= 64) {
        u64 mask = 1; // identity
        for (const auto& g : gens) {
            i64 ge = G.encode(g);
            if (mask & (u64{1} << ge)) continue;
            u64 cur = mask;
            i64 r = element_order(G, g);
            GroupElement mult = G.zero();
            for (i64 k = 1; k < r; ++k) {
                mult = G.add(mult, g);
                u64 shift = 0;
                for (i64 e = 0; e < G.order(); ++e)
                    if (cur & (u64{1} << e))
                        shift |= u64{1} << G.encode(G.add(G.decode(e), mult));
                mask |= shift;
            }
        }
        return static_cast<i64>(__builtin_popcountll(mask));
    }
    return subgroup_generated(G, gens).order();
}

struct Engine {
    const EnumerationQuery& q;
    const FiniteAbelianGroup& G;
    const CountingFunction& C;
    u128 X;
    std::vector<PrimeSite> pinned_sites;
    std::vector<PrimeSite> free_sites;
    u128 pinned_factor = 1;
    bool impossible = false;
    std::vector<const LocalSpec*> frob_pins; // pins whose frob must be re-checked at emit

    explicit Engine(const EnumerationQuery& query)
        : q(query), G(query.group), C(*query.counting), X(query.bound) {
        if (!query.counting) throw std::invalid_argument("query needs a counting function");
        if (!(C.group == G)) throw std::invalid_argument("counting function group mismatch");
        build();
    }

    static bool place_listed(const std::vector<u64>& v, u64 p) {
        return std::find(v.begin(), v.end(), p) != v.end();
    }

    void build() {
        // validate pins
        std::set<u64> seen;
        for (const auto& s : q.pinned) {
            if (!seen.insert(s.place).second)
                throw std::invalid_argument("duplicate pinned place");
            if (place_listed(q.unramified_at, s.place))
                throw std::invalid_argument("place both pinned and forced unramified");
        }
        if (X <= 1) { impossible = true; return; }

        const i64 m = C.min_weight();

        // largest prime that can carry tame ramification under the budget
        const u64 max_tame = tame_prime_limit(m, X);

        std::map<u64, const LocalSpec*> pin_at;
        for (const auto& s : q.pinned) pin_at[s.place] = &s;

        auto add_site = [&](PrimeSite&& site) {
            auto it = pin_at.find(site.p);
            if (it != pin_at.end()) {
                if (it->second->unit_part.is_trivial()) return; // forced unramified
                const LocalCharacter& want = it->second->unit_part;
                int found = -1;
                for (std::size_t i = 0; i < site.choices.size(); ++i)
                    if (site.choices[i].chi == want) { found = static_cast<int>(i); break; }
                if (found < 0) { impossible = true; return; }
                site.pinned_choice = found;
                pinned_sites.push_back(std::move(site));
            } else if (!site.choices.empty()) {
                free_sites.push_back(std::move(site));
            }
        };

        // wild sites
        for (auto [p, e] : factorize(static_cast<u64>(G.order()))) {
            (void)e;
            if (place_listed(q.unramified_at, p)) continue;
            PrimeSite site;
            site.p = p;
            for (auto& wc : wild_characters(C, p)) {
                if (wc.cond_exp == 0) continue;
                u128 f = pow_clamped(p, static_cast<u64>(wc.weight), X);
                if (f >= X) continue;
                site.choices.push_back({std::move(wc.chi), f});
            }
            site.floor_factor = pow_clamped(p, static_cast<u64>(m), X);
            add_site(std::move(site));
        }

        // tame sites
        for (u32 p : primes_up_to(max_tame)) {
            if (C.is_wild(p)) continue;
            if (place_listed(q.unramified_at, p)) continue;
            PrimeSite site;
            site.p = p;
            for (std::size_t d = 0; d < C.divs.size(); ++d) {
                if ((static_cast<i64>(p) - 1) % C.divs[d].order != 0) continue;
                u128 f = pow_clamped(p, static_cast<u64>(C.tame_weight[d]), X);
                if (f >= X) continue;
                for (i64 enc : C.divs[d].elements) {
                    LocalCharacter chi;
                    chi.p = p;
                    chi.level = 1;
                    chi.images.push_back(G.decode(enc));
                    site.choices.push_back({std::move(chi), f});
                }
            }
            site.floor_factor = pow_clamped(p, static_cast<u64>(m), X);
            add_site(std::move(site));
        }

        // a pinned tame place above max_tame still needs its site examined
        for (const auto& s : q.pinned) {
            if (s.place == PLACE_INFINITY) continue;
            if (s.unit_part.is_trivial()) continue;
            bool have = false;
            for (const auto& site : pinned_sites)
                if (site.p == s.place) have = true;
            if (have) continue;
            if (!C.is_wild(s.place) && s.place > max_tame) {
                PrimeSite site;
                site.p = s.place;
                for (std::size_t d = 0; d < C.divs.size(); ++d) {
                    if ((static_cast<i64>(s.place) - 1) % C.divs[d].order != 0) continue;
                    u128 f = pow_clamped(s.place, static_cast<u64>(C.tame_weight[d]), X);
                    if (f >= X) continue;
                    for (i64 enc : C.divs[d].elements) {
                        LocalCharacter chi;
                        chi.p = s.place;
                        chi.level = 1;
                        chi.images.push_back(G.decode(enc));
                        site.choices.push_back({std::move(chi), f});
                    }
                }
                site.floor_factor = pow_clamped(s.place, static_cast<u64>(m), X);
                add_site(std::move(site));
            } else if (impossible == false) {
                // wild or in-range tame pins were matched in add_site; if the
                // place never produced a site the pin cannot be satisfied
                bool matched = false;
                for (const auto& site : pinned_sites)
                    if (site.p == s.place) matched = true;
                if (!matched) impossible = true;
            }
        }

        for (const auto& site : pinned_sites) {
            u128 f = site.choices[site.pinned_choice].factor;
            if (pinned_factor > (X - 1) / f) { impossible = true; return; }
            pinned_factor *= f;
        }

        for (const auto& s : q.pinned) frob_pins.push_back(&s);

        std::sort(free_sites.begin(), free_sites.end(),
                  [](const PrimeSite& a, const PrimeSite& b) { return a.p < b.p; });
    }

    bool emit_ok(const GlobalCharacter& chi) const {
        if (q.surjective_only) {
            std::vector<GroupElement> gens;
            for (const auto& c : chi.components)
                for (const auto& img : c.images) gens.push_back(img);
            if (generated_order(G, gens) != G.order()) return false;
        }
        for (const LocalSpec* pin : frob_pins) {
            LocalSpec got = localize(chi, pin->place);
            if (!(got.unit_part == pin->unit_part)) return false;
            if (!(got.frob == pin->frob)) return false;
        }
        return true;
    }

    GlobalCharacter assemble(const std::vector<const LocalCharacter*>& taken) const {
        GlobalCharacter chi;
        chi.group = G;
        for (const auto* c : taken) chi.components.push_back(*c);
        std::sort(chi.components.begin(), chi.components.end(),
                  [](const LocalCharacter& a, const LocalCharacter& b) { return a.p < b.p; });
        return chi;
    }

    // visitor returns false to stop the walk; dfs returns false once stopped
    template <class Visit>
    bool dfs(std::size_t start, u128 v, std::vector<const LocalCharacter*>& taken,
             const Visit& visit) const {
        {
            GlobalCharacter chi = assemble(taken);
            if (emit_ok(chi) && !visit(chi, v)) return false;
        }
        for (std::size_t j = start; j < free_sites.size(); ++j) {
            const PrimeSite& site = free_sites[j];
            if (v > (X - 1) / site.floor_factor) break; // later sites only larger
            for (const auto& ch : site.choices) {
                if (v > (X - 1) / ch.factor) continue;
                taken.push_back(&ch.chi);
                bool keep = dfs(j + 1, v * ch.factor, taken, visit);
                taken.pop_back();
                if (!keep) return false;
            }
        }
        return true;
    }

    template <class Visit>
    void run(const Visit& visit) const {
        if (impossible) return;
        std::vector<const LocalCharacter*> taken;
        for (const auto& site : pinned_sites)
            taken.push_back(&site.choices[site.pinned_choice].chi);
        dfs(0, pinned_factor, taken, visit);
    }
};

} // namespace

std::vector<BudgetTriple> split_budget(const CountingFunction& C, u128 X) {
    std::vector<BudgetTriple> out;
    if (X <= 1) return out;
    const auto& G = C.group;
    for (u32 p : primes_up_to(tame_prime_limit(C.min_weight(), X))) {
        if (C.is_wild(p)) continue;
        for (std::size_t d = 0; d < C.divs.size(); ++d) {
            if ((static_cast<i64>(p) - 1) % C.divs[d].order != 0) continue;
            if (pow_clamped(p, static_cast<u64>(C.tame_weight[d]), X) >= X) continue;
            out.push_back({p, 1, static_cast<int>(d), C.tame_weight[d]});
        }
    }
    for (auto [p, e] : factorize(static_cast<u64>(G.order()))) {
        (void)e;
        std::set<std::pair<int, i64>> classes;
        for (const auto& wc : wild_characters(C, p)) {
            if (wc.cond_exp == 0) continue;
            if (pow_clamped(p, static_cast<u64>(wc.weight), X) >= X) continue;
            classes.emplace(wc.cond_exp, wc.weight);
        }
        for (auto [lvl, w] : classes) out.push_back({p, lvl, -1, w});
    }
    std::sort(out.begin(), out.end(), [](const BudgetTriple& a, const BudgetTriple& b) {
        return std::tie(a.p, a.level, a.division) < std::tie(b.p, b.level, b.division);
    });
    return out;
}

void for_each_character(const EnumerationQuery& q,
                        const std::function<void(const GlobalCharacter&, u128)>& visit) {
    Engine eng(q);
    eng.run([&](const GlobalCharacter& chi, u128 v) {
        visit(chi, v);
        return true;
    });
}

std::optional<std::pair<u128, GlobalCharacter>> find_any_character(const EnumerationQuery& q) {
    Engine eng(q);
    std::optional<std::pair<u128, GlobalCharacter>> out;
    eng.run([&](const GlobalCharacter& chi, u128 v) {
        out.emplace(v, chi);
        return false;
    });
    return out;
}

namespace {

bool canonical_less(const std::pair<u128, GlobalCharacter>& a,
                    const std::pair<u128, GlobalCharacter>& b) {
    if (a.first != b.first) return a.first < b.first;
    u64 fa = a.second.conductor(), fb = b.second.conductor();
    if (fa != fb) return fa < fb;
    const auto& ca = a.second.components;
    const auto& cb = b.second.components;
    if (ca.size() != cb.size()) return ca.size() < cb.size();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].p != cb[i].p) return ca[i].p < cb[i].p;
        if (ca[i].level != cb[i].level) return ca[i].level < cb[i].level;
        for (std::size_t j = 0; j < ca[i].images.size(); ++j)
            if (!(ca[i].images[j] == cb[i].images[j]))
                return ca[i].images[j] < cb[i].images[j];
    }
    return false;
}

} // namespace

std::vector<std::pair<u128, GlobalCharacter>> enumerate_sorted(const EnumerationQuery& q) {
    Engine eng(q);
    std::vector<std::pair<u128, GlobalCharacter>> out;
    if (eng.impossible) return out;

    int threads = std::max(1, q.threads);
    if (threads == 1 || eng.free_sites.empty()) {
        eng.run([&](const GlobalCharacter& chi, u128 v) {
            out.emplace_back(v, chi);
            return true;
        });
    } else {
        // partition by the first taken free site; the root (no free site) is
        // handled by worker 0 up front
        std::atomic<std::size_t> next{0};
        std::vector<std::vector<std::pair<u128, GlobalCharacter>>> parts(threads);
        auto worker = [&](int t) {
            std::vector<const LocalCharacter*> taken;
            for (const auto& site : eng.pinned_sites)
                taken.push_back(&site.choices[site.pinned_choice].chi);
            if (t == 0) {
                GlobalCharacter chi = eng.assemble(taken);
                if (eng.emit_ok(chi)) parts[t].emplace_back(eng.pinned_factor, chi);
            }
            while (true) {
                std::size_t j = next.fetch_add(1);
                if (j >= eng.free_sites.size()) break;
                const PrimeSite& site = eng.free_sites[j];
                if (eng.pinned_factor > (eng.X - 1) / site.floor_factor) continue;
                for (const auto& ch : site.choices) {
                    if (eng.pinned_factor > (eng.X - 1) / ch.factor) continue;
                    taken.push_back(&ch.chi);
                    eng.dfs(j + 1, eng.pinned_factor * ch.factor, taken,
                            [&](const GlobalCharacter& chi, u128 v) {
                                parts[t].emplace_back(v, chi);
                                return true;
                            });
                    taken.pop_back();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
        for (auto& part : parts)
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

void CountTally::add(u128 cvalue, i64 n) {
    if (cvalue < 1 || cvalue >= bound) throw std::logic_error("tally value out of range");
    std::size_t idx = static_cast<std::size_t>((cvalue - 1) / bucket_width);
    if (idx >= buckets.size()) buckets.resize(idx + 1, 0);
    buckets[idx] = checked_add(buckets[idx], n);
    total = checked_add(total, n);
}

namespace {

void apply_local_factor(std::vector<i64>& a, std::vector<std::pair<u64, i64>> terms) {
    // multiply the Dirichlet coefficient array by 1 + sum m_t x^{P_t}
    // (x^i * x^j = x^{ij}); all P_t are powers of one prime
    i64 scalar = 1;
    std::erase_if(terms, [&](const std::pair<u64, i64>& t) {
        if (t.first == 1) { scalar = checked_add(scalar, t.second); return true; }
        return false;
    });
    if (scalar != 1)
        for (auto& v : a) v = checked_mul(v, scalar);
    if (terms.empty()) return;
    std::sort(terms.begin(), terms.end());
    const u64 P0 = terms[0].first;
    const u64 top = (a.size() - 1) / P0 * P0;
    for (u64 n = top; n >= P0; n -= P0) {
        i64 acc = a[n];
        for (const auto& [P, mcoef] : terms)
            if (n % P == 0) acc = checked_add(acc, checked_mul(mcoef, a[n / P]));
        a[n] = acc;
    }
}

} // namespace

CountTally fast_count(const EnumerationQuery& q, u64 bucket_width) {
    if (!q.counting) throw std::invalid_argument("query needs a counting function");
    if (!q.pinned.empty())
        throw std::invalid_argument("fast_count does not accept pinned specs; use unramified_at");
    if (q.bound > 200000000)
        throw std::invalid_argument("fast_count bound capped at 2e8 (dense sieve)");
    const CountingFunction& C = *q.counting;
    const FiniteAbelianGroup& G = q.group;
    if (!(C.group == G)) throw std::invalid_argument("counting function group mismatch");

    CountTally tally;
    tally.bound = q.bound;
    tally.bucket_width = bucket_width;
    if (q.bound <= 1) return tally;
    const u64 X = static_cast<u64>(q.bound);

    std::vector<i64> result(X, 0);
    std::vector<i64> work;

    SubgroupLattice lattice(G);
    const auto wild_primes = factorize(static_cast<u64>(G.order()));
    const auto primes = primes_up_to(X - 1); // p^w < X needs p <= X-1

    auto excluded = [&](u64 p) {
        return std::find(q.unramified_at.begin(), q.unramified_at.end(), p) !=
               q.unramified_at.end();
    };

    for (std::size_t hidx = 0; hidx < lattice.subgroups().size(); ++hidx) {
        i64 mu = q.surjective_only ? lattice.moebius_to_top(hidx) : 0;
        const bool is_top = hidx == lattice.subgroups().size() - 1;
        if (q.surjective_only && mu == 0) continue;
        if (!q.surjective_only && !is_top) continue;
        const Subgroup& H = lattice.subgroups()[hidx];

        work.assign(X, 0);
        work[1] = 1;

        for (auto [p, e] : wild_primes) {
            (void)e;
            if (excluded(p)) continue;
            std::map<u64, i64> by_factor;
            for (const auto& wc : wild_characters(C, p, &H)) {
                if (wc.cond_exp == 0) continue;
                u128 f = pow_clamped(p, static_cast<u64>(wc.weight), X);
                if (f >= X) continue;
                by_factor[static_cast<u64>(f)] += 1;
            }
            apply_local_factor(work, {by_factor.begin(), by_factor.end()});
        }
        for (u32 p : primes) {
            if (C.is_wild(p) || excluded(p)) continue;
            std::vector<std::pair<u64, i64>> terms;
            for (const auto& t : tame_terms(C, p, &H)) {
                u128 f = pow_clamped(p, static_cast<u64>(t.weight), X);
                if (f >= X) continue;
                terms.emplace_back(static_cast<u64>(f), t.count);
            }
            apply_local_factor(work, terms);
        }

        const i64 scale = q.surjective_only ? mu : 1;
        for (u64 y = 1; y < X; ++y)
            if (work[y] != 0) result[y] = checked_add(result[y], checked_mul(scale, work[y]));
    }

    for (u64 y = 1; y < X; ++y)
        if (result[y] != 0) tally.add(y, result[y]);
    return tally;
}

CountTally tally_by_enumeration(const EnumerationQuery& q, u64 bucket_width) {
    if (q.bound > 200000000)
        throw std::invalid_argument("enumeration tally bound capped at 2e8");
    CountTally tally;
    tally.bound = q.bound;
    tally.bucket_width = bucket_width;
    for_each_character(q, [&](const GlobalCharacter&, u128 v) { tally.add(v); });
    return tally;
}

} // namespace abext
