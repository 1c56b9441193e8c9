#pragma once

#include <functional>
#include <optional>

#include "abext/counting.hpp"

namespace abext {

// Query for the character streams: all primitive characters chi with
// C(chi) < bound, surjective unless toggled off, matching any pinned local
// specs exactly (unit part and Frobenius filler, real place included).
//
// `unramified_at` forces trivial components at the listed places without
// constraining the Frobenius filler there; unlike `pinned` it is also
// honored by fast_count.
struct EnumerationQuery {
    FiniteAbelianGroup group;
    const CountingFunction* counting = nullptr;
    u128 bound = 0;
    std::vector<LocalSpec> pinned;
    std::vector<u64> unramified_at;
    bool surjective_only = true;
    int threads = 1;
};

// One admissible atom of local data: a prime, a level, and for tame levels
// the division the inertia image lies in (-1 for wild levels).
struct BudgetTriple {
    u64 p;
    int level;
    int division; // index into counting.divs, or -1
    i64 weight;
};

// The complete finite set of (prime, level, division) atoms that can appear
// in any character with C < X.
std::vector<BudgetTriple> split_budget(const CountingFunction& C, u128 X);

// Serial enumeration in a fixed deterministic order (not the canonical
// sorted order); the visitor receives each character once with its exact
// C-value.
void for_each_character(const EnumerationQuery& q,
                        const std::function<void(const GlobalCharacter&, u128)>& visit);

// first character in the deterministic DFS order, if any (early exit)
std::optional<std::pair<u128, GlobalCharacter>> find_any_character(const EnumerationQuery& q);

// Materialized enumeration in canonical order: by C-value, then conductor,
// then component tuples.  Uses q.threads workers; output is identical for
// every thread count.
std::vector<std::pair<u128, GlobalCharacter>> enumerate_sorted(const EnumerationQuery& q);

// #chars per C-value, held in width `bucket_width` buckets:
// buckets[k] counts characters with (C-1)/bucket_width == k.
struct CountTally {
    u128 bound = 0;
    u64 bucket_width = 1;
    std::vector<i64> buckets;
    i64 total = 0;

    void add(u128 cvalue, i64 n = 1);
    bool operator==(const CountTally& o) const {
        return bound == o.bound && bucket_width == o.bucket_width &&
               buckets == o.buckets && total == o.total;
    }
};

// Counts by Dirichlet-convolving per-prime local weight polynomials for
// each subgroup H <= G and combining with mu(H, G); exact.  Requires
// bound <= 2e8 (dense coefficient array) and rejects pinned specs; use
// `unramified_at` for unramified conditioning.
CountTally fast_count(const EnumerationQuery& q, u64 bucket_width = 1);

// The same tally assembled from the enumeration stream (cross-check oracle).
CountTally tally_by_enumeration(const EnumerationQuery& q, u64 bucket_width = 1);

} // namespace abext
