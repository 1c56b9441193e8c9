#pragma once

#include <optional>

#include "abext/enumerate.hpp"
#include "abext/interval.hpp"

namespace abext {

// Over Q the only obstruction classes live at 2: if 8 divides exp(G), the
// class of 2^{n_i/2} in the S-unit quotient for each factor with 8 | n_i is
// nontrivial and cuts out the inviable local behaviors at 2.
struct ObstructionGenerator {
    std::size_t factor;   // index i of the group factor it lives on
    i64 two_exponent;     // n_i/2: the generator is 2^{n_i/2} on that factor
    i64 sign_exponent;    // exponent of -1 (always 0 over Q, kept for the record)
};

struct ObstructionData {
    int s_k = 2;               // maximal s with zeta_{2^s} + zeta_{2^s}^{-1} in Q
    u64 b0 = 2;                // 2 + eta_{s_k}
    std::vector<u64> s0;       // {} or {2}
    std::vector<ObstructionGenerator> generators;

    i64 group_order() const { return i64{1} << generators.size(); }
};

std::vector<u64> s0_places(const FiniteAbelianGroup& G);

// The obstruction group E for a fair counting function; rejects unfair C.
// The output depends only on G (asserted by tests across different fair C).
ObstructionData obstruction_data(const CountingFunction& C);

// Exact viability of a full specification: specs must cover 2, every prime
// dividing |G|, and the real place.  Viable iff every obstruction generator
// pairs trivially with the product of the local characters.
bool viability_exact(const FiniteAbelianGroup& G, const CountingFunction& C,
                     const std::vector<LocalSpec>& specs);

// Viability of a partial specification: the criterion is quantified over all
// completions at the required places missing from `specs`.
bool viability_partial(const FiniteAbelianGroup& G, const CountingFunction& C,
                       const std::vector<LocalSpec>& specs);

struct ViabilityVerdict {
    enum Status { Viable, Inviable, ViableWithWitness, NoWitnessBelowBound };
    Status status;
    std::optional<GlobalCharacter> witness;
};

// Search for a global character realizing the specs with conductor < bound.
// Returns Viable immediately when the place set misses the obstructed set
// (2 not specified, or 8 does not divide exp(G)).
ViabilityVerdict viability_search(const FiniteAbelianGroup& G,
                                  const std::vector<LocalSpec>& specs, u64 bound);

struct SpecVerdict {
    LocalSpec spec;
    bool viable;               // exact criterion, free completion elsewhere
    ViabilityVerdict search;   // cross-check at the given bound
};

// Every local spec at 2 with both verdicts; throws if the two methods
// disagree anywhere.
std::vector<SpecVerdict> viable_specs_at_2(const FiniteAbelianGroup& G, u64 search_bound);

// sum over viable specs Sigma at 2 of 2^{-c(Sigma)/m} (the obstructed-place
// factor of the leading-constant formula, without the (1-1/2)^w part);
// exact 1 when S0 is empty
Interval viable_spec_weight_sum_at_2(const CountingFunction& C);

// all local specs at a finite place (unit character up to the level cap at
// wild p, level <= 1 at tame p, paired with every Frobenius filler)
std::vector<LocalSpec> all_local_specs(const FiniteAbelianGroup& G, u64 p);

} // namespace abext
