#pragma once

#include <vector>

#include "abext/arith.hpp"

namespace abext {

struct CyclicFactor {
    u64 generator; // residue mod the block's prime power
    u64 order;
};

// Cyclic decomposition of (Z/M)^x with a fixed, serialization-stable
// generator basis:
//   odd p^k : one factor, generated by the smallest primitive root mod p
//             (lifted to p^k when necessary);
//   2       : trivial;
//   4       : <-1> = <3>, order 2;
//   2^k,k>2 : <-1> of order 2, then <5> of order 2^(k-2).
// Blocks are ordered by increasing prime; the global generator list is the
// concatenation of the per-block lists, CRT-lifted to residues mod M.
class UnitGroupStructure {
public:
    struct PrimeBlock {
        u64 p;
        int level;
        u64 pk;
        std::vector<CyclicFactor> factors; // generators as residues mod pk
    };

    explicit UnitGroupStructure(u64 modulus);

    u64 modulus() const { return modulus_; }
    u64 phi() const { return phi_; }
    const std::vector<PrimeBlock>& blocks() const { return blocks_; }
    // CRT-lifted generators mod modulus, canonical order
    const std::vector<CyclicFactor>& factors() const { return global_; }

    // exponent vector e with prod factors()[i].generator^e[i] == x (mod M);
    // throws if gcd(x, M) != 1
    std::vector<u64> discrete_log(u64 x) const;

private:
    u64 modulus_;
    u64 phi_;
    std::vector<PrimeBlock> blocks_;
    std::vector<CyclicFactor> global_;
};

// process-wide memoized structures (they are immutable once built)
const UnitGroupStructure& unit_group(u64 modulus);

// memoized discrete_log(x) mod `modulus`; the hot path when the same small
// set of evaluation points is probed across a large enumeration
const std::vector<u64>& discrete_log_cached(u64 modulus, u64 x);

u64 smallest_primitive_root(u64 p);

} // namespace abext
