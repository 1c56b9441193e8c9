#pragma once

#include "abext/interval.hpp"
#include "abext/stats.hpp"
#include "abext/viability.hpp"

namespace abext {

// order of the rightmost pole: sum over the minimal-weight set of
// 1/[Q(zeta_{r_g}):Q] = 1/phi(r_g); over Q this is the number of divisions
// in the minimal-weight set and is always an integer, but the exact
// rational is reported
Rational pole_order(const CountingFunction& C);

// enclosure of a (possibly conditionally convergent) Euler product
struct EulerProductValue {
    Interval value;
    u64 truncation = 0;
    std::string ordering = "increasing primes";
    double tail_log_bound = 0.0; // |log| budget assigned to the tail
};

struct ConstantReport {
    i64 m = 0;
    Rational pole;              // w as an exact rational
    i64 w = 0;                  // integral pole order used in the formula
    i64 sp = 1;                 // |E| = Sp(Q, G)
    std::size_t s0_size = 0;
    i64 unit_index_factor = 1;  // prod_i |{+-1}/{+-1}^{n_i}|
    i64 two_torsion = 1;        // #Hom(Gal(C/R), G) = |G[2]|
    Rational prefactor;         // Sp / (m^{w-1} (w-1)! |G|^{|S0|} unit_index)
    EulerProductValue finite_product; // over p not in S0, tail-enclosed
    Interval s0_factor;         // sum over viable specs at 2, with (1-1/2)^w
    Interval l_value_factor;    // acceleration compensation (1 in direct mode)
    Interval total;
    bool accelerated = true;
    bool tail_certified = true; // direct mode may lack a certified tail
};

// Evaluates the leading asymptotic constant for N(X)/(X^{1/m} (log X)^{w-1})
// over Q for a fair counting function.  In accelerated mode (default) the
// conditionally convergent part is exchanged for Dirichlet L-values at 1 and
// the remaining product converges absolutely with a certified two-sided
// tail.  Direct mode multiplies the raw factors in increasing prime order
// and certifies a tail only when that product converges absolutely.
ConstantReport leading_constant(const CountingFunction& C, u64 truncation,
                                bool accelerated = true);

// L(1, chi) for the nonprincipal Dirichlet characters modulo r (as Euler
// products over all primes, i.e. imprimitive characters contribute their
// missing factors), enclosed with a conservative evaluation pad.
Interval dirichlet_l1_product(u64 r, const std::vector<u64>& skip_factor_primes);

// q a p-th power in Q_l (l != p, q; unit p-th powers are everything unless
// p | l-1, then a power-residue test)
bool is_pth_power_in_Ql(u64 q, u64 ell, u64 p);

// the three Section-style discriminant-probability Euler products for
// G = Z/p^2 at the conditioning prime q, truncated at N with two-sided
// tail enclosures
EulerProductValue disc_prob_s(u64 p, u64 q, u64 N);
EulerProductValue disc_prob_r(u64 p, u64 q, u64 N);

struct DiscProbVerdict {
    EulerProductValue s, r;
    Interval s1;          // (s - r/p)/(1 - r), when the division is defined
    bool s1_defined = false;
    Interval criterion;   // T = (p^2 s - 1)/((p-1) r) as a direct product
    Interval p2s1;        // p^2 s1 = 1 + (p-1) r (T-1)/(1-r)
    enum Status { CertifiedBelow, CertifiedAbove, Inconclusive } status;
};

// Split-completely-given-unramified probability for surjective characters:
// certified strictly below 1/p^2 iff the enclosed criterion product stays
// below 1.
DiscProbVerdict disc_prob_s1(u64 p, u64 q, u64 N);

// the two-sided tail factor enclosure for the criterion product truncated
// at N: upper (1 + p N^{-1/p})^{p^2-p}, lower by the termwise log bound
Interval tail_enclosure(u64 p, u64 N);

// brute-force measurement over the discriminant-ordered enumeration of
// Z/p^2-extensions: Pr(q splits completely | q unramified) below X
ProbabilityEstimate empirical_disc_prob(u64 p, u64 q, u128 X);

} // namespace abext
