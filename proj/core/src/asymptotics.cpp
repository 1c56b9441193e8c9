#include "abext/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

namespace abext {

namespace {

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, e] : factorize(static_cast<u64>(n))) {
        (void)e;
        r -= r / static_cast<i64>(p);
    }
    return r;
}

// wrap a complex value that is real on mathematical grounds into an
// interval, padding by the expected evaluation error
Interval pad_real(std::complex<double> z, double rel) {
    double mag = std::abs(z);
    double pad = rel * (mag + 1.0) + std::abs(z.imag());
    if (std::abs(z.imag()) > 1e-6 * (mag + 1.0))
        throw std::logic_error("complex product failed to collapse to a real value");
    return Interval(z.real() - pad, z.real() + pad);
}

Interval recip_pow_interval(u64 base, i64 num, i64 den) {
    // base^{-num/den} for positive num/den
    if (num % den == 0) {
        Interval b = Interval::exact(1.0) / int_pow(Interval::exact(static_cast<double>(base)),
                                                    static_cast<int>(num / den));
        return b;
    }
    Interval e = Interval::exact(-static_cast<double>(num)) / Interval::exact(static_cast<double>(den));
    return int_exp(int_log(Interval::exact(static_cast<double>(base))) * e);
}

// complex-valued character modulo r, represented by exponents against the
// canonical generators of (Z/r)^x
struct RChar {
    u64 r;
    std::vector<u64> coeffs;

    bool principal() const {
        for (u64 a : coeffs)
            if (a != 0) return false;
        return true;
    }

    // angle numerator over L = lcm of the generator orders
    i64 angle_num(u64 x, i64 L) const {
        const auto& U = unit_group(r);
        const auto& dl = discrete_log_cached(r, x);
        i64 acc = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            i64 ord = static_cast<i64>(U.factors()[j].order);
            i64 t = (static_cast<i64>(coeffs[j] % ord) * static_cast<i64>(dl[j] % ord)) % ord;
            acc = (acc + t * (L / ord)) % L;
        }
        return acc;
    }

    std::complex<double> value(u64 x) const {
        if (r == 1) return {1.0, 0.0};
        if (std::gcd(x % r, r) != 1) return {0.0, 0.0};
        const auto& U = unit_group(r);
        i64 L = 1;
        for (const auto& f : U.factors()) L = std::lcm(L, static_cast<i64>(f.order));
        double theta = 2.0 * M_PI * static_cast<double>(angle_num(x % r, L)) / static_cast<double>(L);
        return {std::cos(theta), std::sin(theta)};
    }

    // conductor of the primitive character inducing this one
    u64 conductor() const {
        const auto& U = unit_group(r);
        u64 f = 1;
        std::size_t j = 0;
        for (const auto& blk : U.blocks()) {
            std::vector<i64> orders;
            for (const auto& bf : blk.factors) {
                i64 ord = static_cast<i64>(bf.order);
                i64 a = static_cast<i64>(coeffs[j++] % bf.order);
                orders.push_back(ord / std::gcd(ord, a));
            }
            int ce = conductor_exponent_from_value_orders(blk.p, blk.level, orders);
            for (int t = 0; t < ce; ++t) f *= blk.p;
        }
        return f;
    }

    // value of the primitive character at x coprime to the conductor: lift x
    // blockwise through the quotients the character factors through
    std::complex<double> primitive_value(u64 x) const {
        const auto& U = unit_group(r);
        u64 y = 0, mod = 1;
        std::size_t j = 0;
        for (const auto& blk : U.blocks()) {
            std::vector<i64> orders;
            for (const auto& bf : blk.factors) {
                i64 ord = static_cast<i64>(bf.order);
                i64 a = static_cast<i64>(coeffs[j++] % bf.order);
                orders.push_back(ord / std::gcd(ord, a));
            }
            int ce = conductor_exponent_from_value_orders(blk.p, blk.level, orders);
            u64 pce = 1;
            for (int t = 0; t < ce; ++t) pce *= blk.p;
            u64 res = ce == 0 ? 1 : (x % pce);
            // CRT: y == res (mod blk.pk), any residue == res mod p^{ce} works
            u64 m2 = blk.pk;
            u64 a2 = res % m2;
            // combine (y mod mod) with (a2 mod m2)
            u64 inv = 1;
            {
                i64 aa = static_cast<i64>(mod % m2), bb = static_cast<i64>(m2), u0 = 1, u1 = 0;
                while (bb) {
                    i64 qq = aa / bb;
                    aa -= qq * bb;
                    std::swap(aa, bb);
                    u0 -= qq * u1;
                    std::swap(u0, u1);
                }
                if (u0 < 0) u0 += static_cast<i64>(m2);
                inv = static_cast<u64>(u0);
            }
            u64 diff = (a2 + m2 - (y % m2)) % m2;
            y = y + mod * ((diff * inv) % m2);
            mod *= m2;
        }
        return value(y % r);
    }
};

std::vector<RChar> nonprincipal_characters_mod(u64 r) {
    const auto& U = unit_group(r);
    std::vector<RChar> out;
    std::vector<u64> coeff(U.factors().size(), 0);
    while (true) {
        RChar chi{r, coeff};
        if (!chi.principal()) out.push_back(chi);
        std::size_t j = 0;
        while (j < coeff.size() && ++coeff[j] == U.factors()[j].order) coeff[j++] = 0;
        if (j == coeff.size()) break;
    }
    return out;
}

// L(1, chi*) by the closed finite formulas for the primitive character
// inducing chi (odd: Gauss sum times the twisted first Bernoulli number;
// even: Gauss sum against log|1 - zeta^a|)
std::complex<double> l_value_primitive(const RChar& chi) {
    const u64 f = chi.conductor();
    if (f == 1) throw std::logic_error("principal character has no finite L(1)");
    std::complex<double> tau{0.0, 0.0};
    for (u64 a = 1; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        double th = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(f);
        tau += chi.primitive_value(a) * std::complex<double>{std::cos(th), std::sin(th)};
    }
    bool odd = std::abs(chi.primitive_value(f - 1) - std::complex<double>{1.0, 0.0}) > 1e-9;
    if (odd) {
        std::complex<double> b1{0.0, 0.0};
        for (u64 a = 1; a <= f; ++a) {
            if (std::gcd(a, f) != 1) continue;
            b1 += std::conj(chi.primitive_value(a)) * static_cast<double>(a);
        }
        b1 /= static_cast<double>(f);
        return std::complex<double>{0.0, M_PI / static_cast<double>(f)} * tau * b1;
    }
    std::complex<double> sum{0.0, 0.0};
    for (u64 a = 1; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        double s = 2.0 * std::sin(M_PI * static_cast<double>(a) / static_cast<double>(f));
        sum += std::conj(chi.primitive_value(a)) * std::log(s);
    }
    return -tau / static_cast<double>(f) * sum;
}

} // namespace

Rational pole_order(const CountingFunction& C) {
    Rational w(0);
    i64 m = C.min_weight();
    for (std::size_t d = 0; d < C.divs.size(); ++d) {
        if (C.tame_weight[d] != m) continue;
        // one term per element of the division
        for (std::size_t k = 0; k < C.divs[d].elements.size(); ++k)
            w = w + Rational(1, euler_phi(C.divs[d].order));
    }
    return w;
}

Interval dirichlet_l1_product(u64 r, const std::vector<u64>& extra_euler_primes) {
    std::complex<double> prod{1.0, 0.0};
    for (const auto& chi : nonprincipal_characters_mod(r)) {
        std::complex<double> term = l_value_primitive(chi);
        u64 fstar = chi.conductor();
        for (auto [p, e] : factorize(r)) {
            (void)e;
            if (fstar % p != 0)
                term *= (1.0 - chi.primitive_value(p) / static_cast<double>(p));
        }
        for (u64 p : extra_euler_primes)
            term *= (1.0 - chi.value(p) / static_cast<double>(p));
        prod *= term;
    }
    return pad_real(prod, 1e-9);
}

bool is_pth_power_in_Ql(u64 q, u64 ell, u64 p) {
    if (ell == q || ell == p)
        throw std::invalid_argument("power-residue test needs ell distinct from p and q");
    if ((ell - 1) % p != 0) return true;
    return powmod(q % ell, (ell - 1) / p, ell) == 1;
}

namespace {

struct TailBound {
    double log_upper; // sum_{n>N} K n^{-theta} upper estimate
    double max_term;  // K N^{-theta}
};

TailBound power_tail(double K, double theta, double N) {
    double s = std::pow(N, -theta) + std::pow(N, 1.0 - theta) / (theta - 1.0);
    return {K * s * (1.0 + 1e-12), K * std::pow(N, -theta) * (1.0 + 1e-12)};
}

// enclosure of prod_{l > N} (1 + delta_l) given |delta_l| <= K l^{-theta};
// one_sided: every factor is known to be <= 1
Interval deviation_tail(double K, double theta, double N, bool one_sided) {
    TailBound tb = power_tail(K, theta, N);
    if (tb.max_term >= 0.5)
        throw std::invalid_argument("truncation too small for a certified tail");
    double lo = std::exp(-tb.log_upper / (1.0 - tb.max_term)) * (1.0 - 1e-12);
    double hi = one_sided ? 1.0 : std::exp(tb.log_upper) * (1.0 + 1e-12);
    return Interval(lo, hi);
}

} // namespace

Interval tail_enclosure(u64 p, u64 N) {
    const double dp = static_cast<double>(p);
    const double dN = static_cast<double>(N);
    Interval upper = int_pow(Interval::exact(1.0) +
                                 int_exp(int_log(Interval::exact(dN)) *
                                         Interval::exact(-1.0 / dp)) * Interval::exact(dp),
                             static_cast<int>(p * p - p));
    double K = dp * dp - dp;
    double theta = (dp + 1.0) / dp;
    TailBound tb = power_tail(K, theta, dN);
    if (tb.max_term >= 0.5)
        throw std::invalid_argument("truncation too small for a certified tail");
    double lo = std::exp(-tb.log_upper / (1.0 - tb.max_term)) * (1.0 - 1e-12);
    return Interval(lo, upper.hi);
}

namespace {

struct DiscProbParts {
    Interval s_prod;  // prod over non-pth-power l of A/B (truncated)
    Interval r_prod;  // prod over all l of C/B (truncated)
    Interval t_prod;  // prod of A/C (non-pth) and B/C (pth) (truncated)
    u64 N;
    u64 p;
};

// The products run over the tame primes l == 1 (mod p^2) plus the wild
// prime l = p itself (when p != q).  At l = p the character counts follow
// the same pth-power dichotomy but the discriminant exponents come from the
// wild conductors p^2 and p^3:
//   weight of an order-p   character: 2(p^2-p)        -> p^{-2} at s = 1/m
//   weight of an order-p^2 character: 3p^2-p-2        -> p^{-(3p^2-p-2)/(p^2-p)}
// (the tame-shaped exponents do not apply at l = p; the substitution is
// cross-checked against the enumeration-based empirical probabilities).
DiscProbParts disc_prob_parts(u64 p, u64 q, u64 N) {
    if (p < 3 || p > 61) throw std::invalid_argument("p must be a small odd prime");
    for (auto [f, e] : factorize(p))
        if (f != p || e != 1) throw std::invalid_argument("p must be prime");
    for (auto [f, e] : factorize(q))
        if (f != q || e != 1) throw std::invalid_argument("q must be prime");
    if (N < 16) throw std::invalid_argument("truncation too small");

    DiscProbParts parts{Interval::exact(1.0), Interval::exact(1.0), Interval::exact(1.0), N, p};
    const u64 p2 = p * p;
    const double dp = static_cast<double>(p);
    for (u32 ell : primes_up_to(N)) {
        if (ell % p2 != 1 || ell == q) continue;
        Interval linv = Interval::exact(1.0) / Interval::exact(static_cast<double>(ell));
        Interval x = recip_pow_interval(ell, static_cast<i64>(p) + 1, static_cast<i64>(p));
        Interval A = Interval::exact(1.0) + linv * (dp - 1.0) - x * dp;
        Interval B = Interval::exact(1.0) + linv * (dp - 1.0) + x * (dp * dp - dp);
        Interval Cf = Interval::exact(1.0) + linv * (dp - 1.0);
        if (!(A.lo > 0.0)) throw std::logic_error("nonpositive local factor");
        bool pth = is_pth_power_in_Ql(q, ell, p);
        if (!pth) parts.s_prod = parts.s_prod * (A / B);
        parts.r_prod = parts.r_prod * (Cf / B);
        parts.t_prod = parts.t_prod * (pth ? (B / Cf) : (A / Cf));
    }
    if (q != p) {
        Interval pinv2 = Interval::exact(1.0) / Interval::exact(dp * dp);
        // p^{-(3p^2-p-2)/(p^2-p)}
        Interval W = recip_pow_interval(p, 3 * static_cast<i64>(p) * static_cast<i64>(p) -
                                               static_cast<i64>(p) - 2,
                                        static_cast<i64>(p) * static_cast<i64>(p) -
                                            static_cast<i64>(p));
        Interval U = Interval::exact(1.0) + pinv2 * (dp - 1.0) + W * (dp * dp - dp);
        Interval Tw = Interval::exact(1.0) + pinv2 * (dp - 1.0) - W * dp;
        Interval Cw = Interval::exact(1.0) + pinv2 * (dp - 1.0);
        // q a pth power in Z_p^x iff q^{p-1} == 1 (mod p^2)
        bool pth_at_p = powmod(q % p2, p - 1, p2) == 1;
        if (!pth_at_p) parts.s_prod = parts.s_prod * (Tw / U);
        parts.r_prod = parts.r_prod * (Cw / U);
        parts.t_prod = parts.t_prod * ((pth_at_p ? U : Tw) / Cw);
    }
    return parts;
}

} // namespace

namespace {

EulerProductValue make_s(const DiscProbParts& parts) {
    const double dp = static_cast<double>(parts.p);
    const double N = static_cast<double>(parts.N);
    double theta = (dp + 1.0) / dp;
    // |A/B - 1| <= p^2 l^{-theta}; every factor A/B < 1
    Interval tail = deviation_tail(dp * dp, theta, N, true);
    Interval inner = parts.s_prod * tail;
    Interval s = (Interval::exact(1.0) + inner * (dp - 1.0)) / Interval::exact(dp * dp);
    return {s, parts.N, "increasing primes", power_tail(dp * dp, theta, N).log_upper};
}

EulerProductValue make_r(const DiscProbParts& parts) {
    const double dp = static_cast<double>(parts.p);
    const double N = static_cast<double>(parts.N);
    double theta = (dp + 1.0) / dp;
    // |C/B - 1| <= (p^2-p) l^{-theta}; every factor C/B < 1
    Interval tail = deviation_tail(dp * dp - dp, theta, N, true);
    return {parts.r_prod * tail, parts.N, "increasing primes",
            power_tail(dp * dp - dp, theta, N).log_upper};
}

} // namespace

EulerProductValue disc_prob_s(u64 p, u64 q, u64 N) {
    return make_s(disc_prob_parts(p, q, N));
}

EulerProductValue disc_prob_r(u64 p, u64 q, u64 N) {
    return make_r(disc_prob_parts(p, q, N));
}

DiscProbVerdict disc_prob_s1(u64 p, u64 q, u64 N) {
    DiscProbParts parts = disc_prob_parts(p, q, N);
    const double dp = static_cast<double>(p);
    double theta = (dp + 1.0) / dp;

    DiscProbVerdict v;
    v.s = make_s(parts);
    v.r = make_r(parts);

    // criterion product: factors A/C < 1 and B/C > 1, tail two-sided
    Interval t_tail = deviation_tail(dp * dp - dp, theta, static_cast<double>(N), false);
    v.criterion = parts.t_prod * t_tail;

    // p^2 s1 - 1 = (p-1) r (T-1)/(1-r); r < 1 holds per truncated factor and
    // the tail of r only shrinks it
    if (v.r.value.hi < 1.0) {
        Interval one = Interval::exact(1.0);
        v.p2s1 = one + (v.criterion - one) * v.r.value * (dp - 1.0) / (one - v.r.value);
        Interval via_sr = (v.s.value - v.r.value * Interval::exact(1.0 / dp)) /
                          (one - v.r.value) * Interval::exact(dp * dp);
        v.p2s1 = int_intersect(v.p2s1, via_sr);
        v.s1 = v.p2s1 / Interval::exact(dp * dp);
        v.s1_defined = true;
    } else {
        v.p2s1 = v.criterion; // fallback: decided by T alone
        v.s1_defined = false;
    }

    const Interval& decide = v.s1_defined ? v.p2s1 : v.criterion;
    if (decide.hi < 1.0)
        v.status = DiscProbVerdict::CertifiedBelow;
    else if (decide.lo > 1.0)
        v.status = DiscProbVerdict::CertifiedAbove;
    else
        v.status = DiscProbVerdict::Inconclusive;
    return v;
}

ProbabilityEstimate empirical_disc_prob(u64 p, u64 q, u128 X) {
    if (p < 3 || p * p > 4096) throw std::invalid_argument("p out of desk range");
    FiniteAbelianGroup G({static_cast<i64>(p * p)});
    CountingFunction D = discriminant_counting(G);
    Event split{{PlaceCondition::unramified_frob(q, G.zero())}};
    Event unram{{PlaceCondition::unramified(q)}};
    Measurement m = measure(G, D, {X}, {split, unram});
    if (m.counts[0][1] == 0)
        throw std::domain_error("conditioning event empty below the bound");
    return {m.counts[0][0], m.counts[0][1]};
}

ConstantReport leading_constant(const CountingFunction& C, u64 truncation, bool accelerated) {
    const auto& G = C.group;
    auto fair = fairness(C);
    if (!fair.fair)
        throw std::invalid_argument("leading constant formula requires a fair counting function");

    ConstantReport rep;
    rep.accelerated = accelerated;
    rep.m = C.min_weight();
    rep.pole = pole_order(C);
    if (!rep.pole.is_integer())
        throw std::logic_error("pole order must be an integer over Q");
    rep.w = rep.pole.num;

    // multiset of division orders in the minimal-weight set
    std::map<i64, i64> k_r;
    for (std::size_t d = 0; d < C.divs.size(); ++d)
        if (C.tame_weight[d] == rep.m) k_r[C.divs[d].order] += 1;

    auto obstruction = obstruction_data(C);
    rep.sp = obstruction.group_order();
    rep.s0_size = obstruction.s0.size();

    rep.unit_index_factor = 1;
    rep.two_torsion = 1;
    for (i64 n : G.factors()) {
        if (n % 2 == 0) rep.unit_index_factor *= 2;
        rep.two_torsion *= std::gcd<i64>(2, n);
    }

    i64 den = 1;
    for (i64 i = 0; i < rep.w - 1; ++i) den = checked_mul(den, rep.m);
    for (i64 i = 2; i <= rep.w - 1; ++i) den = checked_mul(den, i);
    for (std::size_t i = 0; i < rep.s0_size; ++i) den = checked_mul(den, G.order());
    den = checked_mul(den, rep.unit_index_factor);
    rep.prefactor = Rational(rep.sp, den);

    // second-smallest weight exponent (over m), for the tail rate
    i64 c2 = 0;
    for (i64 wgt : C.tame_weight)
        if (wgt > rep.m && (c2 == 0 || wgt < c2)) c2 = wgt;

    const double D = static_cast<double>(G.order() - 1);
    double sum_phi = 0.0;
    for (auto [r, k] : k_r) sum_phi += static_cast<double>(k * euler_phi(r));
    double min_trunc = 64.0 * (D + static_cast<double>(rep.w) + sum_phi + 2.0);
    if (static_cast<double>(truncation) < min_trunc)
        throw std::invalid_argument("truncation too small for a certified tail");

    // which orders are amenable to the direct (unaccelerated) certified tail
    bool direct_absolute = true;
    for (auto [r, k] : k_r) {
        (void)k;
        if (r > 2) direct_absolute = false;
    }

    const i64 m = rep.m;
    Interval product = Interval::exact(1.0);
    Interval one = Interval::exact(1.0);

    auto is_s0 = [&](u64 p) {
        return std::find(obstruction.s0.begin(), obstruction.s0.end(), p) != obstruction.s0.end();
    };

    for (u32 p : primes_up_to(truncation)) {
        if (is_s0(p)) continue;
        Interval local = one;
        if (C.is_wild(p)) {
            local = Interval::exact(0.0);
            for (const auto& wc : wild_characters(C, p))
                local = local + recip_pow_interval(p, wc.weight, m);
        } else {
            for (std::size_t d = 0; d < C.divs.size(); ++d) {
                if ((static_cast<i64>(p) - 1) % C.divs[d].order != 0) continue;
                local = local + recip_pow_interval(p, C.tame_weight[d], m) *
                                    Interval::exact(static_cast<double>(C.divs[d].elements.size()));
            }
        }
        Interval pinv = one / Interval::exact(static_cast<double>(p));
        Interval factor = local * int_pow(one - pinv, static_cast<int>(rep.w));
        if (accelerated) {
            for (auto [r, k] : k_r) {
                if (r <= 2) continue;                      // no nonprincipal characters
                if (r % static_cast<i64>(p) == 0) continue; // chi(p) = 0: factor 1
                // multiplicative order of p mod r
                i64 o = 1;
                u64 pm = p % static_cast<u64>(r);
                u64 acc = pm;
                while (acc != 1) { acc = (acc * pm) % static_cast<u64>(r); ++o; }
                Interval po = int_pow(pinv, static_cast<int>(o));
                Interval num = int_pow(one - po, static_cast<int>(euler_phi(r) / o));
                Interval a = num / (one - pinv);
                factor = factor * int_pow(a, static_cast<int>(k));
            }
        }
        product = product * factor;
    }

    // certified tail
    rep.tail_certified = accelerated || direct_absolute;
    Interval tail = one;
    double tail_log = 0.0;
    if (rep.tail_certified) {
        double theta = c2 == 0 ? 2.0 : std::min(2.0, static_cast<double>(c2) / static_cast<double>(m));
        double K1 = c2 == 0 ? 0.0 : D;
        double K2 = D * D + 2.0 * static_cast<double>(rep.w);
        for (auto [r, k] : k_r)
            K2 += static_cast<double>(k) * (3.0 * static_cast<double>(euler_phi(r)) + 2.0);
        double N = static_cast<double>(truncation);
        double log_budget = (K1 == 0.0 ? 0.0 : power_tail(K1, theta, N).log_upper) +
                            power_tail(K2, 2.0, N).log_upper;
        tail_log = log_budget;
        tail = Interval(std::exp(-log_budget) * (1.0 - 1e-12),
                        std::exp(log_budget) * (1.0 + 1e-12));
    }
    rep.finite_product = {product * tail, truncation, "increasing primes", tail_log};

    // acceleration compensation: the product of L(1, chi) over the
    // nonprincipal characters of each modulus r, with Euler factors at the
    // obstructed places put back
    rep.l_value_factor = one;
    if (accelerated) {
        std::vector<u64> extra(obstruction.s0.begin(), obstruction.s0.end());
        for (auto [r, k] : k_r) {
            if (r <= 2) continue;
            Interval lr = dirichlet_l1_product(static_cast<u64>(r), extra);
            rep.l_value_factor = rep.l_value_factor * int_pow(lr, static_cast<int>(k));
        }
    }

    rep.s0_factor = one;
    if (!obstruction.s0.empty()) {
        Interval half = Interval::exact(0.5);
        rep.s0_factor = viable_spec_weight_sum_at_2(C) * int_pow(half, static_cast<int>(rep.w));
    }

    Interval pre = Interval::exact(static_cast<double>(rep.prefactor.num)) /
                   Interval::exact(static_cast<double>(rep.prefactor.den));
    rep.total = pre * rep.finite_product.value * rep.l_value_factor * rep.s0_factor *
                Interval::exact(static_cast<double>(rep.two_torsion));
    return rep;
}

} // namespace abext
