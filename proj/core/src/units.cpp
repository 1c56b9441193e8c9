#include "abext/units.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

namespace abext {

namespace {

// order of x in (Z/m)^x given the factorization of a multiple of the order
u64 element_order_mod(u64 x, u64 m, u64 group_order) {
    u64 ord = group_order;
    for (auto [q, e] : factorize(group_order)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(x, ord / q, m) == 1)
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

// baby-step giant-step in the cyclic group <g> of order n inside (Z/m)^x
u64 bsgs(u64 g, u64 h, u64 n, u64 m) {
    u64 s = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (s == 0) s = 1;
    std::unordered_map<u64, u64> table;
    table.reserve(s * 2);
    u64 cur = 1;
    for (u64 j = 0; j < s; ++j) {
        table.emplace(cur, j);
        cur = mulmod(cur, g, m);
    }
    u64 ginv_s = powmod(g, (n - (s % n)) % n, m); // g^{-s}, since g has order n
    cur = h % m;
    for (u64 i = 0; i <= s; ++i) {
        auto it = table.find(cur);
        if (it != table.end()) return (i * s + it->second) % n;
        cur = mulmod(cur, ginv_s, m);
    }
    throw std::domain_error("discrete log does not exist");
}

// x^{-1} mod m
u64 invmod(u64 x, u64 m) {
    i64 a = static_cast<i64>(x % m), b = static_cast<i64>(m);
    i64 u0 = 1, u1 = 0;
    while (b) {
        i64 q = a / b;
        a -= q * b;
        std::swap(a, b);
        u0 -= q * u1;
        std::swap(u0, u1);
    }
    if (a != 1) throw std::domain_error("not invertible");
    if (u0 < 0) u0 += static_cast<i64>(m);
    return static_cast<u64>(u0);
}

// Pohlig-Hellman for <g> of order n in (Z/m)^x
u64 dlog_cyclic(u64 g, u64 h, u64 n, u64 m) {
    if (n == 1) return 0;
    u64 result = 0;
    u64 crt_mod = 1;
    for (auto [q, e] : factorize(n)) {
        u64 qe = 1;
        for (int i = 0; i < e; ++i) qe *= q;
        // solve in the subgroup of order q^e, digit by digit
        u64 g_qe = powmod(g, n / qe, m);
        u64 h_qe = powmod(h, n / qe, m);
        u64 gamma = powmod(g_qe, qe / q, m); // order q
        u64 x = 0;
        u64 qk = 1;
        for (int k = 0; k < e; ++k) {
            // (h_qe * g_qe^{-x})^(q^{e-1-k}) = gamma^{d}
            u64 rhs = mulmod(h_qe, powmod(g_qe, qe - (x % qe), m), m);
            rhs = powmod(rhs, qe / (qk * q), m);
            u64 d = bsgs(gamma, rhs, q, m);
            x += d * qk;
            qk *= q;
        }
        // CRT combine x mod qe into result mod crt_mod*qe
        u64 inv = invmod(crt_mod % qe, qe);
        u64 diff = ((x % qe) + qe - (result % qe)) % qe;
        result += crt_mod * mulmod(diff, inv, qe);
        crt_mod *= qe;
    }
    return result % n;
}

u64 ipow(u64 b, int e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

u64 smallest_primitive_root(u64 p) {
    if (p == 2) return 1;
    u64 order = p - 1;
    auto fac = factorize(order);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (powmod(g, order / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

UnitGroupStructure::UnitGroupStructure(u64 modulus) : modulus_(modulus) {
    if (modulus == 0) throw std::invalid_argument("modulus must be >= 1");
    phi_ = 1;
    for (auto [p, k] : factorize(modulus)) {
        PrimeBlock blk;
        blk.p = p;
        blk.level = k;
        blk.pk = ipow(p, k);
        if (p == 2) {
            if (k == 2) {
                blk.factors.push_back({3, 2}); // -1 mod 4
            } else if (k >= 3) {
                blk.factors.push_back({blk.pk - 1, 2});                 // -1
                blk.factors.push_back({5, u64{1} << (k - 2)});          // 5
            }
            // k == 1: trivial group, no factors
            phi_ *= blk.pk / 2;
        } else {
            u64 g = smallest_primitive_root(p);
            u64 ord = blk.pk / p * (p - 1);
            if (k > 1 && powmod(g, p - 1, p * p) == 1) g += p;
            blk.factors.push_back({g % blk.pk, ord});
            phi_ *= ord;
        }
        blocks_.push_back(blk);
    }

    // CRT-lift generators to residues mod modulus
    for (const auto& blk : blocks_) {
        u64 rest = modulus_ / blk.pk;
        for (const auto& f : blk.factors) {
            u64 lifted = f.generator;
            if (rest > 1) {
                // lifted = f.generator mod pk, = 1 mod rest
                u64 inv = invmod(blk.pk % rest, rest);
                u64 t = ((1 + rest - (f.generator % rest)) % rest) * inv % rest;
                lifted = (f.generator + static_cast<u64>((static_cast<u128>(blk.pk) * t) % modulus_)) % modulus_;
            }
            global_.push_back({lifted, f.order});
        }
    }
}

std::vector<u64> UnitGroupStructure::discrete_log(u64 x) const {
    x %= modulus_;
    if (modulus_ == 1) return {};
    if (std::gcd(x, modulus_) != 1) throw std::domain_error("not a unit");
    std::vector<u64> out;
    for (const auto& blk : blocks_) {
        u64 xr = x % blk.pk;
        if (blk.p == 2) {
            if (blk.level == 1) continue;
            if (blk.level == 2) {
                out.push_back(xr == 3 ? 1 : 0);
                continue;
            }
            // xr = (-1)^a * 5^b mod 2^k
            u64 a = (xr % 4 == 3) ? 1 : 0;
            u64 y = a ? (blk.pk - xr) : xr; // now y = 5^b
            u64 b = dlog_cyclic(5, y, blk.factors[1].order, blk.pk);
            out.push_back(a);
            out.push_back(b);
        } else {
            const auto& f = blk.factors[0];
            out.push_back(dlog_cyclic(f.generator, xr, f.order, blk.pk));
        }
    }
    return out;
}

const UnitGroupStructure& unit_group(u64 modulus) {
    static std::mutex mtx;
    static std::map<u64, const UnitGroupStructure*> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(modulus);
    if (it == cache.end()) {
        auto* s = new UnitGroupStructure(modulus);
        it = cache.emplace(modulus, s).first;
    }
    return *it->second;
}

const std::vector<u64>& discrete_log_cached(u64 modulus, u64 x) {
    static std::mutex mtx;
    static std::map<std::pair<u64, u64>, const std::vector<u64>*> cache;
    x %= modulus == 0 ? 1 : modulus;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({modulus, x});
        if (it != cache.end()) return *it->second;
    }
    auto* v = new std::vector<u64>(unit_group(modulus).discrete_log(x));
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(std::make_pair(modulus, x), v);
    if (!inserted) delete v;
    return *it->second;
}

} // namespace abext
