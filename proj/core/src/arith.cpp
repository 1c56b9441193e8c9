#include "abext/arith.hpp"

#include <algorithm>
#include <cctype>

namespace abext {

std::string to_string(u128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x) {
        s += static_cast<char>('0' + static_cast<int>(x % 10));
        x /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::string mant = s;
    long expo = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = s.substr(0, epos);
        std::string es = s.substr(epos + 1);
        if (es.empty()) throw std::invalid_argument("bad exponent in '" + s + "'");
        expo = std::stol(es);
        if (expo < 0) throw std::invalid_argument("negative exponent in '" + s + "'");
    }
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
        std::string frac = mant.substr(dot + 1);
        expo -= static_cast<long>(frac.size());
        if (expo < 0)
            throw std::invalid_argument("'" + s + "' is not an integer");
        mant = mant.substr(0, dot) + frac;
    }
    if (mant.empty()) throw std::invalid_argument("bad integer literal '" + s + "'");
    u128 v = 0;
    for (char c : mant) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad digit in '" + s + "'");
        u128 nv = v * 10 + static_cast<unsigned>(c - '0');
        if (nv < v) throw std::overflow_error("integer literal exceeds 128 bits");
        v = nv;
    }
    for (long i = 0; i < expo; ++i) {
        u128 nv = v * 10;
        if (v != 0 && nv / 10 != v) throw std::overflow_error("integer literal exceeds 128 bits");
        v = nv;
    }
    return v;
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u128 pow_clamped(u64 base, u64 exp, u128 cap) {
    if (base == 0) return exp == 0 ? 1 : 0;
    u128 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (r > cap / base) return cap;
        r *= base;
        if (r >= cap) return cap;
    }
    return r;
}

std::vector<u32> primes_up_to(u64 n) {
    std::vector<u32> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i * i <= n; ++i)
        if (!comp[i])
            for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    for (u64 i = 2; i <= n; ++i)
        if (!comp[i]) out.push_back(static_cast<u32>(i));
    return out;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

void Rational::normalize() {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                    checked_mul(den, o.den));
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(checked_add(checked_mul(num, o.den), -checked_mul(o.num, den)),
                    checked_mul(den, o.den));
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}

bool Rational::operator<(const Rational& o) const {
    return checked_mul(num, o.den) < checked_mul(o.num, den);
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

} // namespace abext
