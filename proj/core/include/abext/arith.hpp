#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace abext {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

constexpr u128 U128_MAX = ~static_cast<u128>(0);

std::string to_string(u128 x);

// Parses a non-negative integer, either plain digits or mantissa-exponent
// form ("1e7", "4.4e19").  The value must be exactly representable; a
// fractional residue is an error.
u128 parse_u128(const std::string& s);

// (a * b) mod m for 64-bit operands.
inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

// base^exp, clamped to `cap` (returns `cap` whenever the true value >= cap).
u128 pow_clamped(u64 base, u64 exp, u128 cap);

// Simple sieve; suitable up to ~2e8 at desk scale.
std::vector<u32> primes_up_to(u64 n);

// Trial division, adequate for the moduli this library handles (<= ~1e12).
std::vector<std::pair<u64, int>> factorize(u64 n);

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("tally overflow in 64-bit accumulator");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("tally overflow in 64-bit accumulator");
    return r;
}

// Exact rational with 64-bit parts, normalized with den > 0.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n, i64 d) : num(n), den(d) { normalize(); }
    explicit Rational(i64 n) : num(n), den(1) {}

    void normalize();
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    std::string str() const;
};

} // namespace abext
