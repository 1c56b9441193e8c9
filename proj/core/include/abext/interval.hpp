#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace abext {

// Closed interval [lo, hi] with double endpoints.
//
// Every operation rounds outward: the raw result is computed in
// round-to-nearest (error <= 0.5 ulp) and each endpoint is then stepped one
// ulp outward with nextafter, so the returned interval encloses the exact
// result.  Calls into libm (exp, log, pow) are assumed faithful to within
// 1 ulp and get stepped two ulps.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw std::invalid_argument("interval endpoints out of order");
    }
    static Interval exact(double x) { return Interval(x, x); }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_positive() const { return lo > 0.0; }

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const; // o must not contain 0
    Interval operator*(double s) const { return *this * exact(s); }

    std::string str() const;
};

Interval int_exp(const Interval& x);
Interval int_log(const Interval& x);             // x.lo > 0
Interval int_pow(const Interval& x, int n);      // integer power
Interval int_pow(const Interval& x, const Interval& e); // x.lo > 0
Interval int_recip_pow(double base, double expo); // encloses base^(-expo), base>1, expo>0

// hull / intersection
Interval int_hull(const Interval& a, const Interval& b);
Interval int_intersect(const Interval& a, const Interval& b); // throws if empty

} // namespace abext
