#include "abext/interval.hpp"

#include <algorithm>
#include <limits>

namespace abext {

namespace {

const double INF = std::numeric_limits<double>::infinity();

inline double down(double x) { return std::nextafter(x, -INF); }
inline double up(double x) { return std::nextafter(x, INF); }
inline double down2(double x) { return down(down(x)); }
inline double up2(double x) { return up(up(x)); }

} // namespace

Interval Interval::operator+(const Interval& o) const {
    return Interval(down(lo + o.lo), up(hi + o.hi));
}

Interval Interval::operator-(const Interval& o) const {
    return Interval(down(lo - o.hi), up(hi - o.lo));
}

Interval Interval::operator*(const Interval& o) const {
    double c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    double mn = *std::min_element(c, c + 4);
    double mx = *std::max_element(c, c + 4);
    return Interval(down(mn), up(mx));
}

Interval Interval::operator/(const Interval& o) const {
    if (o.lo <= 0.0 && o.hi >= 0.0)
        throw std::domain_error("interval division by interval containing zero");
    double c[4] = {lo / o.lo, lo / o.hi, hi / o.lo, hi / o.hi};
    double mn = *std::min_element(c, c + 4);
    double mx = *std::max_element(c, c + 4);
    return Interval(down(mn), up(mx));
}

std::string Interval::str() const {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "[%.17g, %.17g]", lo, hi);
    return buf;
}

Interval int_exp(const Interval& x) {
    return Interval(down2(std::exp(x.lo)), up2(std::exp(x.hi)));
}

Interval int_log(const Interval& x) {
    if (x.lo <= 0.0) throw std::domain_error("log of non-positive interval");
    return Interval(down2(std::log(x.lo)), up2(std::log(x.hi)));
}

Interval int_pow(const Interval& x, int n) {
    if (n == 0) return Interval::exact(1.0);
    if (n < 0) return Interval::exact(1.0) / int_pow(x, -n);
    Interval r = Interval::exact(1.0);
    Interval b = x;
    int e = n;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Interval int_pow(const Interval& x, const Interval& e) {
    if (x.lo <= 0.0) throw std::domain_error("pow of non-positive interval");
    return int_exp(int_log(x) * e);
}

Interval int_recip_pow(double base, double expo) {
    if (base <= 1.0 || expo <= 0.0) throw std::domain_error("int_recip_pow domain");
    double v = std::pow(base, -expo);
    return Interval(down2(v), up2(v));
}

Interval int_hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval int_intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo > hi) throw std::domain_error("empty interval intersection");
    return Interval(lo, hi);
}

} // namespace abext
