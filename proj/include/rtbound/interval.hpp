#pragma once

#include "rtbound/rational.hpp"

namespace rtbound {

/// Closed rational interval [lo, hi]. Arithmetic on rationals is exact, so
/// width only ever enters through the transcendental constants below.
struct Interval {
    Rat lo, hi;

    Interval() : lo(0), hi(0) {}
    explicit Interval(const Rat& x) : lo(x), hi(x) {}
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

    bool is_point() const { return lo == hi; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator*(const Interval& o) const;
    Interval& operator+=(const Interval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
};

Interval operator*(const Rat& c, const Interval& iv);

/// Number of bits used when enclosing ln n, ln 2 and e between rational
/// endpoints. Defaults to 60; the RTBOUND_PRECISION environment variable
/// overrides it at startup.
unsigned transcendental_precision();
void set_transcendental_precision(unsigned bits);

Interval ln2_interval();
Interval euler_interval();

/// Enclosure of ln n for a positive integer n (ln 1 = [0,0]).
Interval ln_interval(unsigned long n);

}  // namespace rtbound
