#pragma once

#include "rtbound/interval.hpp"
#include "rtbound/recdsl.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace rtbound {

enum class BoundShape;  // see overapprox.hpp
struct OvApPair;

/// Exact linear combination r + s*ln2 + t*e. ln 2 and e stay symbolic until
/// interval resolution at inequality construction.
struct SymCoef {
    Rat plain, ln2, euler;

    SymCoef() : plain(0), ln2(0), euler(0) {}
    SymCoef(Rat p) : plain(std::move(p)), ln2(0), euler(0) {}  // NOLINT(google-explicit-constructor)
    SymCoef(Rat p, Rat l2, Rat e = Rat(0))
        : plain(std::move(p)), ln2(std::move(l2)), euler(std::move(e)) {}

    static SymCoef of(const Coefficient& c) { return SymCoef(c.rational, Rat(0), c.euler); }

    bool is_zero() const { return plain == 0 && ln2 == 0 && euler == 0; }
    bool is_rational() const { return ln2 == 0 && euler == 0; }

    SymCoef operator+(const SymCoef& o) const {
        return {plain + o.plain, ln2 + o.ln2, euler + o.euler};
    }
    SymCoef operator-(const SymCoef& o) const {
        return {plain - o.plain, ln2 - o.ln2, euler - o.euler};
    }
    SymCoef operator-() const { return {-plain, -ln2, -euler}; }

    /// Product; defined only when at least one factor is rational.
    SymCoef operator*(const SymCoef& o) const;

    Interval enclosure() const;
    Rat lower() const { return enclosure().lo; }
    Rat upper() const { return enclosure().hi; }
    bool operator==(const SymCoef& o) const {
        return plain == o.plain && ln2 == o.ln2 && euler == o.euler;
    }
};

/// Monomial exponent of coeff * n^npow * (n-1)^n1pow * ln^lnpow(n).
struct ExtKey {
    int npow = 0;
    int n1pow = 0;
    int lnpow = 0;
    auto operator<=>(const ExtKey&) const = default;
};

/// Extended pseudo-polynomial: rational (or ln2/e-linear) combination of
/// n^a (n-1)^b ln^l n with a >= -2, b >= -1, l in {0,1}.
struct ExtPoly {
    std::map<ExtKey, SymCoef> terms;

    void add(const ExtKey& k, const SymCoef& c);
    ExtPoly operator+(const ExtPoly& o) const;
    ExtPoly operator-(const ExtPoly& o) const;
    ExtPoly scaled(const SymCoef& c) const;

    /// Enclosure of the value at integer n >= 1 (n >= 2 if (n-1) powers are
    /// negative).
    Interval eval(unsigned long n) const;

    bool empty() const { return terms.empty(); }
};

/// Degree with the +1/2 log bump, stored as twice the value.
struct HalfInt {
    int twice = 0;
    static HalfInt whole(int k) { return {2 * k}; }
    static HalfInt half_above(int k) { return {2 * k + 1}; }
    bool is_half() const { return twice % 2 != 0; }
    auto operator<=>(const HalfInt&) const = default;
    std::string str() const;
};

struct Leading {
    bool has_log = false;
    int power = 0;
    Rat coeff;
};

/// Canonical pseudo-polynomial sum a_i n^i ln n + sum b_i n^i with exact
/// rational coefficients (intervals already resolved).
struct PseudoPoly {
    std::vector<Rat> log_coeffs;    // a_0..a_k
    std::vector<Rat> plain_coeffs;  // b_0..b_l

    void normalize();
    bool is_zero() const { return log_coeffs.empty() && plain_coeffs.empty(); }
    HalfInt degree() const;
    Leading leading() const;
    Rat leading_coeff() const { return leading().coeff; }

    Interval eval(unsigned long n) const;
    double eval_double(unsigned long n) const;

    PseudoPoly shifted_up(int k) const;  // multiply by n^k
};

/// The transformed inductive condition d*p(n) >= q(n).
struct Inequality {
    PseudoPoly p, q;
};

/// Rearranges OvAp(e, d*f+c) <= d*f(n)+c into d*p(n) >= q(n): clears
/// denominators with the minimal monomial multiplier (relaxing 1/n^2 to
/// 1/(n(n-1)) where that is both needed and sound), expands (n-1) powers and
/// resolves interval constants (p at lower endpoints, q at upper).
Inequality to_inequality(const OvApPair& ov, BoundShape f, const Coefficient& base_cost);

}  // namespace rtbound
