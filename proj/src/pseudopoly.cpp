#include "rtbound/pseudopoly.hpp"

#include "rtbound/overapprox.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rtbound {

SymCoef SymCoef::operator*(const SymCoef& o) const {
    if (is_rational())
        return {plain * o.plain, plain * o.ln2, plain * o.euler};
    if (o.is_rational())
        return {plain * o.plain, ln2 * o.plain, euler * o.plain};
    throw StructureError("product of two non-rational coefficients");
}

Interval SymCoef::enclosure() const {
    Interval v{plain, plain};
    if (ln2 != 0) v += ln2 * ln2_interval();
    if (euler != 0) v += euler * euler_interval();
    return v;
}

void ExtPoly::add(const ExtKey& k, const SymCoef& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(k, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

ExtPoly ExtPoly::operator+(const ExtPoly& o) const {
    ExtPoly r = *this;
    for (const auto& [k, c] : o.terms) r.add(k, c);
    return r;
}

ExtPoly ExtPoly::operator-(const ExtPoly& o) const {
    ExtPoly r = *this;
    for (const auto& [k, c] : o.terms) r.add(k, -c);
    return r;
}

ExtPoly ExtPoly::scaled(const SymCoef& c) const {
    ExtPoly r;
    for (const auto& [k, v] : terms) r.add(k, v * c);
    return r;
}

namespace {

Interval int_pow(const Rat& base, int e) {
    if (e == 0) return Interval(Rat(1));
    Rat v(1);
    for (int i = 0; i < (e > 0 ? e : -e); ++i) v *= base;
    if (e < 0) v = 1 / v;
    return Interval(v);
}

}  // namespace

Interval ExtPoly::eval(unsigned long n) const {
    Interval sum{Rat(0), Rat(0)};
    Interval lnn = ln_interval(n);
    for (const auto& [k, c] : terms) {
        Interval t = c.enclosure();
        t = t * int_pow(Rat(static_cast<long>(n)), k.npow);
        if (k.n1pow != 0) {
            if (n == 1 && k.n1pow < 0)
                throw std::domain_error("(n-1) pole at n=1");
            t = t * int_pow(Rat(static_cast<long>(n) - 1), k.n1pow);
        }
        for (int i = 0; i < k.lnpow; ++i) t = t * lnn;
        sum += t;
    }
    return sum;
}

std::string HalfInt::str() const {
    std::ostringstream os;
    if (twice % 2 == 0)
        os << twice / 2;
    else
        os << twice / 2 << ".5";
    return os.str();
}

void PseudoPoly::normalize() {
    while (!log_coeffs.empty() && log_coeffs.back() == 0) log_coeffs.pop_back();
    while (!plain_coeffs.empty() && plain_coeffs.back() == 0) plain_coeffs.pop_back();
}

HalfInt PseudoPoly::degree() const {
    int k = static_cast<int>(log_coeffs.size()) - 1;
    int l = static_cast<int>(plain_coeffs.size()) - 1;
    if (k >= 0 && k >= l) return HalfInt::half_above(k);
    return HalfInt::whole(l < 0 ? 0 : l);
}

Leading PseudoPoly::leading() const {
    int k = static_cast<int>(log_coeffs.size()) - 1;
    int l = static_cast<int>(plain_coeffs.size()) - 1;
    Leading lead;
    if (k >= 0 && k >= l) {
        lead.has_log = true;
        lead.power = k;
        lead.coeff = log_coeffs[k];
    } else {
        lead.has_log = false;
        lead.power = l < 0 ? 0 : l;
        lead.coeff = l < 0 ? Rat(0) : plain_coeffs[l];
    }
    return lead;
}

Interval PseudoPoly::eval(unsigned long n) const {
    Interval sum{Rat(0), Rat(0)};
    Interval lnn = ln_interval(n);
    Rat npow(1);
    for (std::size_t i = 0; i < log_coeffs.size() || i < plain_coeffs.size(); ++i) {
        if (i < log_coeffs.size() && log_coeffs[i] != 0)
            sum += (log_coeffs[i] * npow) * lnn;
        if (i < plain_coeffs.size() && plain_coeffs[i] != 0)
            sum += Interval(plain_coeffs[i] * npow);
        npow *= static_cast<long>(n);
    }
    return sum;
}

double PseudoPoly::eval_double(unsigned long n) const {
    double lnn = std::log(static_cast<double>(n));
    double sum = 0.0;
    double npow = 1.0;
    for (std::size_t i = 0; i < log_coeffs.size() || i < plain_coeffs.size(); ++i) {
        if (i < log_coeffs.size() && log_coeffs[i] != 0)
            sum += to_double(log_coeffs[i]) * npow * lnn;
        if (i < plain_coeffs.size() && plain_coeffs[i] != 0)
            sum += to_double(plain_coeffs[i]) * npow;
        npow *= static_cast<double>(n);
    }
    return sum;
}

PseudoPoly PseudoPoly::shifted_up(int k) const {
    PseudoPoly r;
    r.log_coeffs.assign(static_cast<std::size_t>(k), Rat(0));
    r.plain_coeffs.assign(static_cast<std::size_t>(k), Rat(0));
    r.log_coeffs.insert(r.log_coeffs.end(), log_coeffs.begin(), log_coeffs.end());
    r.plain_coeffs.insert(r.plain_coeffs.end(), plain_coeffs.begin(), plain_coeffs.end());
    r.normalize();
    return r;
}

// ---------------------------------------------------------------------------
// Inequality construction (the Transformation step)

namespace {

// Binomial expansion of coeff * n^a (n-1)^b ln^l into pure n powers, b >= 0.
void expand_into(std::map<std::pair<int, int>, SymCoef>& out, const ExtKey& k,
                 const SymCoef& c) {
    if (k.n1pow < 0) throw StructureError("unresolved (n-1) denominator");
    std::vector<Rat> binom(static_cast<std::size_t>(k.n1pow) + 1);
    binom[0] = 1;
    for (int i = 1; i <= k.n1pow; ++i)
        binom[static_cast<std::size_t>(i)] =
            binom[static_cast<std::size_t>(i - 1)] * (k.n1pow - i + 1) / i;
    for (int j = 0; j <= k.n1pow; ++j) {
        // (n-1)^b = sum_j C(b,j) n^(b-j) (-1)^j
        Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
        SymCoef term = c * SymCoef(binom[static_cast<std::size_t>(j)] * sign);
        auto key = std::make_pair(k.npow + k.n1pow - j, k.lnpow);
        auto [it, inserted] = out.emplace(key, term);
        if (!inserted) it->second = it->second + term;
    }
}

struct ClearedPoly {
    std::map<std::pair<int, int>, SymCoef> terms;  // (npow, lnpow) -> coeff
};

PseudoPoly resolve(const ClearedPoly& cp, bool lower_endpoints) {
    PseudoPoly r;
    for (const auto& [key, c] : cp.terms) {
        auto [npow, lnpow] = key;
        if (npow < 0) throw StructureError("unresolved denominator after clearing");
        if (lnpow > 1) throw StructureError("ln power above 1 is outside the form");
        Rat v = lower_endpoints ? c.lower() : c.upper();
        auto& vec = lnpow == 1 ? r.log_coeffs : r.plain_coeffs;
        if (vec.size() <= static_cast<std::size_t>(npow))
            vec.resize(static_cast<std::size_t>(npow) + 1, Rat(0));
        vec[static_cast<std::size_t>(npow)] += v;
    }
    r.normalize();
    return r;
}

}  // namespace

Inequality to_inequality(const OvApPair& ov, BoundShape f, const Coefficient& base_cost) {
    // d*f + c >= OvAp = d*p_d + p_c   <=>   d*(f - p_d) >= p_c - c
    ExtPoly p0 = shape_poly(f) - ov.p_d;
    ExtPoly q0 = ov.p_c;
    q0.add(ExtKey{0, 0, 0}, -SymCoef::of(base_cost));

    // Relax 1/n^2 terms to 1/(n(n-1)) only when an (n-1) denominator already
    // forces the multiplier, and only in the sound direction (shrinking p0,
    // enlarging q0). Otherwise the plain n^2 multiplier clears them exactly.
    auto has_n1_denominator = [](const ExtPoly& e) {
        for (const auto& [k, c] : e.terms)
            if (k.n1pow < 0) return true;
        return false;
    };
    bool need_relax = has_n1_denominator(p0) || has_n1_denominator(q0);
    auto relax = [&](ExtPoly& e, bool is_p) {
        if (!need_relax) return;
        ExtPoly out;
        for (const auto& [k, c] : e.terms) {
            if (k.npow == -2 && k.n1pow == 0) {
                Interval enc = c.enclosure();
                bool sound = is_p ? enc.hi <= 0 : enc.lo >= 0;
                if (sound) {
                    out.add(ExtKey{-1, -1, k.lnpow}, c);
                    continue;
                }
            }
            out.add(k, c);
        }
        e = std::move(out);
    };
    relax(p0, true);
    relax(q0, false);

    int need_a = 0, need_b = 0;
    for (const ExtPoly* e : {&p0, &q0})
        for (const auto& [k, c] : e->terms) {
            need_a = std::max(need_a, -k.npow);
            need_b = std::max(need_b, -k.n1pow);
        }

    ClearedPoly pc, qc;
    for (const auto& [k, c] : p0.terms)
        expand_into(pc.terms, ExtKey{k.npow + need_a, k.n1pow + need_b, k.lnpow}, c);
    for (const auto& [k, c] : q0.terms)
        expand_into(qc.terms, ExtKey{k.npow + need_a, k.n1pow + need_b, k.lnpow}, c);

    Inequality ineq;
    ineq.p = resolve(pc, /*lower_endpoints=*/true);
    ineq.q = resolve(qc, /*lower_endpoints=*/false);

    for (const Rat& b : ineq.q.log_coeffs)
        if (b < 0) throw StructureError("q acquired a negative coefficient");
    for (const Rat& b : ineq.q.plain_coeffs)
        if (b < 0) throw StructureError("q acquired a negative coefficient");
    if (!(ineq.q.leading_coeff() > 0)) throw StructureError("C_q is not positive");
    return ineq;
}

}  // namespace rtbound
