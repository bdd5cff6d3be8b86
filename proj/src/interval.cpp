#include "rtbound/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>

namespace rtbound {

Interval Interval::operator*(const Interval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)),
            std::max(std::max(a, b), std::max(c, d))};
}

Interval operator*(const Rat& c, const Interval& iv) {
    if (c >= 0) return {c * iv.lo, c * iv.hi};
    return {c * iv.hi, c * iv.lo};
}

namespace {

unsigned initial_precision() {
    if (const char* env = std::getenv("RTBOUND_PRECISION")) {
        long v = std::atol(env);
        if (v >= 8 && v <= 4096) return static_cast<unsigned>(v);
    }
    return 60;
}

unsigned g_precision = initial_precision();

Rat rat_of_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rat(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rat r(mant);
    if (e >= 0) {
        mpz_class p(1);
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        r *= Rat(p);
    } else {
        mpz_class p(1);
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        r /= Rat(p);
    }
    r.canonicalize();
    return r;
}

std::mutex g_cache_mutex;
std::map<unsigned long, Interval> g_ln_cache;
unsigned g_ln_cache_precision = 0;

}  // namespace

unsigned transcendental_precision() { return g_precision; }

void set_transcendental_precision(unsigned bits) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_precision = bits;
    g_ln_cache.clear();
    g_ln_cache_precision = bits;
}

Interval ln2_interval() {
    mpfr_t lo, hi;
    mpfr_init2(lo, g_precision);
    mpfr_init2(hi, g_precision);
    mpfr_const_log2(lo, MPFR_RNDD);
    mpfr_const_log2(hi, MPFR_RNDU);
    Interval r{rat_of_mpfr(lo), rat_of_mpfr(hi)};
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

Interval euler_interval() {
    mpfr_t one, lo, hi;
    mpfr_init2(one, g_precision);
    mpfr_init2(lo, g_precision);
    mpfr_init2(hi, g_precision);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_exp(lo, one, MPFR_RNDD);
    mpfr_exp(hi, one, MPFR_RNDU);
    Interval r{rat_of_mpfr(lo), rat_of_mpfr(hi)};
    mpfr_clear(one);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

Interval ln_interval(unsigned long n) {
    if (n == 0) throw std::domain_error("ln of 0");
    if (n == 1) return Interval(Rat(0));
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        if (g_ln_cache_precision == g_precision) {
            auto it = g_ln_cache.find(n);
            if (it != g_ln_cache.end()) return it->second;
        } else {
            g_ln_cache.clear();
            g_ln_cache_precision = g_precision;
        }
    }
    mpfr_t x, lo, hi;
    mpfr_init2(x, g_precision);
    mpfr_init2(lo, g_precision);
    mpfr_init2(hi, g_precision);
    mpfr_set_ui(x, n, MPFR_RNDN);
    mpfr_log(lo, x, MPFR_RNDD);
    mpfr_log(hi, x, MPFR_RNDU);
    Interval r{rat_of_mpfr(lo), rat_of_mpfr(hi)};
    mpfr_clear(x);
    mpfr_clear(lo);
    mpfr_clear(hi);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (g_ln_cache.size() < 1u << 20) g_ln_cache.emplace(n, r);
    return r;
}

}  // namespace rtbound
