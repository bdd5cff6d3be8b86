#include "rtbound/rational.hpp"

#include <mpfr.h>

#include <cctype>

namespace rtbound {

Rat rat_from_decimal(const std::string& text) {
    std::size_t dot = text.find('.');
    std::string digits;
    std::size_t frac_len = 0;
    if (dot == std::string::npos) {
        digits = text;
    } else {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        frac_len = text.size() - dot - 1;
    }
    if (digits.empty()) throw std::invalid_argument("empty numeric literal");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("bad numeric literal: " + text);
    mpz_class num(digits, 10);
    mpz_class den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat round_up_step_1e3(const Rat& x) {
    Rat scaled = x * 1000;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    Rat r(fl + 1, 1000);
    r.canonicalize();
    return r;
}

double to_double(const Rat& x) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

std::string decimal_string(const Rat& x) {
    mpz_class den = x.get_den();
    unsigned long twos = 0, fives = 0;
    mpz_class d = den;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return x.get_num().get_str() + "/" + den.get_str();
    unsigned long k = twos > fives ? twos : fives;
    mpz_class scale(1);
    for (unsigned long i = 0; i < k; ++i) scale *= 10;
    mpz_class scaled = x.get_num() * (scale / den);
    bool neg = scaled < 0;
    std::string s = (neg ? mpz_class(-scaled) : scaled).get_str();
    if (k == 0) return (neg ? "-" : "") + s;
    while (s.size() <= k) s.insert(s.begin(), '0');
    s.insert(s.size() - k, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return (neg ? "-" : "") + s;
}

std::string fixed3_string(const Rat& x) {
    Rat scaled = x * 1000;
    if (scaled.get_den() != 1)
        return decimal_string(x);
    mpz_class v = scaled.get_num();
    bool neg = v < 0;
    std::string s = (neg ? mpz_class(-v) : v).get_str();
    while (s.size() < 4) s.insert(s.begin(), '0');
    s.insert(s.size() - 3, ".");
    return (neg ? "-" : "") + s;
}

}  // namespace rtbound
