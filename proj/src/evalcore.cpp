#include "rtbound/evalcore.hpp"

#include <mpfr.h>

#include <algorithm>

namespace rtbound {

bool relation_is_rational(const UniRecurrence& rec) {
    if (rec.base_cost.euler != 0) return false;
    for (const auto& t : rec.expr.terms) {
        if (t.coef.euler != 0) return false;
        if (t.atom == Atom::LnVar || t.atom == Atom::VarLnVar) return false;
    }
    return true;
}

namespace {

// ---------------------------------------------------------------------------
// Exact path

struct ExactEval {
    const UniRecurrence& rec;
    std::vector<Rat> values;  // values[n]
    std::vector<Rat> prefix;  // prefix[n] = sum of values[1..n]

    explicit ExactEval(const UniRecurrence& r, std::uint64_t upto) : rec(r) {
        values.resize(upto + 1, Rat(0));
        prefix.resize(upto + 1, Rat(0));
        values[1] = rec.base_cost.rational;
        prefix[1] = values[1];
        for (std::uint64_t n = 2; n <= upto; ++n) {
            values[n] = step(n);
            prefix[n] = prefix[n - 1] + values[n];
        }
    }

    Rat step(std::uint64_t n) const {
        Rat v(0);
        Rat rn(static_cast<long>(n));
        for (const auto& t : rec.expr.terms) {
            const Rat& c = t.coef.rational;
            switch (t.atom) {
                case Atom::One: v += c; break;
                case Atom::Var: v += c * rn; break;
                case Atom::InvVar: v += c / rn; break;
                case Atom::TPred: v += c * values[n - 1]; break;
                case Atom::TFloorHalf: v += c * values[n / 2]; break;
                case Atom::TCeilHalf: v += c * values[(n + 1) / 2]; break;
                case Atom::AvgAll: v += c * prefix[n - 1] / rn; break;
                case Atom::AvgHalves: {
                    std::uint64_t lo_c = (n + 1) / 2, lo_f = n / 2;
                    Rat s = (prefix[n - 1] - prefix[lo_c - 1]) +
                            (prefix[n - 1] - prefix[lo_f - 1]);
                    v += c * s / rn;
                    break;
                }
                default:
                    throw std::logic_error("ln atom in exact evaluation");
            }
        }
        return v;
    }
};

// ---------------------------------------------------------------------------
// Certified path: dyadic intervals at fixed precision with outward rounding.
// All DP quantities are positive, so endpoint arithmetic is monotone.

constexpr unsigned kCertifiedBits = 128;

struct MpfrInterval {
    mpfr_t lo, hi;
    MpfrInterval() {
        mpfr_init2(lo, kCertifiedBits);
        mpfr_init2(hi, kCertifiedBits);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    ~MpfrInterval() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    MpfrInterval(const MpfrInterval&) = delete;
    MpfrInterval& operator=(const MpfrInterval&) = delete;
};

Rat rat_of(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rat(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rat r(mant);
    mpz_class p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
    if (e >= 0)
        r *= Rat(p);
    else
        r /= Rat(p);
    r.canonicalize();
    return r;
}

struct CertifiedEval {
    const UniRecurrence& rec;
    std::vector<Rat> lo, hi;
    mpfr_t t, u, elo, ehi, base_lo, base_hi;

    explicit CertifiedEval(const UniRecurrence& r, std::uint64_t upto) : rec(r) {
        mpfr_inits2(kCertifiedBits, t, u, elo, ehi, base_lo, base_hi,
                    static_cast<mpfr_ptr>(nullptr));
        mpfr_set_ui(t, 1, MPFR_RNDN);
        mpfr_exp(elo, t, MPFR_RNDD);
        mpfr_exp(ehi, t, MPFR_RNDU);

        lo.resize(upto + 1, Rat(0));
        hi.resize(upto + 1, Rat(0));

        coef_value(rec.base_cost, base_lo, base_hi);
        lo[1] = rat_of(base_lo);
        hi[1] = rat_of(base_hi);

        std::vector<mpfr_t> vlo(upto + 1), vhi(upto + 1), slo(upto + 1), shi(upto + 1);
        for (std::uint64_t i = 0; i <= upto; ++i) {
            mpfr_init2(vlo[i], kCertifiedBits);
            mpfr_init2(vhi[i], kCertifiedBits);
            mpfr_init2(slo[i], kCertifiedBits);
            mpfr_init2(shi[i], kCertifiedBits);
            mpfr_set_zero(vlo[i], 1);
            mpfr_set_zero(vhi[i], 1);
            mpfr_set_zero(slo[i], 1);
            mpfr_set_zero(shi[i], 1);
        }
        mpfr_set(vlo[1], base_lo, MPFR_RNDD);
        mpfr_set(vhi[1], base_hi, MPFR_RNDU);
        mpfr_set(slo[1], base_lo, MPFR_RNDD);
        mpfr_set(shi[1], base_hi, MPFR_RNDU);

        for (std::uint64_t n = 2; n <= upto; ++n) {
            step(n, vlo, vhi, slo, shi);
            lo[n] = rat_of(vlo[n]);
            hi[n] = rat_of(vhi[n]);
        }
        for (std::uint64_t i = 0; i <= upto; ++i) {
            mpfr_clear(vlo[i]);
            mpfr_clear(vhi[i]);
            mpfr_clear(slo[i]);
            mpfr_clear(shi[i]);
        }
    }

    ~CertifiedEval() {
        mpfr_clears(t, u, elo, ehi, base_lo, base_hi, static_cast<mpfr_ptr>(nullptr));
    }

    void coef_value(const Coefficient& c, mpfr_ptr out_lo, mpfr_ptr out_hi) {
        mpfr_set_q(out_lo, c.rational.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(out_hi, c.rational.get_mpq_t(), MPFR_RNDU);
        if (c.euler != 0) {
            mpfr_set_q(t, c.euler.get_mpq_t(), MPFR_RNDD);
            mpfr_mul(t, t, elo, MPFR_RNDD);  // euler coefficients are positive
            mpfr_add(out_lo, out_lo, t, MPFR_RNDD);
            mpfr_set_q(u, c.euler.get_mpq_t(), MPFR_RNDU);
            mpfr_mul(u, u, ehi, MPFR_RNDU);
            mpfr_add(out_hi, out_hi, u, MPFR_RNDU);
        }
    }

    void step(std::uint64_t n, std::vector<mpfr_t>& vlo, std::vector<mpfr_t>& vhi,
              std::vector<mpfr_t>& slo, std::vector<mpfr_t>& shi) {
        mpfr_t acc_lo, acc_hi, clo, chi, term_lo, term_hi, lnn_lo, lnn_hi;
        mpfr_inits2(kCertifiedBits, acc_lo, acc_hi, clo, chi, term_lo, term_hi, lnn_lo,
                    lnn_hi, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_zero(acc_lo, 1);
        mpfr_set_zero(acc_hi, 1);
        mpfr_set_ui(lnn_lo, n, MPFR_RNDD);
        mpfr_log(lnn_lo, lnn_lo, MPFR_RNDD);
        mpfr_set_ui(lnn_hi, n, MPFR_RNDU);
        mpfr_log(lnn_hi, lnn_hi, MPFR_RNDU);

        for (const auto& tm : rec.expr.terms) {
            coef_value(tm.coef, clo, chi);
            switch (tm.atom) {
                case Atom::One:
                    mpfr_set(term_lo, clo, MPFR_RNDD);
                    mpfr_set(term_hi, chi, MPFR_RNDU);
                    break;
                case Atom::Var:
                    mpfr_mul_ui(term_lo, clo, n, MPFR_RNDD);
                    mpfr_mul_ui(term_hi, chi, n, MPFR_RNDU);
                    break;
                case Atom::InvVar:
                    mpfr_div_ui(term_lo, clo, n, MPFR_RNDD);
                    mpfr_div_ui(term_hi, chi, n, MPFR_RNDU);
                    break;
                case Atom::LnVar:
                    mpfr_mul(term_lo, clo, lnn_lo, MPFR_RNDD);
                    mpfr_mul(term_hi, chi, lnn_hi, MPFR_RNDU);
                    break;
                case Atom::VarLnVar:
                    mpfr_mul(term_lo, clo, lnn_lo, MPFR_RNDD);
                    mpfr_mul_ui(term_lo, term_lo, n, MPFR_RNDD);
                    mpfr_mul(term_hi, chi, lnn_hi, MPFR_RNDU);
                    mpfr_mul_ui(term_hi, term_hi, n, MPFR_RNDU);
                    break;
                case Atom::TPred:
                    mpfr_mul(term_lo, clo, vlo[n - 1], MPFR_RNDD);
                    mpfr_mul(term_hi, chi, vhi[n - 1], MPFR_RNDU);
                    break;
                case Atom::TFloorHalf:
                    mpfr_mul(term_lo, clo, vlo[n / 2], MPFR_RNDD);
                    mpfr_mul(term_hi, chi, vhi[n / 2], MPFR_RNDU);
                    break;
                case Atom::TCeilHalf:
                    mpfr_mul(term_lo, clo, vlo[(n + 1) / 2], MPFR_RNDD);
                    mpfr_mul(term_hi, chi, vhi[(n + 1) / 2], MPFR_RNDU);
                    break;
                case Atom::AvgAll:
                    mpfr_mul(term_lo, clo, slo[n - 1], MPFR_RNDD);
                    mpfr_div_ui(term_lo, term_lo, n, MPFR_RNDD);
                    mpfr_mul(term_hi, chi, shi[n - 1], MPFR_RNDU);
                    mpfr_div_ui(term_hi, term_hi, n, MPFR_RNDU);
                    break;
                case Atom::AvgHalves: {
                    std::uint64_t lo_c = (n + 1) / 2, lo_f = n / 2;
                    // lower endpoint: sums of lower values
                    mpfr_sub(term_lo, slo[n - 1], shi[lo_c - 1], MPFR_RNDD);
                    mpfr_sub(t, slo[n - 1], shi[lo_f - 1], MPFR_RNDD);
                    mpfr_add(term_lo, term_lo, t, MPFR_RNDD);
                    mpfr_mul(term_lo, term_lo, clo, MPFR_RNDD);
                    mpfr_div_ui(term_lo, term_lo, n, MPFR_RNDD);
                    mpfr_sub(term_hi, shi[n - 1], slo[lo_c - 1], MPFR_RNDU);
                    mpfr_sub(u, shi[n - 1], slo[lo_f - 1], MPFR_RNDU);
                    mpfr_add(term_hi, term_hi, u, MPFR_RNDU);
                    mpfr_mul(term_hi, term_hi, chi, MPFR_RNDU);
                    mpfr_div_ui(term_hi, term_hi, n, MPFR_RNDU);
                    break;
                }
            }
            mpfr_add(acc_lo, acc_lo, term_lo, MPFR_RNDD);
            mpfr_add(acc_hi, acc_hi, term_hi, MPFR_RNDU);
        }
        mpfr_set(vlo[n], acc_lo, MPFR_RNDD);
        mpfr_set(vhi[n], acc_hi, MPFR_RNDU);
        mpfr_add(slo[n], slo[n - 1], acc_lo, MPFR_RNDD);
        mpfr_add(shi[n], shi[n - 1], acc_hi, MPFR_RNDU);
        mpfr_clears(acc_lo, acc_hi, clo, chi, term_lo, term_hi, lnn_lo, lnn_hi,
                    static_cast<mpfr_ptr>(nullptr));
    }
};

}  // namespace

EvalTable eval_uni(const UniRecurrence& rec, std::uint64_t upto, EvalMode mode,
                   std::uint64_t cap) {
    if (upto < 1) throw std::invalid_argument("upto must be >= 1");
    if (upto > cap)
        throw ResourceError("evaluation table of " + std::to_string(upto) +
                            " entries exceeds the cap of " + std::to_string(cap));
    bool rational = relation_is_rational(rec);
    bool exact = mode == EvalMode::Exact || (mode == EvalMode::Auto && rational);
    if (exact && !rational)
        throw std::invalid_argument("exact evaluation of a relation containing ln or e");

    EvalTable table;
    table.limit = upto;
    table.exact = exact;
    if (exact) {
        ExactEval ev(rec, upto);
        table.values = std::move(ev.values);
    } else {
        CertifiedEval ev(rec, upto);
        table.ivalues.resize(upto + 1);
        for (std::uint64_t n = 1; n <= upto; ++n)
            table.ivalues[n] = Interval(ev.lo[n], ev.hi[n]);
    }
    return table;
}

Interval subst_value(const RecExpr& expr, std::uint64_t n) {
    Interval sum{Rat(0), Rat(0)};
    Rat rn(static_cast<long>(n));
    for (const auto& t : expr.terms) {
        Interval c = t.coef.value();
        switch (t.atom) {
            case Atom::One: sum += c; break;
            case Atom::Var: sum += rn * c; break;
            case Atom::InvVar: sum += (1 / rn) * c; break;
            case Atom::LnVar: sum += c * ln_interval(n); break;
            case Atom::VarLnVar: sum += (rn * c) * ln_interval(n); break;
            default: throw std::invalid_argument("T-term in a non-recursive expression");
        }
    }
    return sum;
}

Interval eval_bi(const BiRecurrence& rec, std::uint64_t n, std::uint64_t m,
                 std::uint64_t cap) {
    if (n < 1 || m < 1) throw std::invalid_argument("arguments must be >= 1");
    if (m > cap)
        throw ResourceError("bivariate evaluation over " + std::to_string(m) +
                            " rows exceeds the cap of " + std::to_string(cap));
    Interval h = subst_value(rec.h_part, n);
    std::vector<Interval> vals(m + 1);
    std::vector<Interval> pref(m + 1);
    vals[1] = h * rec.base_cost.value();
    pref[1] = vals[1];
    for (std::uint64_t k = 2; k <= m; ++k) {
        Interval v = h * subst_value(rec.b_part, k);
        Rat rk(static_cast<long>(k));
        for (const auto& t : rec.e_part.terms) {
            Interval c = t.coef.value();
            switch (t.atom) {
                case Atom::TPred: v += c * vals[k - 1]; break;
                case Atom::TFloorHalf: v += c * vals[k / 2]; break;
                case Atom::TCeilHalf: v += c * vals[(k + 1) / 2]; break;
                case Atom::AvgAll: v += (1 / rk) * (c * pref[k - 1]); break;
                case Atom::AvgHalves: {
                    std::uint64_t lo_c = (k + 1) / 2, lo_f = k / 2;
                    Interval s = (pref[k - 1] - pref[lo_c - 1]) +
                                 (pref[k - 1] - pref[lo_f - 1]);
                    v += (1 / rk) * (c * s);
                    break;
                }
                default: throw std::logic_error("non-T atom in bivariate e-part");
            }
        }
        vals[k] = v;
        pref[k] = pref[k - 1] + v;
    }
    return vals[m];
}

Rat max_ratio_below(const UniRecurrence& rec, BoundShape f, std::uint64_t lo,
                    std::uint64_t hi, const EvalTable* table) {
    Rat best(0);
    if (hi <= lo) return best;
    EvalTable local;
    if (table == nullptr || table->limit < hi - 1) {
        bool small = hi - 1 <= 4000;
        local = eval_uni(rec, hi - 1,
                         small ? EvalMode::Auto : EvalMode::Certified);
        table = &local;
    }
    Rat c_lo = rec.base_cost.value().lo;
    for (std::uint64_t n = lo; n < hi; ++n) {
        Rat num = table->at(n).hi - c_lo;
        if (num <= 0) continue;
        Rat ratio = num / shape_value_lower(f, n);
        if (ratio > best) best = ratio;
    }
    return best;
}

Rat d_z(const UniRecurrence& rec, BoundShape f, std::uint64_t z, const EvalTable* table) {
    if (z < 2) throw std::invalid_argument("z must be >= 2");
    return round_up_step_1e3(max_ratio_below(rec, f, 2, z, table));
}

}  // namespace rtbound
