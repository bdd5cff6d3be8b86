#include "rtbound/overapprox.hpp"

#include <mpfr.h>

#include <mutex>

namespace rtbound {

std::string shape_string(BoundShape f, const std::string& var) {
    switch (f) {
        case BoundShape::LogN: return "ln " + var;
        case BoundShape::Linear: return var;
        case BoundShape::NLogN: return var + " ln " + var;
    }
    return "?";
}

ExtPoly shape_poly(BoundShape f) {
    ExtPoly e;
    switch (f) {
        case BoundShape::LogN: e.add({0, 0, 1}, SymCoef(Rat(1))); break;
        case BoundShape::Linear: e.add({1, 0, 0}, SymCoef(Rat(1))); break;
        case BoundShape::NLogN: e.add({1, 0, 1}, SymCoef(Rat(1))); break;
    }
    return e;
}

Interval shape_value(BoundShape f, unsigned long n) {
    switch (f) {
        case BoundShape::LogN: return ln_interval(n);
        case BoundShape::Linear: return Interval(Rat(static_cast<long>(n)));
        case BoundShape::NLogN: return Rat(static_cast<long>(n)) * ln_interval(n);
    }
    return Interval(Rat(0));
}

Rat shape_value_lower(BoundShape f, unsigned long n) { return shape_value(f, n).lo; }

ExtPoly gamma_ln() {
    // int_1^n ln x dx - (1/2) int_1^n dx/x = n ln n - n - (ln n)/2 + 1
    ExtPoly g;
    g.add({1, 0, 1}, SymCoef(Rat(1)));
    g.add({1, 0, 0}, SymCoef(Rat(-1)));
    g.add({0, 0, 1}, SymCoef(rat_of(-1, 2)));
    g.add({0, 0, 0}, SymCoef(Rat(1)));
    return g;
}

ExtPoly gamma_inv() {
    ExtPoly g;
    g.add({0, 0, 1}, SymCoef(Rat(1)));
    return g;
}

ExtPoly gamma_nln() {
    // int x ln x - (1/2) int ln x + (1/12) int 1/x - (n-1)/2
    ExtPoly g;
    g.add({2, 0, 1}, SymCoef(rat_of(1, 2)));
    g.add({2, 0, 0}, SymCoef(rat_of(-1, 4)));
    g.add({1, 0, 1}, SymCoef(rat_of(-1, 2)));
    g.add({0, 0, 1}, SymCoef(rat_of(1, 12)));
    g.add({0, 0, 0}, SymCoef(rat_of(1, 4)));
    return g;
}

namespace {

struct CellTerm {
    int npow, n1pow, lnpow;
    long num, den;    // rational part
    long l2num = 0;   // ln2 multiple, l2num/l2den
    long l2den = 1;
};

ExtPoly make_cell(std::initializer_list<CellTerm> ts) {
    ExtPoly e;
    for (const auto& t : ts)
        e.add({t.npow, t.n1pow, t.lnpow}, SymCoef(rat_of(t.num, t.den), rat_of(t.l2num, t.l2den)));
    return e;
}

struct CellTable {
    ExtPoly cells[3][5];
    CellTable() {
        auto idx = [](Atom a) {
            switch (a) {
                case Atom::TPred: return 0;
                case Atom::TFloorHalf: return 1;
                case Atom::TCeilHalf: return 2;
                case Atom::AvgAll: return 3;
                case Atom::AvgHalves: return 4;
                default: throw std::logic_error("not a T atom");
            }
        };
        auto set = [&](BoundShape f, Atom a, ExtPoly e) {
            cells[static_cast<int>(f)][idx(a)] = std::move(e);
        };
        // f = ln n
        set(BoundShape::LogN, Atom::TPred,
            make_cell({{0, 0, 1, 1, 1}, {-1, 0, 0, -1, 1}}));
        set(BoundShape::LogN, Atom::TFloorHalf,
            make_cell({{0, 0, 1, 1, 1}, {0, 0, 0, 0, 1, -1, 1}}));
        set(BoundShape::LogN, Atom::TCeilHalf,
            make_cell({{0, 0, 1, 1, 1}, {0, 0, 0, 0, 1, -1, 1}, {-1, 0, 0, 1, 1}}));
        set(BoundShape::LogN, Atom::AvgAll,
            make_cell({{0, 0, 1, 1, 1}, {0, 0, 0, -1, 1}, {-1, 0, 1, -1, 2}, {-1, 0, 0, 13, 12}}));
        set(BoundShape::LogN, Atom::AvgHalves,
            make_cell({{0, 0, 1, 1, 1},
                       {0, 0, 0, -1, 1, 1, 1},   // -(1 - ln 2)
                       {-1, 0, 1, 1, 2},
                       {-1, 0, 0, 417, 625},     // 0.6672
                       {-2, 0, 0, 1, 2}}));
        // f = n
        set(BoundShape::Linear, Atom::TPred,
            make_cell({{1, 0, 0, 1, 1}, {0, 0, 0, -1, 1}}));
        set(BoundShape::Linear, Atom::TFloorHalf, make_cell({{1, 0, 0, 1, 2}}));
        set(BoundShape::Linear, Atom::TCeilHalf,
            make_cell({{1, 0, 0, 1, 2}, {0, 0, 0, 1, 2}}));
        set(BoundShape::Linear, Atom::AvgAll,
            make_cell({{1, 0, 0, 1, 2}, {0, 0, 0, -1, 2}}));
        set(BoundShape::Linear, Atom::AvgHalves,
            make_cell({{1, 0, 0, 3, 4}, {-1, 0, 0, -1, 4}}));
        // f = n ln n
        set(BoundShape::NLogN, Atom::TPred,
            make_cell({{1, 0, 1, 1, 1}, {0, 0, 1, -1, 1}, {0, 0, 0, -1, 1}, {-1, 0, 0, 1, 1}}));
        set(BoundShape::NLogN, Atom::TFloorHalf,
            make_cell({{1, 0, 1, 1, 2}, {1, 0, 0, 0, 1, -1, 2}}));
        set(BoundShape::NLogN, Atom::TCeilHalf,
            make_cell({{1, 0, 1, 1, 2},
                       {1, 0, 0, 0, 1, -1, 2},
                       {0, 0, 0, 1, 2, -1, 2},   // (1 - ln 2)/2
                       {0, 0, 1, 1, 2},
                       {-1, 0, 0, 1, 2}}));
        set(BoundShape::NLogN, Atom::AvgAll,
            make_cell({{1, 0, 1, 1, 2},
                       {1, 0, 0, -1, 4},
                       {0, 0, 1, -1, 2},
                       {-1, 0, 1, 1, 12},
                       {-1, 0, 0, 5139, 10000}}));
        set(BoundShape::NLogN, Atom::AvgHalves,
            make_cell({{1, 0, 1, 3, 4},
                       {1, 0, 0, -2017, 10000},
                       {0, 0, 1, -1, 2},
                       {0, 0, 0, -2698, 10000},
                       {-1, 0, 1, 1, 8},
                       {-1, 0, 0, 16369, 10000},
                       {-1, -1, 0, 1, 2},
                       {-2, 0, 0, 1, 4}}));
    }
};

const CellTable& cell_table() {
    static CellTable table;
    return table;
}

}  // namespace

const ExtPoly& cell(BoundShape f, Atom t) {
    int idx;
    switch (t) {
        case Atom::TPred: idx = 0; break;
        case Atom::TFloorHalf: idx = 1; break;
        case Atom::TCeilHalf: idx = 2; break;
        case Atom::AvgAll: idx = 3; break;
        case Atom::AvgHalves: idx = 4; break;
        default: throw std::invalid_argument("cell() requires a T-bearing atom");
    }
    return cell_table().cells[static_cast<int>(f)][idx];
}

OvApPair ovap(const RecExpr& expr, BoundShape f, const Coefficient& base_cost) {
    OvApPair ov;
    ExtPoly atom_polys[5];
    atom_polys[static_cast<int>(Atom::One)].add({0, 0, 0}, SymCoef(Rat(1)));
    atom_polys[static_cast<int>(Atom::Var)].add({1, 0, 0}, SymCoef(Rat(1)));
    atom_polys[static_cast<int>(Atom::LnVar)].add({0, 0, 1}, SymCoef(Rat(1)));
    atom_polys[static_cast<int>(Atom::VarLnVar)].add({1, 0, 1}, SymCoef(Rat(1)));
    atom_polys[static_cast<int>(Atom::InvVar)].add({-1, 0, 0}, SymCoef(Rat(1)));

    for (const auto& t : expr.terms) {
        SymCoef c = SymCoef::of(t.coef);
        if (is_t_atom(t.atom)) {
            ov.p_d = ov.p_d + cell(f, t.atom).scaled(c);
            ov.c_weight = ov.c_weight + c;
        } else {
            ov.p_c = ov.p_c + atom_polys[static_cast<int>(t.atom)].scaled(c);
        }
    }
    // Each T-term contributes its coefficient times the base constant; for the
    // averaged sums this uses (sum c)/n <= c.
    ExtPoly cpart;
    cpart.add({0, 0, 0}, ov.c_weight * SymCoef::of(base_cost));
    ov.p_c = ov.p_c + cpart;
    return ov;
}

// ---------------------------------------------------------------------------
// Numeric inequality oracles

namespace {

class DirectedSums {
  public:
    // prefix sums over j = 1..n-1 of 1/j, ln j, j ln j with outward rounding
    explicit DirectedSums(unsigned long n) {
        unsigned prec = transcendental_precision() + 64;
        mpfr_inits2(prec, inv_lo, inv_hi, ln_lo, ln_hi, jln_lo, jln_hi, t_lo, t_hi,
                    static_cast<mpfr_ptr>(nullptr));
        mpfr_set_zero(inv_lo, 1);
        mpfr_set_zero(inv_hi, 1);
        mpfr_set_zero(ln_lo, 1);
        mpfr_set_zero(ln_hi, 1);
        mpfr_set_zero(jln_lo, 1);
        mpfr_set_zero(jln_hi, 1);
        for (unsigned long j = 1; j < n; ++j) add(j);
    }

    ~DirectedSums() {
        mpfr_clears(inv_lo, inv_hi, ln_lo, ln_hi, jln_lo, jln_hi, t_lo, t_hi,
                    static_cast<mpfr_ptr>(nullptr));
    }

    Interval inv() const { return {to_rat(inv_lo), to_rat(inv_hi)}; }
    Interval ln() const { return {to_rat(ln_lo), to_rat(ln_hi)}; }
    Interval jln() const { return {to_rat(jln_lo), to_rat(jln_hi)}; }

  private:
    void add(unsigned long j) {
        mpfr_set_ui(t_lo, 1, MPFR_RNDD);
        mpfr_div_ui(t_lo, t_lo, j, MPFR_RNDD);
        mpfr_add(inv_lo, inv_lo, t_lo, MPFR_RNDD);
        mpfr_set_ui(t_hi, 1, MPFR_RNDU);
        mpfr_div_ui(t_hi, t_hi, j, MPFR_RNDU);
        mpfr_add(inv_hi, inv_hi, t_hi, MPFR_RNDU);

        mpfr_set_ui(t_lo, j, MPFR_RNDD);
        mpfr_log(t_lo, t_lo, MPFR_RNDD);
        mpfr_add(ln_lo, ln_lo, t_lo, MPFR_RNDD);
        mpfr_mul_ui(t_lo, t_lo, j, MPFR_RNDD);
        mpfr_add(jln_lo, jln_lo, t_lo, MPFR_RNDD);

        mpfr_set_ui(t_hi, j, MPFR_RNDU);
        mpfr_log(t_hi, t_hi, MPFR_RNDU);
        mpfr_add(ln_hi, ln_hi, t_hi, MPFR_RNDU);
        mpfr_mul_ui(t_hi, t_hi, j, MPFR_RNDU);
        mpfr_add(jln_hi, jln_hi, t_hi, MPFR_RNDU);
    }

    static Rat to_rat(mpfr_srcptr x) {
        if (mpfr_zero_p(x)) return Rat(0);
        mpz_class mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
        Rat r(mant);
        mpz_class p(1);
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
        if (e >= 0)
            r *= Rat(p);
        else
            r /= Rat(p);
        r.canonicalize();
        return r;
    }

    mpfr_t inv_lo, inv_hi, ln_lo, ln_hi, jln_lo, jln_hi, t_lo, t_hi;
};

}  // namespace

bool Prop123Report::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

Prop123Report check_prop1_2_3(unsigned long n) {
    Prop123Report rep;
    auto push = [&](std::string name, bool ok) { rep.checks.push_back({std::move(name), ok}); };

    Interval lnn = ln_interval(n);
    Interval ln2 = ln2_interval();
    Interval lnfloor = ln_interval(n / 2);
    Interval lnceil = ln_interval((n + 1) / 2);
    Interval lnpred = ln_interval(n - 1);
    Rat rn(static_cast<long>(n));

    // ln n - ln 2 - 1/(n-1) <= ln floor(n/2) <= ln n - ln 2
    push("floor-lower", (lnn - ln2).lo - 1 / (rn - 1) <= lnfloor.hi);
    push("floor-upper", lnfloor.lo <= (lnn - ln2).hi);
    // ln n - ln 2 <= ln ceil(n/2) <= ln n - ln 2 + 1/n
    push("ceil-lower", (lnn - ln2).lo <= lnceil.hi);
    push("ceil-upper", lnceil.lo <= (lnn - ln2).hi + 1 / rn);
    // ln n - 1/(n-1) <= ln(n-1) <= ln n - 1/n
    push("pred-lower", lnn.lo - 1 / (rn - 1) <= lnpred.hi);
    push("pred-upper", lnpred.lo <= lnn.hi - 1 / rn);

    DirectedSums sums(n);
    // int_1^n dx/x - sum_{j<n} 1/j in [-0.7552, -1/6]
    Interval gap1 = lnn - sums.inv();
    push("harmonic-gap-lower", gap1.hi >= rat_of(-7552, 10000));
    push("harmonic-gap-upper", gap1.lo <= rat_of(-1, 6));
    // int ln x - sum ln j - (1/2) int 1/x in [-1/12, 0.2701]
    Interval intln = rn * lnn - Interval(rn) + Interval(Rat(1));
    Interval gap2 = intln - sums.ln() - rat_of(1, 2) * lnn;
    push("log-sum-gap-lower", gap2.hi >= rat_of(-1, 12));
    push("log-sum-gap-upper", gap2.lo <= rat_of(2701, 10000));
    // int x ln x - sum j ln j - (1/2) int ln x + (1/12) int 1/x - (n-1)/2
    //   in [-19/72, 0.1575]
    Interval intxln = rat_of(1, 2) * (Interval(rn) * Interval(rn)) * lnn -
                      Interval(rn * rn / 4) + Interval(rat_of(1, 4));
    Interval gap3 = intxln - sums.jln() - rat_of(1, 2) * intln + rat_of(1, 12) * lnn -
                    Interval((rn - 1) / 2);
    push("xlogx-gap-lower", gap3.hi >= rat_of(-19, 72));
    push("xlogx-gap-upper", gap3.lo <= rat_of(1575, 10000));

    if (n >= 4) {
        // Composite bound for the halved log sums:
        // sum_{ceil(n/2)}^{n-1} ln j + sum_{floor(n/2)}^{n-1} ln j
        //   <= n ln n - (1-ln2) n + (ln n)/2 + 0.6672 + 1/(2n)
        DirectedSums lower_f(n / 2);
        DirectedSums lower_c((n + 1) / 2);
        Interval sum2 = (sums.ln() - lower_c.ln()) + (sums.ln() - lower_f.ln());
        Interval bound = Interval(rn) * lnn - (Interval(Rat(1)) - ln2) * Interval(rn) +
                         rat_of(1, 2) * lnn + Interval(rat_of(417, 625)) +
                         Interval(1 / (2 * rn));
        push("avg-halves-ln-composite", sum2.hi <= bound.lo);
    }
    return rep;
}

}  // namespace rtbound
