#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rtbound/analyzer.hpp"
#include "rtbound/corpus.hpp"
#include "rtbound/overapprox.hpp"
#include "rtbound/pseudopoly.hpp"

using namespace rtbound;

namespace {

Rat dec(const char* s) { return rat_from_decimal(s); }

Inequality inequality_of(const std::string& id, BoundShape f) {
    const CorpusEntry& entry = corpus_entry(id);
    UniRecurrence rec = std::holds_alternative<UniRecurrence>(entry.parse())
                            ? std::get<UniRecurrence>(entry.parse())
                            : reduce_bi(std::get<BiRecurrence>(entry.parse())).uni;
    OvApPair ov = ovap(rec.expr, f, rec.base_cost);
    return to_inequality(ov, f, rec.base_cost);
}

PseudoPoly pp(std::vector<const char*> log, std::vector<const char*> plain) {
    PseudoPoly p;
    for (const char* a : log) {
        Rat v = a[0] == '-' ? -rat_from_decimal(a + 1) : rat_from_decimal(a);
        p.log_coeffs.push_back(v);
    }
    for (const char* b : plain) {
        Rat v = b[0] == '-' ? -rat_from_decimal(b + 1) : rat_from_decimal(b);
        p.plain_coeffs.push_back(v);
    }
    p.normalize();
    return p;
}

}  // namespace

TEST_CASE("degree: plain leading term wins when it has the higher power") {
    // 3n^2 + 6 n ln n - ln n - 6.1668 (the quicksort build, scaled by 6n)
    PseudoPoly p = pp({"-1", "6"}, {"-6.1668", "0", "3"});
    CHECK(p.degree() == HalfInt::whole(2));
    Leading lead = p.leading();
    CHECK(!lead.has_log);
    CHECK(lead.power == 2);
    CHECK(lead.coeff == 3);
}

TEST_CASE("degree: log term of the same power adds one half") {
    // 6 n^2 ln n + 3 n^2
    PseudoPoly p = pp({"0", "0", "6"}, {"0", "0", "3"});
    CHECK(p.degree() == HalfInt::half_above(2));
    CHECK(p.degree().str() == "2.5");
    CHECK(p.leading().coeff == 6);
}

TEST_CASE("degree: constants have degree zero") {
    PseudoPoly one = pp({}, {"1"});
    CHECK(one.degree() == HalfInt::whole(0));
    CHECK(one.leading().coeff == 1);
}

TEST_CASE("degree: n ln n + n takes the log branch") {
    PseudoPoly p = pp({"0", "1"}, {"0", "1"});
    CHECK(p.degree() == HalfInt::half_above(1));
    Leading lead = p.leading();
    CHECK(lead.has_log);
    CHECK(lead.coeff == 1);
}

TEST_CASE("randomized-search inequality matches the worked form") {
    // d [ (1-ln2) n^2 - n ln n / 2 - 0.6672 n - 1/2 ] >= 6 n^2, multiplier n^2
    Inequality ineq = inequality_of("r_search", BoundShape::LogN);
    REQUIRE(ineq.p.plain_coeffs.size() == 3);
    REQUIRE(ineq.p.log_coeffs.size() == 2);
    // C_p resolves (1 - ln 2) at the lower endpoint: inside [0.3068, 0.30686]
    Rat cp = ineq.p.leading_coeff();
    CHECK(cp >= dec("0.3068"));
    CHECK(cp <= dec("0.30686"));
    CHECK(ineq.p.log_coeffs[1] == -rat_of(1, 2));
    CHECK(ineq.p.plain_coeffs[1] == -dec("0.6672"));
    CHECK(ineq.p.plain_coeffs[0] == -rat_of(1, 2));
    CHECK(ineq.q.log_coeffs.empty());
    REQUIRE(ineq.q.plain_coeffs.size() == 3);
    CHECK(ineq.q.plain_coeffs[2] == 6);
    CHECK(ineq.q.plain_coeffs[1] == 0);
    CHECK(ineq.q.plain_coeffs[0] == 0);
}

TEST_CASE("coupon reduction gives the d * 1/m >= 1/m case, multiplier m") {
    Inequality ineq = inequality_of("coupon", BoundShape::LogN);
    CHECK(ineq.p.log_coeffs.empty());
    REQUIRE(ineq.p.plain_coeffs.size() == 1);
    CHECK(ineq.p.plain_coeffs[0] == 1);
    REQUIRE(ineq.q.plain_coeffs.size() == 1);
    CHECK(ineq.q.plain_coeffs[0] == 1);
}

TEST_CASE("shared-counter reduction gives d >= e at the upper endpoint") {
    Inequality ineq = inequality_of("res_b", BoundShape::Linear);
    REQUIRE(ineq.p.plain_coeffs.size() == 1);
    CHECK(ineq.p.plain_coeffs[0] == 1);
    REQUIRE(ineq.q.plain_coeffs.size() == 1);
    CHECK(ineq.q.plain_coeffs[0] >= dec("2.718281"));
    CHECK(ineq.q.plain_coeffs[0] <= dec("2.7183"));
}

TEST_CASE("q keeps nonnegative coefficients and a positive leading one") {
    for (const auto& entry : corpus_list()) {
        Inequality ineq = inequality_of(entry.id, entry.shape);
        for (const Rat& a : ineq.q.log_coeffs) CHECK(a >= 0);
        for (const Rat& b : ineq.q.plain_coeffs) CHECK(b >= 0);
        CHECK(ineq.q.leading_coeff() > 0);
    }
}

TEST_CASE("pointwise implication: d p(n) >= q(n) forces OvAp <= d f(n) + c") {
    for (const auto& entry : corpus_list()) {
        UniRecurrence rec = std::holds_alternative<UniRecurrence>(entry.parse())
                                ? std::get<UniRecurrence>(entry.parse())
                                : reduce_bi(std::get<BiRecurrence>(entry.parse())).uni;
        OvApPair ov = ovap(rec.expr, entry.shape, rec.base_cost);
        Inequality ineq = to_inequality(ov, entry.shape, rec.base_cost);
        for (const Rat& d : {rat_of(1, 10), Rat(1), Rat(10), Rat(25)}) {
            for (unsigned long n = 2; n <= 1000; n = n * 2 + 1) {
                Interval pv = ineq.p.eval(n), qv = ineq.q.eval(n);
                bool premise = d * pv.lo >= qv.hi;  // certified d p(n) >= q(n)
                if (!premise) continue;
                Interval ovap_value = d * ov.p_d.eval(n) + ov.p_c.eval(n);
                Interval rhs = d * shape_value(entry.shape, n) +
                               rec.base_cost.value();
                CHECK(ovap_value.lo <= rhs.hi);  // not certifiably violated
            }
        }
    }
}

TEST_CASE("re-multiplying by n shifts degrees consistently") {
    for (const auto& entry : corpus_list()) {
        Inequality ineq = inequality_of(entry.id, entry.shape);
        PseudoPoly p2 = ineq.p.shifted_up(1);
        PseudoPoly q2 = ineq.q.shifted_up(1);
        CHECK((p2.degree() >= q2.degree()) == (ineq.p.degree() >= ineq.q.degree()));
        CHECK(p2.leading_coeff() == ineq.p.leading_coeff());
        CHECK(q2.leading_coeff() == ineq.q.leading_coeff());
        CHECK((p2.leading_coeff() > 0) == (ineq.p.leading_coeff() > 0));
    }
}

TEST_CASE("interval resolution cannot mix ln2 and e in one product") {
    SymCoef a(Rat(0), Rat(1));          // ln 2
    SymCoef b(Rat(0), Rat(0), Rat(1));  // e
    CHECK_THROWS_AS(a * b, StructureError);
}

TEST_CASE("extended polynomials clear the mixed denominator via relaxation") {
    // The n-ln-n averaged-halves cell carries both 1/(n(n-1)) and 1/n^2; the
    // inequality build must relax the square into the mixed denominator and
    // clear with n(n-1).
    UniRecurrence rec =
        parse_uni("rel T(n) = 1 + avg_halves(T)\nbase T(1) = 1");
    OvApPair ov = ovap(rec.expr, BoundShape::NLogN, rec.base_cost);
    Inequality ineq = to_inequality(ov, BoundShape::NLogN, rec.base_cost);
    // soundness of the cleared form: d p >= q still implies the original
    for (const Rat& d : {Rat(1), Rat(4)}) {
        for (unsigned long n = 2; n <= 512; n *= 2) {
            Interval pv = ineq.p.eval(n), qv = ineq.q.eval(n);
            if (!(d * pv.lo >= qv.hi)) continue;
            Interval ovap_value = d * ov.p_d.eval(n) + ov.p_c.eval(n);
            Interval rhs = d * shape_value(BoundShape::NLogN, n) +
                           rec.base_cost.value();
            CHECK(ovap_value.lo <= rhs.hi);
        }
    }
    CHECK(ineq.q.leading_coeff() > 0);
}
