#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rtbound/recdsl.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace rtbound;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(RTBOUND_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("univariate parsing: averaged halves") {
    UniRecurrence rec = parse_uni("rel T(n) = 6 + avg_halves(T)\nbase T(1) = 1");
    REQUIRE(rec.expr.terms.size() == 2);
    CHECK(rec.expr.find(Atom::One)->rational == 6);
    CHECK(rec.expr.find(Atom::AvgHalves)->rational == 1);
    CHECK(rec.base_cost.rational == 1);
}

TEST_CASE("univariate parsing: full average with scalar") {
    UniRecurrence rec = parse_uni("rel T(n) = 2*n + 2*avg_all(T)\nbase T(1) = 1");
    CHECK(rec.expr.find(Atom::Var)->rational == 2);
    CHECK(rec.expr.find(Atom::AvgAll)->rational == 2);
}

TEST_CASE("univariate parsing: halving recursions and decimals") {
    UniRecurrence rec = parse_uni(
        "rel T(n) = 5 + 8.091*n + T(floor(n/2)) + T(ceil(n/2))\nbase T(1) = 1");
    CHECK(rec.expr.find(Atom::Var)->rational == rat_from_decimal("8.091"));
    CHECK(rec.expr.find(Atom::TFloorHalf)->rational == 1);
    CHECK(rec.expr.find(Atom::TCeilHalf)->rational == 1);
}

TEST_CASE("univariate parsing: n*ln(n) atom and comments") {
    UniRecurrence rec = parse_uni(
        "# cost of the ball-intersection step\n"
        "rel T(n) = 2 + n + 2*n*ln(n) + avg_all(T)\n"
        "base T(1) = 1\n");
    CHECK(rec.expr.find(Atom::VarLnVar)->rational == 2);
    CHECK(rec.expr.find(Atom::Var)->rational == 1);
}

TEST_CASE("validation: no T term is rejected") {
    CHECK_THROWS_AS(parse_uni("rel T(n) = n\nbase T(1) = 1"), ValidationError);
}

TEST_CASE("validation: no non-T term is rejected") {
    CHECK_THROWS_AS(parse_uni("rel T(n) = T(n-1)\nbase T(1) = 1"), ValidationError);
}

TEST_CASE("validation: scalar factors below 1 and nonpositive base") {
    CHECK_THROWS_AS(parse_uni("rel T(n) = 0.5*n + T(n-1)\nbase T(1) = 1"),
                    ValidationError);
    CHECK_THROWS_AS(parse_uni("rel T(n) = 1 + T(n-1)\nbase T(1) = 0"), ValidationError);
    // standalone additive constants only need to be positive
    CHECK_NOTHROW(parse_uni("rel T(n) = 0.5 + T(n-1)\nbase T(1) = 0.25"));
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_uni("rel T(n) = 6 + avg_halves(X)\nbase T(1) = 1");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position > 0);
        CHECK(!e.expected.empty());
    }
}

TEST_CASE("canonicalization merges like atoms") {
    UniRecurrence rec = parse_uni("rel T(n) = 1*n + 1*n + T(n-1)\nbase T(1) = 1");
    CHECK(rec.expr.find(Atom::Var)->rational == 2);
    int var_terms = 0;
    for (const auto& t : rec.expr.terms)
        if (t.atom == Atom::Var) ++var_terms;
    CHECK(var_terms == 1);
}

TEST_CASE("bivariate parsing: coupon collector") {
    BiRecurrence rec = parse_bi(
        "rel T(n,m) = {n} * {1/m} + T(n,m-1)\nbase T(n,1) = {n} * 1");
    CHECK(rec.e_part.find(Atom::TPred)->rational == 1);
    CHECK(rec.h_part.find(Atom::Var)->rational == 1);
    CHECK(rec.b_part.find(Atom::InvVar)->rational == 1);
    CHECK(rec.base_cost.rational == 1);
}

TEST_CASE("bivariate parsing: euler-multiple coefficients") {
    BiRecurrence rec = parse_bi(
        "rel T(n,m) = {n} * {e * 1/m} + T(n,m-1)\nbase T(n,1) = {n} * 1");
    const Coefficient* b = rec.b_part.find(Atom::InvVar);
    REQUIRE(b != nullptr);
    CHECK(b->euler == 1);
    CHECK(b->rational == 0);

    BiRecurrence conc = parse_bi(
        "rel T(n,m) = {1} * {e} + T(n,m-1)\nbase T(n,1) = {1} * 1");
    CHECK(conc.b_part.find(Atom::One)->euler == 1);
}

TEST_CASE("bivariate validation") {
    // a plain m inside the recursive part is not a T-term
    CHECK_THROWS(parse_bi("rel T(n,m) = m + T(n,m-1)\nbase T(n,1) = {n} * 1"));
    // h may not mention m
    CHECK_THROWS(parse_bi("rel T(n,m) = {m} * {1/m} + T(n,m-1)\nbase T(n,1) = {m} * 1"));
    // base h factor must agree with the recursive one
    CHECK_THROWS_AS(
        parse_bi("rel T(n,m) = {n} * {1/m} + T(n,m-1)\nbase T(n,1) = {1} * 1"),
        ValidationError);
}

TEST_CASE("round trip over the shipped corpus files") {
    namespace fs = std::filesystem;
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(RTBOUND_DATA_DIR)) {
        if (entry.path().extension() != ".rec") continue;
        ++seen;
        std::ifstream in(entry.path());
        std::ostringstream os;
        os << in.rdbuf();
        Relation rel = parse_relation(os.str());
        Relation reparsed = parse_relation(pretty(rel));
        if (std::holds_alternative<UniRecurrence>(rel)) {
            const auto& a = std::get<UniRecurrence>(rel);
            const auto& b = std::get<UniRecurrence>(reparsed);
            CHECK(a.expr == b.expr);
            CHECK(a.base_cost == b.base_cost);
        } else {
            const auto& a = std::get<BiRecurrence>(rel);
            const auto& b = std::get<BiRecurrence>(reparsed);
            CHECK(a.e_part == b.e_part);
            CHECK(a.h_part == b.h_part);
            CHECK(a.b_part == b.b_part);
            CHECK(a.base_cost == b.base_cost);
        }
    }
    CHECK(seen == 9);
}

TEST_CASE("every grammar production is reachable") {
    std::set<Atom> uni_atoms;
    auto collect = [&](const std::string& text) {
        UniRecurrence rec = parse_uni(text);
        for (const auto& t : rec.expr.terms) uni_atoms.insert(t.atom);
    };
    collect("rel T(n) = 1 + n + ln(n) + n*ln(n) + 1/n + T(n-1)\nbase T(1) = 1");
    collect("rel T(n) = 1 + T(floor(n/2)) + T(ceil(n/2))\nbase T(1) = 1");
    collect("rel T(n) = 1 + avg_all(T) + avg_halves(T)\nbase T(1) = 1");
    CHECK(uni_atoms.size() == 10);

    std::set<Atom> bi_atoms;
    auto collect_bi = [&](const std::string& text) {
        BiRecurrence rec = parse_bi(text);
        for (const auto& t : rec.e_part.terms) bi_atoms.insert(t.atom);
        for (const auto& t : rec.h_part.terms) bi_atoms.insert(t.atom);
        for (const auto& t : rec.b_part.terms) bi_atoms.insert(t.atom);
    };
    collect_bi(
        "rel T(n,m) = {1 + n + ln(n) + n*ln(n)} * {1 + 1/m + ln(m) + m + m*ln(m)}"
        " + T(n,m-1) + T(n,floor(m/2)) + T(n,ceil(m/2)) + avg_all(T) + avg_halves(T)\n"
        "base T(n,1) = {1 + n + ln(n) + n*ln(n)} * 1");
    CHECK(bi_atoms.size() == 10);
}

TEST_CASE("euler constant stays symbolic in coefficients") {
    BiRecurrence rec = parse_bi(
        "rel T(n,m) = {1} * {2*e} + T(n,m-1)\nbase T(n,1) = {1} * 1");
    const Coefficient* c = rec.b_part.find(Atom::One);
    REQUIRE(c != nullptr);
    CHECK(c->euler == 2);
    Interval v = c->value();
    CHECK(v.lo > rat_from_decimal("5.4364"));
    CHECK(v.hi < rat_from_decimal("5.4366"));
}

TEST_CASE("pretty printing uses exact decimals") {
    UniRecurrence rec = parse_uni(slurp("sort_sel.rec"));
    std::string text = pretty(rec);
    CHECK(text.find("8.091*n") != std::string::npos);
}
