#pragma once

#include "rtbound/interval.hpp"
#include "rtbound/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace rtbound {

/// Coefficient value rational + euler*e. The literal `e` is kept symbolic
/// here; it only becomes an interval downstream.
struct Coefficient {
    Rat rational;
    Rat euler;

    Coefficient() : rational(0), euler(0) {}
    explicit Coefficient(Rat r) : rational(std::move(r)), euler(0) {}
    Coefficient(Rat r, Rat e) : rational(std::move(r)), euler(std::move(e)) {}

    bool is_rational() const { return euler == 0; }
    bool is_zero() const { return rational == 0 && euler == 0; }
    Interval value() const;

    Coefficient& operator+=(const Coefficient& o) {
        rational += o.rational;
        euler += o.euler;
        return *this;
    }
    bool operator==(const Coefficient& o) const {
        return rational == o.rational && euler == o.euler;
    }
};

enum class Atom {
    One,
    Var,
    LnVar,
    VarLnVar,
    InvVar,
    TPred,       // T(v-1)
    TFloorHalf,  // T(floor(v/2))
    TCeilHalf,   // T(ceil(v/2))
    AvgAll,      // (sum_{j=1}^{v-1} T(j)) / v
    AvgHalves,   // (sum_{ceil(v/2)}^{v-1} T + sum_{floor(v/2)}^{v-1} T) / v
};

bool is_t_atom(Atom a);

struct Term {
    Coefficient coef;
    Atom atom;
};

/// Canonical sum of coefficient*atom terms: like atoms merged, fixed atom
/// order, no zero coefficients.
struct RecExpr {
    std::vector<Term> terms;

    void add(const Coefficient& c, Atom a);
    void canonicalize();
    bool has_t_term() const;
    bool has_non_t_term() const;
    const Coefficient* find(Atom a) const;
    bool operator==(const RecExpr& o) const;
};

struct UniRecurrence {
    RecExpr expr;
    Coefficient base_cost;
    std::string var = "n";
};

struct BiRecurrence {
    RecExpr e_part;  // T-terms over m
    RecExpr h_part;  // over n
    RecExpr b_part;  // over m
    Coefficient base_cost;
};

using Relation = std::variant<UniRecurrence, BiRecurrence>;

UniRecurrence parse_uni(const std::string& text);
BiRecurrence parse_bi(const std::string& text);
/// Auto-detects by the header arity (`T(n)` vs `T(n,m)`).
Relation parse_relation(const std::string& text);

std::string pretty(const RecExpr& e, const std::string& var);
std::string pretty(const UniRecurrence& rec);
std::string pretty(const BiRecurrence& rec);
std::string pretty(const Relation& rel);

}  // namespace rtbound
