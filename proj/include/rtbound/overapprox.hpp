#pragma once

#include "rtbound/pseudopoly.hpp"
#include "rtbound/recdsl.hpp"

#include <array>

namespace rtbound {

enum class BoundShape { LogN, Linear, NLogN };

constexpr std::array<BoundShape, 3> kAllShapes = {BoundShape::LogN, BoundShape::Linear,
                                                  BoundShape::NLogN};

/// "ln n", "n" or "n ln n" with the given variable name.
std::string shape_string(BoundShape f, const std::string& var = "n");

/// f as an ExtPoly in the recursion variable.
ExtPoly shape_poly(BoundShape f);

/// Value of Subst(f)(n) as an interval (exact for Linear).
Interval shape_value(BoundShape f, unsigned long n);
/// Downward-rounded value, used when dividing by f(n).
Rat shape_value_lower(BoundShape f, unsigned long n);

/// Integral antiderivative combinations bounding the prefix sums:
/// sum_{j<n} ln j ~ gamma_ln(n), sum_{j<n} 1/j ~ gamma_inv(n),
/// sum_{j<n} j ln j ~ gamma_nln(n).
ExtPoly gamma_ln();
ExtPoly gamma_inv();
ExtPoly gamma_nln();

/// Over-approximation of Subst(t, Subst(f)) for a T-bearing atom t: the
/// fifteen shape x atom cells, hardcoded data.
const ExtPoly& cell(BoundShape f, Atom t);

/// OvAp(e, h) for h = d*Subst(f) + c, split by the unknown d:
/// value(n) = d * p_d(n) + p_c(n); p_c includes the base-cost contributions
/// (each T-term contributes its coefficient times c).
struct OvApPair {
    ExtPoly p_d;
    ExtPoly p_c;
    SymCoef c_weight;  // total T-coefficient mass multiplying c inside p_c
};

OvApPair ovap(const RecExpr& expr, BoundShape f, const Coefficient& base_cost);

/// Numeric oracle for the logarithm/floor/integral inequalities backing the
/// cells; every bound is checked with directed rounding at one n.
struct InequalityCheck {
    std::string name;
    bool passed;
};

struct Prop123Report {
    std::vector<InequalityCheck> checks;
    bool all_passed() const;
};

Prop123Report check_prop1_2_3(unsigned long n);

}  // namespace rtbound
