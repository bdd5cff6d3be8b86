#pragma once

#include "rtbound/overapprox.hpp"
#include "rtbound/recdsl.hpp"

#include <cstdint>
#include <vector>

namespace rtbound {

enum class EvalMode {
    Auto,      // exact when the relation is free of ln/e, else certified intervals
    Exact,     // exact rationals; rejects relations containing ln or e
    Certified  // directed-rounding intervals at fixed precision (128 bits)
};

/// Eval(G)(1..limit). values[0] is unused; index n holds Eval(G)(n).
struct EvalTable {
    bool exact = false;
    std::vector<Rat> values;
    std::vector<Interval> ivalues;
    std::uint64_t limit = 0;

    Interval at(std::uint64_t n) const {
        return exact ? Interval(values[n]) : ivalues[n];
    }
    const Rat& exact_at(std::uint64_t n) const { return values[n]; }
};

inline constexpr std::uint64_t kDefaultEvalCap = 10'000'000;

bool relation_is_rational(const UniRecurrence& rec);

EvalTable eval_uni(const UniRecurrence& rec, std::uint64_t upto,
                   EvalMode mode = EvalMode::Auto, std::uint64_t cap = kDefaultEvalCap);

/// Direct two-dimensional evaluation of T_G(n, m).
Interval eval_bi(const BiRecurrence& rec, std::uint64_t n, std::uint64_t m,
                 std::uint64_t cap = kDefaultEvalCap);

/// Value of Subst(h)(n) for an h/b-style expression without T-terms.
Interval subst_value(const RecExpr& expr, std::uint64_t n);

/// Upper bound on max over lo <= n < hi of (Eval(G)(n) - c) / f(n), with f
/// rounded downward; entries with Eval(G)(n) <= c contribute nothing.
/// Pass a precomputed table covering hi-1 to avoid re-evaluation.
Rat max_ratio_below(const UniRecurrence& rec, BoundShape f, std::uint64_t lo,
                    std::uint64_t hi, const EvalTable* table = nullptr);

/// Empirical lower-bound constant: max over 2 <= n < z, rounded up at 1e-3.
Rat d_z(const UniRecurrence& rec, BoundShape f, std::uint64_t z,
        const EvalTable* table = nullptr);

}  // namespace rtbound
